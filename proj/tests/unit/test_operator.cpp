#include <doctest.h>

#include <cmath>
#include <numbers>

#include "hill/error.hpp"
#include "hill/operator.hpp"
#include "support/quadrature.hpp"

using namespace hill;
using std::numbers::pi;

TEST_CASE("basis index sets") {
  CHECK(make_basis(BoundaryCondition::PerPlus, 6).indices == std::vector<int>{-6, -4, -2, 0, 2, 4, 6});
  CHECK(make_basis(BoundaryCondition::PerMinus, 5).indices == std::vector<int>{-5, -3, -1, 1, 3, 5});
  CHECK(make_basis(BoundaryCondition::Dirichlet, 4).indices == std::vector<int>{1, 2, 3, 4});
  const auto b = make_basis(BoundaryCondition::PerPlus, 6);
  CHECK(b.position(-2) == 2);
  CHECK_FALSE(b.contains(3));
  CHECK(index_matches(BoundaryCondition::PerMinus, -7));
  CHECK_FALSE(index_matches(BoundaryCondition::PerPlus, 3));
  CHECK_FALSE(index_matches(BoundaryCondition::Dirichlet, 0));
  CHECK(parse_boundary_condition("dir") == BoundaryCondition::Dirichlet);
  CHECK_FALSE(parse_boundary_condition("neumann"));
}

// <v e_m, e_k> with v = v0 + Q', integrated by parts against Q.
static cplx periodic_element(const FourierPotential& p, int k, int m) {
  const cplx by_parts = quad::fourier([&](double x) { return p.Q(x); }, k - m) * cplx(0, k - m);
  return by_parts + (k == m ? p.v0() : cplx{});
}

static cplx dirichlet_element(const FourierPotential& p, int k, int m) {
  const cplx by_parts = -quad::simpson_plain(
                            [&](double x) {
                              return p.Q(x) * 2.0 * (m * std::cos(m * x) * std::sin(k * x) +
                                                     k * std::sin(m * x) * std::cos(k * x));
                            },
                            0.0, pi) /
                        pi;
  return by_parts + (k == m ? p.v0() : cplx{});
}

TEST_CASE("coupling elements match integration by parts") {
  const auto p = FourierPotential::from_coeffs(0.3, std::vector<Coefficient>{{2, {0.2, -0.1}}, {-2, {0.2, 0.1}}, {4, {0.0, 0.05}}});
  const Coupling per(BoundaryCondition::PerPlus, p);
  const Coupling anti(BoundaryCondition::PerMinus, p);
  for (int k : {-4, 0, 2, 6}) {
    for (int m : {-2, 0, 4}) CHECK(std::abs(per.element(k, m) - periodic_element(p, k, m)) < 1e-12);
  }
  for (int k : {-3, 1, 5}) {
    for (int m : {-1, 3}) CHECK(std::abs(anti.element(k, m) - periodic_element(p, k, m)) < 1e-12);
  }
  const Coupling dir(BoundaryCondition::Dirichlet, p);
  for (int k = 1; k <= 6; ++k) {
    for (int m = 1; m <= 6; ++m) CHECK(std::abs(dir.element(k, m) - dirichlet_element(p, k, m)) < 1e-9);
  }
}

TEST_CASE("assembled matrix is diag(k^2) plus the coupling") {
  const auto p = mathieu(1.0);
  for (auto bc : {BoundaryCondition::PerPlus, BoundaryCondition::PerMinus, BoundaryCondition::Dirichlet}) {
    const auto H = assemble(bc, p, 12);
    const Coupling c(bc, p);
    for (int i = 0; i < H.basis.size(); ++i) {
      const int k = H.basis.indices[i];
      CHECK(H.diag0(i) == doctest::Approx(double(k) * k));
      for (int j = 0; j < H.basis.size(); ++j) {
        const int m = H.basis.indices[j];
        CHECK(std::abs(H.Vmat(i, j) - c.element(k, m)) < 1e-14);
        CHECK(std::abs(H.L(i, j) - (H.Vmat(i, j) + (i == j ? H.diag0(i) : 0.0))) < 1e-14);
      }
    }
    // A real potential gives a self-adjoint matrix.
    CHECK((H.L - H.L.adjoint()).norm() < 1e-12);
  }
}

TEST_CASE("delta comb under Dirichlet conditions is diagonal") {
  const auto H = assemble(BoundaryCondition::Dirichlet, delta_comb(0.5, 256), 16);
  CHECK((H.Vmat - Eigen::MatrixXcd(H.Vmat.diagonal().asDiagonal())).norm() < 1e-12);
}

TEST_CASE("free matrix and coverage") {
  const auto H = free_matrix(make_basis(BoundaryCondition::PerPlus, 8));
  CHECK(H.Vmat.norm() == 0.0);
  CHECK(H.L(0, 0).real() == 64.0);
  const auto comb = delta_comb(1.0, 16);
  CHECK_THROWS_AS(assemble(BoundaryCondition::PerPlus, comb, 24), Error);
  CHECK(assemble(BoundaryCondition::PerPlus, comb, 8).coverage == 1.0);
}

TEST_CASE("sine data under periodic conditions is a mismatch") {
  const auto s = per_to_dir(mathieu(1.0), 4);
  try {
    Coupling c(BoundaryCondition::PerPlus, s);
    FAIL("expected BcMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BcMismatch);
  }
}
