#include <doctest.h>

#include <cmath>
#include <complex>

#include "hill/error.hpp"
#include "hill/projector.hpp"

using namespace hill;

namespace {

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Io;
}

}  // namespace

TEST_CASE("first-order residue of the Mathieu coupling") {
  // V(2) = 1, the pole inside |z - 16| = 4 is m^2 = 16: residue 1 / (16 - 36).
  const auto p = mathieu(1.0);
  const cplx value = first_order_residue(p, BoundaryCondition::PerPlus, 4, 6, 4);
  CHECK(std::abs(value - cplx(-1.0 / 20, 0)) < 1e-15);
  // Both poles inside or both outside give zero.
  CHECK(std::abs(first_order_residue(p, BoundaryCondition::PerPlus, 4, 4, -4)) < 1e-15);
  CHECK(std::abs(first_order_residue(p, BoundaryCondition::PerPlus, 4, 8, 10)) < 1e-15);
}

TEST_CASE("trapezoid quadrature reproduces the residue closed form") {
  for (auto bc : {BoundaryCondition::PerPlus, BoundaryCondition::PerMinus, BoundaryCondition::Dirichlet}) {
    const int n = bc == BoundaryCondition::PerMinus ? 9 : 8;
    CHECK(quadrature_vs_residue_check(sawtooth(1.0, 256), bc, n, 4 * n, 64) < 1e-10);
  }
  // A perturbed closed form is detected.
  const Coupling c(BoundaryCondition::PerPlus, mathieu(1.0));
  const double off = quadrature_vs_residue_check(c, 8, 32, 64, [&](int k, int m) {
    return 1.001 * first_order_residue(c, 8, k, m);
  });
  CHECK(off > 1e-6);
}

TEST_CASE("Riesz projection of the free operator is the coordinate projection") {
  for (auto bc : {BoundaryCondition::PerPlus, BoundaryCondition::Dirichlet}) {
    const auto H = free_matrix(make_basis(bc, 40));
    const auto pair = riesz_projection(H, 10);
    CHECK(pair.B.norm() < 1e-10);
    CHECK(std::abs(pair.trace() - cplx(free_rank(bc), 0)) < 1e-10);
  }
}

TEST_CASE("Riesz projection agrees with the eigensolve oracle") {
  for (auto bc : {BoundaryCondition::PerPlus, BoundaryCondition::PerMinus, BoundaryCondition::Dirichlet}) {
    const int n = bc == BoundaryCondition::PerMinus ? 9 : 8;
    const auto H = assemble(bc, mathieu(1.0), 48);
    const auto eig = eigen_decompose(H);
    const auto pair = riesz_projection(H, n, {}, std::span<const cplx>(eig.values.data(), eig.values.size()));
    const Eigen::MatrixXcd oracle = spectral_projector(eig, double(n) * n, n);
    CHECK((pair.P - oracle).norm() < 1e-8);
    CHECK(pair.idempotency_residual() < 1e-8);
    CHECK(std::abs(pair.trace() - cplx(pair.expected_rank(), 0)) < 1e-6);
    CHECK(eigen_count_in_disc(H, n) == free_rank(bc));
    // Near-commutation with the truncated operator.
    CHECK((pair.P * H.L - H.L * pair.P).norm() < 1e-6 * H.L.norm());
  }
}

TEST_CASE("projections for distinct n annihilate each other") {
  const auto H = assemble(BoundaryCondition::PerPlus, delta_comb(0.5, 256), 48);
  const auto a = riesz_projection(H, 8);
  const auto b = riesz_projection(H, 10);
  CHECK((a.P * b.P).norm() < 1e-7);
  CHECK((b.P * a.P).norm() < 1e-7);
}

TEST_CASE("projector preconditions") {
  const auto H = assemble(BoundaryCondition::PerPlus, mathieu(1.0), 16);
  CHECK(code_of([&] { riesz_projection(H, 3); }) == Errc::BcMismatch);
  CHECK(code_of([&] { riesz_projection(H, 8); }) == Errc::TruncationTooSmall);
  CHECK(code_of([&] { ContourSpec::circle(4, 15).validate(); }) != Errc::Io);
  // A contour through an eigenvalue of the free operator.
  const auto F = free_matrix(make_basis(BoundaryCondition::PerPlus, 32));
  ContourSpec through{cplx(36, 0), 28.0, 64};
  CHECK(code_of([&] { riesz_projection(F, 6, through); }) == Errc::EigenvalueOnContour);
}

TEST_CASE("localization start") {
  const auto H = assemble(BoundaryCondition::PerPlus, mathieu(1.0), 64);
  const auto values = eigenvalues(H);
  const std::vector<int> candidates{2, 4, 6, 8, 10, 12, 14, 16};
  const auto start = localization_start(std::span<const cplx>(values.data(), values.size()),
                                        BoundaryCondition::PerPlus, candidates);
  REQUIRE(start.has_value());
  for (int n : candidates) {
    if (n >= *start) CHECK(eigen_count_in_disc(H, n) == 2);
  }
}

TEST_CASE("block projection has the free dimension") {
  const auto H = assemble(BoundaryCondition::PerPlus, mathieu(1.0), 48);
  const auto block = block_projection(H, 4, 10);
  CHECK(block.idempotency_residual() < 1e-8);
  CHECK(std::abs(block.S.trace().real() - block.expected_dim) < 1e-6);
  CHECK(block.expected_dim == int(block.S_free.trace().real() + 0.5));
}
