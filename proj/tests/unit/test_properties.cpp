#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "hill/bounds.hpp"
#include "hill/norms.hpp"
#include "hill/projector.hpp"

using namespace hill;

namespace {

// Real-valued Q with a few decaying modes.
FourierPotential random_potential(std::mt19937_64& rng, int modes) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Coefficient> entries;
  for (int k = 1; k <= modes; ++k) {
    const cplx w(g(rng) / (2.0 * k * k), g(rng) / (2.0 * k * k));
    entries.push_back({2 * k, w});
    entries.push_back({-2 * k, std::conj(w)});
  }
  return FourierPotential::from_coeffs(0.3 * g(rng), entries);
}

}  // namespace

TEST_CASE("projections of random real potentials") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 4; ++trial) {
    const auto p = random_potential(rng, 3);
    for (auto bc : {BoundaryCondition::PerPlus, BoundaryCondition::PerMinus, BoundaryCondition::Dirichlet}) {
      const int n = bc == BoundaryCondition::PerMinus ? 11 : 10;
      const auto H = assemble(bc, p, 48);
      CHECK((H.L - H.L.adjoint()).norm() < 1e-12);
      if (eigen_count_in_disc(H, n) != free_rank(bc)) continue;
      const auto pair = riesz_projection(H, n);
      CHECK(pair.idempotency_residual() < 1e-8);
      CHECK(std::abs(pair.trace() - cplx(free_rank(bc), 0)) < 1e-6);
      // Self-adjoint L gives an orthogonal projection.
      CHECK((pair.P - pair.P.adjoint()).norm() < 1e-8);
      CHECK(spectral_norm(pair.B) <= pair.B.norm() + 1e-14);
    }
  }
}

TEST_CASE("bound sequences are monotone in the majorant") {
  std::mt19937_64 rng(5);
  const auto r = majorant(random_potential(rng, 6));
  for (int n : {8, 16, 32}) {
    const auto a = bound_sequences(r, n);
    const auto b = bound_sequences(r.scaled(2.0), n);
    CHECK(b.rho_tilde == doctest::Approx(2 * a.rho_tilde));
    CHECK(b.rho == doctest::Approx(2 * a.rho));
    CHECK(b.eps > a.eps);
    CHECK(a.kappa >= a.rho);
    CHECK(a.kappa >= a.eps);
  }
}

TEST_CASE("reflection identity for random couplings") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> values(81);
  for (double& x : values) x = u(rng);
  const auto v = Sequence::from_function(40, [&](int m) { return values[m + 40]; });
  for (int n : {6, 7}) {
    const IndexSet set = IndexSet::lattice(n, 1, 8 * n);
    for (int p = 1; p <= 4; ++p) {
      for (int d : {n, -n}) {
        const double lhs = R_sum(v, p, d, n, set);
        const double rhs = L_sum(v, p, -d, n, set);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, rhs));
      }
    }
  }
}

TEST_CASE("complex potentials use the full circle and still match the eigensolve") {
  const auto p = FourierPotential::from_coeffs(0.0, std::vector<Coefficient>{{2, {0.3, 0.2}}, {-2, {0.1, 0.0}}});
  for (auto bc : {BoundaryCondition::PerPlus, BoundaryCondition::Dirichlet}) {
    const auto H = assemble(bc, p, 40);
    REQUIRE((H.L - H.L.adjoint()).norm() > 1e-3);
    const auto eig = eigen_decompose(H);
    const auto pair = riesz_projection(H, 10, {}, std::span<const cplx>(eig.values.data(), eig.values.size()));
    CHECK((pair.P - spectral_projector(eig, 100.0, 10)).norm() < 1e-7);
    CHECK(pair.idempotency_residual() < 1e-8);
    CHECK(std::abs(pair.trace() - cplx(free_rank(bc), 0)) < 1e-6);
  }
}
