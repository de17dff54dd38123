#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "hill/error.hpp"
#include "hill/potential.hpp"
#include "support/quadrature.hpp"

using namespace hill;
using std::numbers::pi;

TEST_CASE("mathieu coefficients match a numeric Fourier transform of Q") {
  const auto p = mathieu(1.0);
  for (int m : {-4, -2, 2, 4}) {
    const cplx expected = quad::fourier([](double x) { return cplx(std::sin(2 * x)); }, m);
    CHECK(std::abs(p.w(m) - expected) < 1e-12);
  }
  CHECK(std::abs(p.w(2) - cplx(0, -0.5)) < 1e-15);
  CHECK(std::abs(p.V(2) - cplx(1, 0)) < 1e-15);
  CHECK(std::abs(p.V(-2) - cplx(1, 0)) < 1e-15);
  CHECK(p.V(0) == cplx{});
  CHECK(p.hermitian());
}

TEST_CASE("from_coeffs rejects malformed index sets") {
  const std::vector<Coefficient> zero{{0, 1.0}};
  const std::vector<Coefficient> odd{{3, 1.0}};
  const std::vector<Coefficient> dup{{2, 1.0}, {2, 2.0}};
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return Errc::Io;
  };
  CHECK(code([&] { FourierPotential::from_coeffs(0.0, zero); }) == Errc::ZeroIndex);
  CHECK(code([&] { FourierPotential::from_coeffs(0.0, odd); }) == Errc::OddIndex);
  CHECK(code([&] { FourierPotential::from_coeffs(0.0, dup); }) == Errc::DuplicateIndex);
}

TEST_CASE("sawtooth and delta comb coefficients") {
  const auto saw = sawtooth(2.0, 16);
  CHECK(std::abs(saw.w(4) - cplx(2.0 / 16, 0)) < 1e-15);
  CHECK(saw.w(18) == cplx{});
  const auto comb = delta_comb(0.5, 64);
  for (int m : {-64, -10, 2, 40, 64}) CHECK(std::abs(comb.V(m) - cplx(0.5 / pi, 0)) < 1e-14);
  CHECK(std::abs(comb.v0() - cplx(0.5 / pi, 0)) < 1e-14);
  CHECK(comb.truncated());
}

TEST_CASE("exp_sine_integral matches quadrature") {
  for (int k : {-5, -2, 0, 1, 3, 4}) {
    for (int m : {1, 2, 3, 7}) {
      const cplx numeric = quad::simpson_plain(
          [&](double x) { return std::exp(cplx(0, k * x)) * std::sin(m * x); }, 0.0, pi);
      CHECK(std::abs(exp_sine_integral(k, m) - numeric) < 1e-11);
    }
  }
}

TEST_CASE("per_to_dir matches numeric sine coefficients of Q") {
  for (const auto& p : {mathieu(1.3), sawtooth(1.0, 24)}) {
    const auto s = per_to_dir(p, 12);
    for (int m = 1; m <= 12; ++m) {
      const cplx numeric = quad::simpson_plain(
                               [&](double x) { return p.Q(x) * std::sqrt(2.0) * std::sin(m * x); }, 0.0, pi) /
                           pi;
      CHECK(std::abs(s.qt(m) - numeric) < 1e-10);
    }
  }
}

TEST_CASE("majorant and tail energy") {
  const auto r = majorant(sawtooth(1.0, 8));
  CHECK(r(2) == doctest::Approx(0.25));
  CHECK(r(-2) == doctest::Approx(0.25));
  CHECK(r(3) == 0.0);
  double full = 0.0;
  for (int m = 2; m <= 8; m += 2) full += 2.0 / std::pow(m, 4);
  CHECK(r.norm() == doctest::Approx(std::sqrt(full)));
  CHECK(tail_energy(r, 0) == doctest::Approx(r.norm()));
  CHECK(tail_energy(r, 8) == doctest::Approx(std::sqrt(2.0) / 64));
  CHECK(tail_energy(r, 9) == 0.0);
}

TEST_CASE("sine conversion round-trips pointwise for odd Q") {
  std::mt19937_64 rng(31);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 5; ++trial) {
    // w(-m) = -w(m) with w(m) purely imaginary gives a real odd Q with finite sine support.
    std::vector<Coefficient> entries;
    for (int m = 2; m <= 10; m += 2) {
      const cplx w(0.0, g(rng) / m);
      entries.push_back({m, w});
      entries.push_back({-m, -w});
    }
    const auto p = FourierPotential::from_coeffs(0.0, entries);
    const auto s = per_to_dir(p, 10);
    for (int i = 1; i < 50; ++i) {
      const double x = pi * i / 50;
      CHECK(std::abs(s.Q(x) - p.Q(x)) < 1e-8);
    }
  }
}

TEST_CASE("sine conversion converges in L2 for general Q") {
  const auto p = FourierPotential::from_coeffs(0.0, std::vector<Coefficient>{{2, {0.2, -0.1}}, {-2, {0.2, 0.1}}});
  auto l2_error = [&](int sines) {
    const auto s = per_to_dir(p, sines);
    return std::sqrt(quad::simpson_plain([&](double x) { return std::norm(s.Q(x) - p.Q(x)); }, 0.0, pi).real());
  };
  const double coarse = l2_error(16);
  const double fine = l2_error(256);
  CHECK(fine < coarse / 3);
  CHECK(fine < 0.05);
}
