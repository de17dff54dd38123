#pragma once

// Fourier-side representations of pi-periodic H^{-1} potentials
// v = v0 + Q', Q = sum_{m even, m != 0} w(m) e^{imx}.

#include <complex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace hill {

using cplx = std::complex<double>;

/// Coefficient pair (index, value).
using Coefficient = std::pair<int, cplx>;

class FourierPotential {
 public:
  FourierPotential() = default;

  /// Validates indices (nonzero, even, distinct). `max_index` defaults to the
  /// largest stored |m|; `truncated` marks sequences whose true support
  /// extends past `max_index` (those count against operator coverage).
  static FourierPotential from_coeffs(cplx v0, std::span<const Coefficient> entries,
                                      std::optional<int> max_index = std::nullopt,
                                      bool truncated = false);

  cplx v0() const { return v0_; }
  /// w(m); zero for odd m, m = 0 and |m| > max_index.
  cplx w(int m) const;
  /// Fourier coefficient of v: v0 at m = 0, i*m*w(m) otherwise.
  cplx V(int m) const;

  int max_index() const { return max_index_; }
  bool truncated() const { return truncated_; }
  bool is_zero() const;

  /// Nonzero stored coefficients in increasing index order.
  std::vector<Coefficient> support() const;

  /// (sum |w(m)|^2)^{1/2} over the stored range.
  double w_l2_norm() const;
  /// (|v0|^2 + sum |w(m)|^2 / m^2)^{1/2}, the H^{-1} norm in the Fourier normalization.
  double h_minus1_norm() const;
  /// w(-m) == conj(w(m)) within tol (Q real-valued). Not enforced anywhere.
  bool hermitian(double tol = 1e-14) const;

  /// Q(x) synthesized from the stored coefficients.
  cplx Q(double x) const;

 private:
  std::size_t slot(int m) const { return static_cast<std::size_t>((m + max_index_) / 2); }

  cplx v0_{};
  int max_index_ = 0;
  bool truncated_ = false;
  std::vector<cplx> w_{cplx{}};  // even m in [-max_index, max_index]
};

/// Sine coefficients q~(m), m >= 1, with Q = sum q~(m) sqrt(2) sin(mx) on [0, pi].
/// v0 travels along so the Dirichlet diagonal can carry the mean of v.
class SinePotential {
 public:
  SinePotential() = default;

  static SinePotential from_coeffs(cplx v0, std::span<const Coefficient> entries,
                                   std::optional<int> max_index = std::nullopt,
                                   bool truncated = false);

  cplx v0() const { return v0_; }
  /// q~(m) for m >= 1; q~(0) = 0 and out-of-range values are zero.
  cplx qt(int m) const;
  int max_index() const { return static_cast<int>(qt_.size()) - 1; }
  bool truncated() const { return truncated_; }

  cplx Q(double x) const;

 private:
  friend SinePotential per_to_dir(const FourierPotential&, int);

  cplx v0_{};
  bool truncated_ = false;
  std::vector<cplx> qt_{cplx{}};
};

/// Nonnegative symmetric sequence r(m) = r(-m) on a lattice of step 2
/// (periodic families, m in 2Z) or step 1 (Dirichlet, m in Z).
class MajorantSeq {
 public:
  MajorantSeq() = default;
  /// `values[k]` is r(k) for k = 0..max; entries off the lattice are ignored.
  MajorantSeq(std::vector<double> values, int step);

  double operator()(int m) const {
    const int a = m < 0 ? -m : m;
    if (a >= static_cast<int>(r_.size()) || a % step_ != 0) return 0.0;
    return r_[static_cast<std::size_t>(a)];
  }
  int step() const { return step_; }
  int max_index() const { return static_cast<int>(r_.size()) - 1; }
  /// l2 norm over the full lattice (both signs).
  double norm() const { return norm_; }

  MajorantSeq scaled(double factor) const;

 private:
  std::vector<double> r_{0.0};
  int step_ = 2;
  double norm_ = 0.0;
};

/// r(m) = max(|w(m)|, |w(-m)|) on 2Z.
MajorantSeq majorant(const FourierPotential& p);
/// r(m) = |q~(|m|)| on Z.
MajorantSeq majorant(const SinePotential& p);

/// Tail energy (sum_{|i| >= n} r(i)^2)^{1/2}; equals the full norm at n = 0.
double tail_energy(const MajorantSeq& r, double n);

/// Sine coefficients of Q on [0, pi] from the exponential ones, in closed form.
SinePotential per_to_dir(const FourierPotential& p, int max_sine);

/// Exact value of int_0^pi e^{ikx} sin(mx) dx for integers k and m >= 1.
cplx exp_sine_integral(int k, int m);

// Gallery potentials.

FourierPotential zero_potential(int max_index = 0);
/// v = 2q cos 2x, i.e. Q = q sin 2x.
FourierPotential mathieu(double coupling, int max_index = 2);
/// c * delta_*(x), delta_* = sum_k delta(x - k pi): V(m) = c/pi for all even m.
FourierPotential delta_comb(double c, int max_index = 256);
/// v = a (x - pi/2) on [0, pi), extended periodically: w(m) = a / m^2.
FourierPotential sawtooth(double amplitude, int max_index = 256);

}  // namespace hill
