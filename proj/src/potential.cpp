#include "hill/potential.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "hill/error.hpp"

namespace hill {

namespace {

constexpr cplx kI{0.0, 1.0};

int round_up_even(int m) { return m % 2 == 0 ? m : m + 1; }

void require_finite(cplx z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw Error(Errc::InvalidArgument, std::string("non-finite ") + what);
  }
}

}  // namespace

FourierPotential FourierPotential::from_coeffs(cplx v0, std::span<const Coefficient> entries,
                                               std::optional<int> max_index, bool truncated) {
  require_finite(v0, "v0");
  std::set<int> seen;
  int support = 0;
  for (const auto& [m, value] : entries) {
    if (m == 0) throw Error(Errc::ZeroIndex, "w(0) must vanish (Q has zero mean)");
    if (m % 2 != 0) throw Error(Errc::OddIndex, "index " + std::to_string(m) + " is odd");
    if (!seen.insert(m).second) {
      throw Error(Errc::DuplicateIndex, "index " + std::to_string(m) + " given twice");
    }
    require_finite(value, "coefficient");
    support = std::max(support, std::abs(m));
  }
  int max = support;
  if (max_index) {
    if (*max_index < support) {
      throw Error(Errc::InvalidArgument, "max_index " + std::to_string(*max_index) +
                                             " is below the largest stored index " +
                                             std::to_string(support));
    }
    max = round_up_even(*max_index);
  }

  FourierPotential p;
  p.v0_ = v0;
  p.max_index_ = max;
  p.truncated_ = truncated;
  p.w_.assign(static_cast<std::size_t>(max + 1), cplx{});
  for (const auto& [m, value] : entries) p.w_[p.slot(m)] = value;
  return p;
}

cplx FourierPotential::w(int m) const {
  if (m == 0 || m % 2 != 0 || m > max_index_ || m < -max_index_) return {};
  return w_[slot(m)];
}

cplx FourierPotential::V(int m) const {
  if (m == 0) return v0_;
  return kI * static_cast<double>(m) * w(m);
}

bool FourierPotential::is_zero() const {
  return v0_ == cplx{} && std::all_of(w_.begin(), w_.end(), [](cplx z) { return z == cplx{}; });
}

std::vector<Coefficient> FourierPotential::support() const {
  std::vector<Coefficient> out;
  for (int m = -max_index_; m <= max_index_; m += 2) {
    const cplx value = w(m);
    if (value != cplx{}) out.emplace_back(m, value);
  }
  return out;
}

double FourierPotential::w_l2_norm() const {
  double sum = 0.0;
  for (cplx z : w_) sum += std::norm(z);
  return std::sqrt(sum);
}

double FourierPotential::h_minus1_norm() const {
  double sum = std::norm(v0_);
  for (int m = -max_index_; m <= max_index_; m += 2) {
    if (m != 0) sum += std::norm(w(m)) / (static_cast<double>(m) * m);
  }
  return std::sqrt(sum);
}

bool FourierPotential::hermitian(double tol) const {
  for (int m = 2; m <= max_index_; m += 2) {
    if (std::abs(w(-m) - std::conj(w(m))) > tol) return false;
  }
  return true;
}

cplx FourierPotential::Q(double x) const {
  cplx sum{};
  for (int m = -max_index_; m <= max_index_; m += 2) {
    const cplx value = w(m);
    if (value != cplx{}) sum += value * std::polar(1.0, m * x);
  }
  return sum;
}

SinePotential SinePotential::from_coeffs(cplx v0, std::span<const Coefficient> entries,
                                         std::optional<int> max_index, bool truncated) {
  require_finite(v0, "v0");
  std::set<int> seen;
  int support = 0;
  for (const auto& [m, value] : entries) {
    if (m == 0) throw Error(Errc::ZeroIndex, "q~(0) is zero by convention");
    if (m < 0) throw Error(Errc::InvalidArgument, "sine indices are positive");
    if (!seen.insert(m).second) {
      throw Error(Errc::DuplicateIndex, "index " + std::to_string(m) + " given twice");
    }
    require_finite(value, "coefficient");
    support = std::max(support, m);
  }
  const int max = max_index ? *max_index : support;
  if (max < support) throw Error(Errc::InvalidArgument, "max_index below largest stored index");

  SinePotential p;
  p.v0_ = v0;
  p.truncated_ = truncated;
  p.qt_.assign(static_cast<std::size_t>(max + 1), cplx{});
  for (const auto& [m, value] : entries) p.qt_[static_cast<std::size_t>(m)] = value;
  return p;
}

cplx SinePotential::qt(int m) const {
  if (m <= 0 || m > max_index()) return {};
  return qt_[static_cast<std::size_t>(m)];
}

cplx SinePotential::Q(double x) const {
  cplx sum{};
  for (int m = 1; m <= max_index(); ++m) {
    if (qt_[static_cast<std::size_t>(m)] != cplx{}) {
      sum += qt_[static_cast<std::size_t>(m)] * std::numbers::sqrt2 * std::sin(m * x);
    }
  }
  return sum;
}

MajorantSeq::MajorantSeq(std::vector<double> values, int step) : r_(std::move(values)), step_(step) {
  if (step_ != 1 && step_ != 2) throw Error(Errc::InvalidArgument, "majorant step must be 1 or 2");
  if (r_.empty()) r_.push_back(0.0);
  double sum = 0.0;
  for (std::size_t k = 0; k < r_.size(); ++k) {
    if (k % static_cast<std::size_t>(step_) != 0) {
      r_[k] = 0.0;
      continue;
    }
    if (!(r_[k] >= 0.0)) throw Error(Errc::InvalidArgument, "majorant entries must be >= 0");
    sum += (k == 0 ? 1.0 : 2.0) * r_[k] * r_[k];
  }
  norm_ = std::sqrt(sum);
}

MajorantSeq MajorantSeq::scaled(double factor) const {
  std::vector<double> values = r_;
  for (double& v : values) v *= factor;
  return MajorantSeq(std::move(values), step_);
}

MajorantSeq majorant(const FourierPotential& p) {
  std::vector<double> r(static_cast<std::size_t>(p.max_index() + 1), 0.0);
  for (int m = 2; m <= p.max_index(); m += 2) {
    r[static_cast<std::size_t>(m)] = std::max(std::abs(p.w(m)), std::abs(p.w(-m)));
  }
  return MajorantSeq(std::move(r), 2);
}

MajorantSeq majorant(const SinePotential& p) {
  std::vector<double> r(static_cast<std::size_t>(p.max_index() + 1), 0.0);
  for (int m = 1; m <= p.max_index(); ++m) r[static_cast<std::size_t>(m)] = std::abs(p.qt(m));
  return MajorantSeq(std::move(r), 1);
}

double tail_energy(const MajorantSeq& r, double n) {
  if (n < 0.0) throw Error(Errc::InvalidArgument, "tail index must be >= 0");
  const int start = static_cast<int>(std::ceil(n));
  // Summed from the far end so small terms accumulate first.
  double sum = 0.0;
  for (int i = r.max_index(); i >= std::max(start, 1); --i) {
    const double v = r(i);
    sum += 2.0 * v * v;
  }
  if (start <= 0) sum += r(0) * r(0);
  return std::sqrt(sum);
}

cplx exp_sine_integral(int k, int m) {
  using std::numbers::pi;
  if (m < 1) throw Error(Errc::InvalidArgument, "sine index must be >= 1");
  if (k == m) return {0.0, pi / 2.0};
  if (k == -m) return {0.0, -pi / 2.0};
  // int_0^pi e^{iax} dx = ((-1)^a - 1) / (ia): zero for even a, 2i/a for odd a.
  auto exp_integral = [](int a) -> cplx {
    if (a % 2 == 0) return {};
    return {0.0, 2.0 / a};
  };
  return (exp_integral(k + m) - exp_integral(k - m)) / cplx{0.0, 2.0};
}

SinePotential per_to_dir(const FourierPotential& p, int max_sine) {
  if (max_sine < 1) throw Error(Errc::InvalidArgument, "max_sine must be >= 1");
  const auto coeffs = p.support();
  SinePotential out;
  out.v0_ = p.v0();
  out.truncated_ = p.truncated();
  out.qt_.assign(static_cast<std::size_t>(max_sine + 1), cplx{});
  const double scale = std::numbers::sqrt2 / std::numbers::pi;
  for (int m = 1; m <= max_sine; ++m) {
    cplx sum{};
    for (const auto& [k, value] : coeffs) {
      if (m % 2 == 0 && k != m && k != -m) continue;  // vanishes for even m off resonance
      sum += value * exp_sine_integral(k, m);
    }
    out.qt_[static_cast<std::size_t>(m)] = scale * sum;
  }
  return out;
}

FourierPotential zero_potential(int max_index) {
  return FourierPotential::from_coeffs({}, {}, max_index);
}

FourierPotential mathieu(double coupling, int max_index) {
  const std::vector<Coefficient> entries{{2, {0.0, -coupling / 2.0}}, {-2, {0.0, coupling / 2.0}}};
  if (coupling == 0.0) return zero_potential(std::max(max_index, 2));
  return FourierPotential::from_coeffs({}, entries, std::max(max_index, 2));
}

FourierPotential delta_comb(double c, int max_index) {
  if (!std::isfinite(c)) throw Error(Errc::InvalidArgument, "delta mass must be finite");
  if (c == 0.0) return zero_potential(max_index);
  const int max = round_up_even(std::max(max_index, 2));
  std::vector<Coefficient> entries;
  entries.reserve(static_cast<std::size_t>(max));
  // V(m) = c/pi = i m w(m)  =>  w(m) = -i c / (pi m).
  for (int m = -max; m <= max; m += 2) {
    if (m != 0) entries.emplace_back(m, cplx{0.0, -c / (std::numbers::pi * m)});
  }
  return FourierPotential::from_coeffs({c / std::numbers::pi, 0.0}, entries, max, true);
}

FourierPotential sawtooth(double amplitude, int max_index) {
  if (!std::isfinite(amplitude)) throw Error(Errc::InvalidArgument, "amplitude must be finite");
  if (amplitude == 0.0) return zero_potential(max_index);
  const int max = round_up_even(std::max(max_index, 2));
  std::vector<Coefficient> entries;
  entries.reserve(static_cast<std::size_t>(max));
  for (int m = -max; m <= max; m += 2) {
    if (m != 0) entries.emplace_back(m, cplx{amplitude / (static_cast<double>(m) * m), 0.0});
  }
  return FourierPotential::from_coeffs({}, entries, max, true);
}

}  // namespace hill
