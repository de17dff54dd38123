#include "hill/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>

#include "hill/error.hpp"
#include "hill/projector.hpp"

namespace hill {

namespace {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

double gap(int n, int j) { return std::abs(static_cast<double>(n) * n - static_cast<double>(j) * j); }

template <class F>
Mat build(const std::vector<int>& rows, const std::vector<int>& cols, F&& f) {
  Mat K(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      K(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = f(rows[i], cols[j]);
    }
  }
  return K;
}

template <class F>
Vec build(const std::vector<int>& idx, F&& f) {
  Vec v(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) v(static_cast<Eigen::Index>(i)) = f(idx[i]);
  return v;
}

void require_order(int s, const char* what) {
  if (s < 1) throw Error(Errc::InvalidArgument, std::string(what) + " order must be >= 1");
}

// sigma1(n, s; m) for s = 1..s_max and every m in `set`.
std::vector<Vec> sigma1_orders(const MajorantSeq& r, int n, int s_max, const IndexSet& set) {
  const std::vector<int> inner = set.without({n}).indices();
  const auto& outer = set.indices();
  const Mat A = build(inner, inner, [&](int i, int j) { return r(i + j) / std::abs(n - j); });
  const Mat M = build(outer, inner, [&](int m, int j) { return r(m + j) / std::abs(n - j); });
  std::vector<Vec> out;
  Vec g = Vec::Ones(static_cast<Eigen::Index>(inner.size()));
  for (int s = 1; s <= s_max; ++s) {
    if (s > 1) g = A * g;
    out.push_back(M * g);
  }
  return out;
}

// sigma2(n, s; m) for s = 2..s_max (slot s - 2) and every m in `set`.
std::vector<Vec> sigma2_orders(const MajorantSeq& r, int n, int s_max, const IndexSet& set) {
  const std::vector<int> inner = set.without({n, -n}).indices();
  const auto& outer = set.indices();
  const Mat last = build(inner, inner, [&](int i, int j) { return r(i + j) / gap(n, j); });
  const Mat middle = build(inner, inner, [&](int i, int j) { return r(i + j) / std::abs(n + j); });
  const Mat M = build(outer, inner, [&](int m, int j) { return r(m + j); });
  std::vector<Vec> out;
  Vec h = last * Vec::Ones(static_cast<Eigen::Index>(inner.size()));
  for (int s = 2; s <= s_max; ++s) {
    if (s > 2) h = middle * h;
    out.push_back(M * h);
  }
  return out;
}

// sigma(n, s) for s = 1..s_max.
std::vector<double> sigma_orders(const MajorantSeq& r, int n, int s_max, const IndexSet& set) {
  const std::vector<int> idx = set.without({n, -n}).indices();
  const Mat K = build(idx, idx, [&](int i, int j) {
    return (1.0 / std::abs(n - i) + 1.0 / std::abs(n + j)) * r(i + j);
  });
  const Vec a = build(idx, [&](int j) { return r(n + j); });
  std::vector<double> out;
  Vec h = build(idx, [&](int j) { return 1.0 / std::abs(n - j); });
  for (int s = 1; s <= s_max; ++s) {
    if (s > 1) h = K * h;
    out.push_back(a.dot(h));
  }
  return out;
}

int resolve_cutoff(int n, int cutoff) {
  const int value = cutoff > 0 ? cutoff : 8 * n;
  if (value < 8 * n) {
    throw Error(Errc::CutoffTooSmall, "cutoff " + std::to_string(value) + " < 8n = " + std::to_string(8 * n));
  }
  return value;
}

template <class F>
SumResult lattice_sum(int n, const SumOptions& opts, F&& raw) {
  if (n < 1) throw Error(Errc::InvalidArgument, "n must be >= 1");
  SumResult out;
  out.cutoff = resolve_cutoff(n, opts.cutoff);
  out.value = raw(IndexSet::lattice(n, opts.step, out.cutoff));
  if (opts.estimate_tail) {
    out.tail_estimate = std::abs(out.value - raw(IndexSet::lattice(n, opts.step, out.cutoff / 2)));
  }
  if (opts.enforce_tail && !out.tail_ok(opts.tail_tolerance)) {
    throw Error(Errc::CutoffTooSmall, "tail estimate " + std::to_string(out.tail_estimate) + " exceeds " +
                                          std::to_string(opts.tail_tolerance) + " of the value " +
                                          std::to_string(out.value));
  }
  return out;
}

constexpr double kRoundingAllowance = 1e-12;

double max_of(const Vec& v) { return v.size() == 0 ? 0.0 : v.maxCoeff(); }

}  // namespace

Sequence Sequence::from_function(int max_index, const std::function<double(int)>& fn) {
  if (max_index < 0) throw Error(Errc::InvalidArgument, "max_index must be >= 0");
  Sequence out;
  out.max_ = max_index;
  out.values_.resize(static_cast<std::size_t>(2 * max_index + 1));
  for (int m = -max_index; m <= max_index; ++m) {
    const double value = fn(m);
    if (!(value >= 0.0)) throw Error(Errc::InvalidArgument, "sequence entries must be >= 0");
    out.values_[static_cast<std::size_t>(m + max_index)] = value;
  }
  return out;
}

Sequence Sequence::coupling(const FourierPotential& p) {
  return from_function(p.max_index(), [&](int m) { return std::abs(static_cast<double>(m)) * std::abs(p.w(m)); });
}

Sequence Sequence::coupling_bound(const MajorantSeq& r) {
  return from_function(r.max_index(), [&](int m) { return std::abs(static_cast<double>(m)) * r(m); });
}

Sequence Sequence::scaled(double factor) const {
  if (!(factor >= 0.0)) throw Error(Errc::InvalidArgument, "scale factor must be >= 0");
  Sequence out = *this;
  for (double& v : out.values_) v *= factor;
  return out;
}

IndexSet IndexSet::lattice(int n, int step, int cutoff) {
  if (step != 1 && step != 2) throw Error(Errc::InvalidArgument, "lattice step must be 1 or 2");
  if (cutoff < 0) throw Error(Errc::InvalidArgument, "cutoff must be >= 0");
  IndexSet out;
  for (int j = -cutoff; j <= cutoff; ++j) {
    if ((j - n) % step == 0) out.indices_.push_back(j);
  }
  return out;
}

IndexSet IndexSet::of(std::vector<int> indices) {
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  IndexSet out;
  out.indices_ = std::move(indices);
  return out;
}

IndexSet IndexSet::without(std::initializer_list<int> excluded) const {
  IndexSet out;
  for (int j : indices_) {
    if (std::find(excluded.begin(), excluded.end(), j) == excluded.end()) out.indices_.push_back(j);
  }
  return out;
}

double L_sum(const Sequence& v, int p, int d, int n, const IndexSet& set) {
  require_order(p, "L");
  const std::vector<int> idx = set.without({n, -n}).indices();
  const Mat K = build(idx, idx, [&](int i, int j) { return v(i - j) / gap(n, j); });
  const Vec a = build(idx, [&](int i) { return v(d - i) / gap(n, i); });
  Vec h = Vec::Ones(static_cast<Eigen::Index>(idx.size()));
  for (int step = 1; step < p; ++step) h = K * h;
  return a.dot(h);
}

double R_sum(const Sequence& v, int p, int d, int n, const IndexSet& set) {
  require_order(p, "R");
  const std::vector<int> idx = set.without({n, -n}).indices();
  const Mat K = build(idx, idx, [&](int i, int j) { return v(i - j) / gap(n, i); });
  Vec h = build(idx, [&](int i) { return v(i - d) / gap(n, i); });
  for (int step = 1; step < p; ++step) h = K * h;
  return h.sum();
}

double sigma(const MajorantSeq& r, int n, int s, const IndexSet& set) {
  require_order(s, "sigma");
  return sigma_orders(r, n, s, set).back();
}

Eigen::VectorXd sigma1_all(const MajorantSeq& r, int n, int s, const IndexSet& set) {
  require_order(s, "sigma1");
  return sigma1_orders(r, n, s, set).back();
}

Eigen::VectorXd sigma2_all(const MajorantSeq& r, int n, int s, const IndexSet& set) {
  if (s < 2) throw Error(Errc::InvalidArgument, "sigma2 order must be >= 2");
  return sigma2_orders(r, n, s, set).back();
}

double sigma1(const MajorantSeq& r, int n, int s, int m, const IndexSet& set) {
  require_order(s, "sigma1");
  const std::vector<int> inner = set.without({n}).indices();
  const Mat A = build(inner, inner, [&](int i, int j) { return r(i + j) / std::abs(n - j); });
  Vec g = Vec::Ones(static_cast<Eigen::Index>(inner.size()));
  for (int step = 1; step < s; ++step) g = A * g;
  return build(inner, [&](int j) { return r(m + j) / std::abs(n - j); }).dot(g);
}

double sigma2(const MajorantSeq& r, int n, int s, int m, const IndexSet& set) {
  if (s < 2) throw Error(Errc::InvalidArgument, "sigma2 order must be >= 2");
  const std::vector<int> inner = set.without({n, -n}).indices();
  const Mat last = build(inner, inner, [&](int i, int j) { return r(i + j) / gap(n, j); });
  const Mat middle = build(inner, inner, [&](int i, int j) { return r(i + j) / std::abs(n + j); });
  Vec h = last * Vec::Ones(static_cast<Eigen::Index>(inner.size()));
  for (int step = 2; step < s; ++step) h = middle * h;
  return build(inner, [&](int j) { return r(m + j); }).dot(h);
}

double sigma_tilde(const MajorantSeq& r, int n, std::span<const int> deltas, const IndexSet& set) {
  for (int delta : deltas) {
    if (delta != 1 && delta != -1) throw Error(Errc::InvalidArgument, "sign choices must be +-1");
  }
  const std::vector<int> idx = set.without({n, -n}).indices();
  const Mat minus = build(idx, idx, [&](int i, int j) { return r(i + j) / std::abs(n - i); });
  const Mat plus = build(idx, idx, [&](int i, int j) { return r(i + j) / std::abs(n + j); });
  Vec h = build(idx, [&](int j) { return 1.0 / std::abs(n - j); });
  for (auto it = deltas.rbegin(); it != deltas.rend(); ++it) h = (*it < 0 ? minus : plus) * h;
  return build(idx, [&](int j) { return r(n + j); }).dot(h);
}

SumResult L_sum(const Sequence& v, int p, int d, int n, const SumOptions& opts) {
  return lattice_sum(n, opts, [&](const IndexSet& set) { return L_sum(v, p, d, n, set); });
}

SumResult R_sum(const Sequence& v, int p, int d, int n, const SumOptions& opts) {
  return lattice_sum(n, opts, [&](const IndexSet& set) { return R_sum(v, p, d, n, set); });
}

SumResult sigma(const MajorantSeq& r, int n, int s, const SumOptions& opts) {
  return lattice_sum(n, opts, [&](const IndexSet& set) { return sigma(r, n, s, set); });
}

SumResult sigma1(const MajorantSeq& r, int n, int s, int m, const SumOptions& opts) {
  return lattice_sum(n, opts, [&](const IndexSet& set) { return sigma1(r, n, s, m, set); });
}

SumResult sigma2(const MajorantSeq& r, int n, int s, int m, const SumOptions& opts) {
  return lattice_sum(n, opts, [&](const IndexSet& set) { return sigma2(r, n, s, m, set); });
}

SumResult sigma_tilde(const MajorantSeq& r, int n, std::span<const int> deltas, const SumOptions& opts) {
  return lattice_sum(n, opts, [&](const IndexSet& set) { return sigma_tilde(r, n, deltas, set); });
}

double inverse_gap_sum(int n, int step, int cutoff) {
  double sum = 0.0;
  const std::vector<int> idx = IndexSet::lattice(n, step, cutoff).without({n, -n}).indices();
  // Far terms first.
  std::vector<double> terms;
  terms.reserve(idx.size());
  for (int j : idx) terms.push_back(1.0 / gap(n, j));
  std::sort(terms.begin(), terms.end());
  for (double t : terms) sum += t;
  return sum;
}

double rho_tilde(const MajorantSeq& r, int n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "n must be >= 1");
  return tail_energy(r, n) + 2.0 * r.norm() / std::sqrt(static_cast<double>(n));
}

double rho_n(const MajorantSeq& r, int n, double rho_constant) {
  if (n < 2) throw Error(Errc::InvalidArgument, "n must be >= 2");
  if (!(rho_constant > 0.0)) throw Error(Errc::InvalidArgument, "rho_constant must be positive");
  const double root = std::sqrt(static_cast<double>(n));
  return rho_constant * (r.norm() / root + tail_energy(r, root));
}

double eps_n(const MajorantSeq& r, int n) {
  if (n < 2) throw Error(Errc::InvalidArgument, "n must be >= 2");
  const double M = 4.0 * (1.0 + r.norm());
  return M * (std::pow(2.0 * std::log(6.0 * n) / n, 0.25) + std::sqrt(rho_tilde(r, n)));
}

KappaBound kappa_and_bound(double rho, double eps) {
  if (!(rho >= 0.0) || !(eps >= 0.0)) throw Error(Errc::InvalidArgument, "bound inputs must be >= 0");
  KappaBound out;
  out.kappa = std::max(rho, eps);
  out.bound64 = 64.0 * out.kappa;
  out.valid = out.kappa < 0.25;
  return out;
}

BoundSequences bound_sequences(const MajorantSeq& r, int n, double rho_constant) {
  BoundSequences out;
  out.n = n;
  out.rho_constant = rho_constant;
  out.r_norm = r.norm();
  out.rho_tilde = rho_tilde(r, n);
  out.rho = rho_n(r, n, rho_constant);
  out.eps = eps_n(r, n);
  const KappaBound kb = kappa_and_bound(out.rho, out.eps);
  out.kappa = kb.kappa;
  out.bound64 = kb.bound64;
  out.valid = kb.valid;
  return out;
}

A6Result a6_predicate(const MajorantSeq& r, int N) {
  if (N < 1) throw Error(Errc::InvalidArgument, "N must be >= 1");
  const double norm = r.norm();
  const double lhs = 512.0 * (1.0 + norm) *
                     (tail_energy(r, std::sqrt(static_cast<double>(N))) +
                      2.0 / std::pow(N, 0.25) * (std::sqrt(norm) + std::pow(std::log(6.0 * N), 0.25)));
  return {lhs, lhs <= 0.5};
}

double sigma_nested_vs_matrix(const FourierPotential& p, cplx lambda, int s, std::span<const int> indices,
                              Branch branch) {
  if (s < 0 || s > 3) throw Error(Errc::InvalidArgument, "s must be in 0..3");
  const IndexSet set = IndexSet::of({indices.begin(), indices.end()});
  const auto& idx = set.indices();
  if (idx.size() != indices.size()) throw Error(Errc::DuplicateIndex, "index set has repeated entries");
  if (idx.empty() || idx.size() > 32) throw Error(Errc::InvalidArgument, "index set must have 1..32 entries");
  const int N = static_cast<int>(idx.size());

  Eigen::VectorXcd inv(N), root(N);
  for (int a = 0; a < N; ++a) {
    const cplx z = lambda - static_cast<double>(idx[static_cast<std::size_t>(a)]) * idx[static_cast<std::size_t>(a)];
    if (z == cplx{} || (z.imag() == 0.0 && z.real() < 0.0)) {
      throw Error(Errc::BranchAmbiguity, "lambda - j^2 lies on the branch cut for j = " +
                                             std::to_string(idx[static_cast<std::size_t>(a)]));
    }
    inv(a) = 1.0 / z;
    root(a) = 1.0 / std::sqrt(z);
    if (branch == Branch::Negated && a % 2 == 1) root(a) = -root(a);
  }
  Eigen::MatrixXcd V(N, N);
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) V(a, b) = p.V(idx[static_cast<std::size_t>(a)] - idx[static_cast<std::size_t>(b)]);
  }

  const Eigen::MatrixXcd K = root.asDiagonal();
  const Eigen::MatrixXcd KVK = K * V * K;
  Eigen::MatrixXcd product = K;
  for (int t = 0; t <= s; ++t) product = product * KVK;
  product = product * K;

  // Direct nested sum over (j_1, ..., j_s).
  Eigen::MatrixXcd nested = Eigen::MatrixXcd::Zero(N, N);
  if (s == 0) {
    nested = V;
  } else {
    std::vector<int> tuple(static_cast<std::size_t>(s), 0);
    while (true) {
      cplx chain = inv(tuple[0]);
      for (int t = 1; t < s; ++t) chain *= V(tuple[static_cast<std::size_t>(t - 1)], tuple[static_cast<std::size_t>(t)]) * inv(tuple[static_cast<std::size_t>(t)]);
      const int first = tuple.front();
      const int last = tuple.back();
      for (int k = 0; k < N; ++k) {
        const cplx left = V(k, first) * chain;
        for (int m = 0; m < N; ++m) nested(k, m) += left * V(last, m);
      }
      int pos = s - 1;
      while (pos >= 0 && ++tuple[static_cast<std::size_t>(pos)] == N) tuple[static_cast<std::size_t>(pos--)] = 0;
      if (pos < 0) break;
    }
  }
  nested = inv.asDiagonal() * nested * inv.asDiagonal();
  return (product - nested).cwiseAbs().maxCoeff();
}

std::string_view to_string(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Inequality: return "inequality";
    case VerdictKind::Identity: return "identity";
    case VerdictKind::Diagnostic: return "diagnostic";
  }
  return "?";
}

Verdict inequality(std::string name, double lhs, double rhs, double tail, std::string detail) {
  Verdict v;
  v.name = std::move(name);
  v.kind = VerdictKind::Inequality;
  v.lhs = lhs;
  v.rhs = rhs;
  v.margin = rhs - lhs;
  v.tail_estimate = tail;
  // Some chains are equalities term by term; allow for summation order.
  v.passed = lhs <= rhs + kRoundingAllowance * std::max(std::abs(lhs), std::abs(rhs));
  v.detail = std::move(detail);
  return v;
}

Verdict identity(std::string name, double lhs, double rhs, double tolerance, std::string detail) {
  Verdict v;
  v.name = std::move(name);
  v.kind = VerdictKind::Identity;
  v.lhs = lhs;
  v.rhs = rhs;
  const double allowed = tolerance * std::max(1.0, std::abs(rhs));
  v.margin = allowed - std::abs(lhs - rhs);
  v.passed = v.margin >= 0.0;
  v.detail = std::move(detail);
  return v;
}

Verdict A0_bound_check(const FourierPotential& p, BoundaryCondition bc, int n, int cutoff) {
  if (bc == BoundaryCondition::Dirichlet) {
    throw Error(Errc::BcMismatch, "the first-order bound is stated for periodic boundary conditions");
  }
  if (!index_matches(bc, n) || n < 1) throw Error(Errc::BcMismatch, "n does not match the boundary condition");
  const int top = resolve_cutoff(n, cutoff);
  const Coupling coupling(bc, p);
  auto total = [&](int c) {
    double sum = 0.0;
    for (int k : IndexSet::lattice(n, 2, c).indices()) {
      for (int d : {n, -n}) {
        sum += std::abs(first_order_residue(coupling, n, k, d));
        sum += std::abs(first_order_residue(coupling, n, d, k));
      }
    }
    return sum;
  };
  const double lhs = total(top);
  const MajorantSeq r = majorant(p);
  const double rhs = 4.0 * r.norm() / std::sqrt(static_cast<double>(n)) + 4.0 * tail_energy(r, n);
  return inequality("A(n,0) <= 4||r||/sqrt(n) + 4E_n(r)", lhs, rhs, std::abs(lhs - total(top / 2)));
}

bool SeriesReport::passed() const { return failures() == 0; }

int SeriesReport::failures() const {
  return static_cast<int>(std::count_if(verdicts.begin(), verdicts.end(), [](const Verdict& v) {
    return v.kind != VerdictKind::Diagnostic && !v.passed;
  }));
}

SeriesReport lemma_suite(const Sequence& v, const MajorantSeq& r, int n, const LemmaOptions& opts) {
  if (n < 2) throw Error(Errc::InvalidArgument, "n must be >= 2");
  if (opts.s_max < 2 || opts.p_max < 1) throw Error(Errc::InvalidArgument, "s_max >= 2 and p_max >= 1 required");
  SeriesReport rep;
  rep.n = n;
  rep.options = opts;
  rep.options.cutoff = resolve_cutoff(n, opts.cutoff);
  const int cutoff = rep.options.cutoff;
  const IndexSet full = IndexSet::lattice(n, opts.step, cutoff);
  const IndexSet half = IndexSet::lattice(n, opts.step, cutoff / 2);
  rep.sequences = bound_sequences(r, n, opts.rho_constant);
  const double norm = r.norm();
  const double rt = rep.sequences.rho_tilde;
  const double eps = rep.sequences.eps;
  const double log_ratio = 2.0 * std::log(6.0 * n) / n;
  auto& out = rep.verdicts;

  auto add = [&](Verdict verdict) {
    const double tail = verdict.tail_estimate;
    const std::string name = verdict.name;
    const double value = verdict.lhs;
    out.push_back(std::move(verdict));
    if (tail > opts.tail_tolerance * value && tail > 0.0) {
      Verdict note = inequality("cutoff: " + name, tail, opts.tail_tolerance * value);
      note.kind = opts.enforce_tail ? VerdictKind::Inequality : VerdictKind::Diagnostic;
      note.detail = "tail estimate against " + std::to_string(opts.tail_tolerance) + " of the truncated value";
      out.push_back(std::move(note));
    }
  };

  // L and R tables.
  for (int p = 1; p <= opts.p_max; ++p) {
    rep.L_plus.push_back(L_sum(v, p, n, n, full));
    rep.L_minus.push_back(L_sum(v, p, -n, n, full));
    rep.R_plus.push_back(R_sum(v, p, n, n, full));
    rep.R_minus.push_back(R_sum(v, p, -n, n, full));
    const std::string ps = std::to_string(p);
    add(identity("R(" + ps + ",n) = L(" + ps + ",-n)", rep.R_plus.back(), rep.L_minus.back(),
                 opts.identity_tolerance));
    add(identity("R(" + ps + ",-n) = L(" + ps + ",n)", rep.R_minus.back(), rep.L_plus.back(),
                 opts.identity_tolerance));
  }

  // sigma, sigma1, sigma2 at both cutoffs.
  rep.sigma_values = sigma_orders(r, n, opts.s_max, full);
  const std::vector<double> sigma_half = sigma_orders(r, n, opts.s_max, half);
  const std::vector<Vec> s1 = sigma1_orders(r, n, opts.s_max, full);
  const std::vector<Vec> s1_half = sigma1_orders(r, n, opts.s_max, half);
  const std::vector<Vec> s2 = sigma2_orders(r, n, opts.s_max, full);
  const std::vector<Vec> s2_half = sigma2_orders(r, n, opts.s_max, half);
  const auto& idx = full.indices();
  const auto position = [&](int m) {
    return static_cast<Eigen::Index>(std::lower_bound(idx.begin(), idx.end(), m) - idx.begin());
  };

  const int L_orders = std::min(opts.p_max, opts.s_max);
  for (int s = 1; s <= L_orders; ++s) {
    const std::string ss = std::to_string(s);
    const double L_max = std::max(rep.L_plus[static_cast<std::size_t>(s - 1)], rep.L_minus[static_cast<std::size_t>(s - 1)]);
    const double L_half = std::max(L_sum(v, s, n, n, half), L_sum(v, s, -n, n, half));
    const double sig = rep.sigma_values[static_cast<std::size_t>(s - 1)];
    add(inequality("L(" + ss + ",+-n) <= sigma(n," + ss + ")", L_max, sig, std::abs(L_max - L_half)));
    add(inequality("L(" + ss + ",+-n) <= eps_n^" + ss, L_max, std::pow(eps, s), std::abs(L_max - L_half)));
  }
  for (int s = 1; s <= opts.s_max; ++s) {
    const std::string ss = std::to_string(s);
    const double sig = rep.sigma_values[static_cast<std::size_t>(s - 1)];
    add(inequality("sigma(n," + ss + ") <= eps_n^" + ss, sig, std::pow(eps, s),
                   std::abs(sig - sigma_half[static_cast<std::size_t>(s - 1)])));
  }
  add(identity("sigma(n,1) = sigma1(n,1;n)", rep.sigma_values[0], s1[0](position(n)), opts.identity_tolerance));

  // sigma1 bounds, worst case over all m in the lattice.
  auto near_max = [&](const Vec& values, const IndexSet& set) {
    double best = 0.0;
    const auto& ids = set.indices();
    for (std::size_t i = 0; i < ids.size(); ++i) {
      if (2 * std::abs(ids[i] - n) <= n) best = std::max(best, values(static_cast<Eigen::Index>(i)));
    }
    return best;
  };
  {
    const double lhs = near_max(s1[0], full);
    Verdict verdict = inequality("sigma1(n,1;m) <= rho~_n for |m-n| <= n/2", lhs, rt,
                                 std::abs(lhs - near_max(s1_half[0], half)));
    if (n < 4) {
      verdict.kind = VerdictKind::Diagnostic;
      verdict.detail = "stated for n >= 4";
    }
    add(std::move(verdict));
    const double all = max_of(s1[0]);
    add(inequality("sigma1(n,1;m) <= ||r||", all, norm, std::abs(all - max_of(s1_half[0]))));
  }
  for (int s = 2; s <= opts.s_max; ++s) {
    const int p = s / 2;
    const double rhs = (s % 2 == 0 ? 1.0 : norm) * std::pow(2.0 * norm * rt, p);
    const double lhs = max_of(s1[static_cast<std::size_t>(s - 1)]);
    add(inequality("sigma1(n," + std::to_string(s) + ";m) <= " +
                       (s % 2 == 0 ? std::string() : std::string("||r|| ")) + "(2||r|| rho~_n)^" + std::to_string(p),
                   lhs, rhs, std::abs(lhs - max_of(s1_half[static_cast<std::size_t>(s - 1)]))));
  }
  for (int s = 1; s + 2 <= opts.s_max; ++s) {
    const Vec& upper = s1[static_cast<std::size_t>(s + 1)];
    const Vec& lower = s1[static_cast<std::size_t>(s - 1)];
    Eigen::Index worst = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < upper.size(); ++i) {
      const double margin = lower(i) * 2.0 * norm * rt - upper(i);
      if (margin < worst_margin) {
        worst_margin = margin;
        worst = i;
      }
    }
    const double tail = std::abs(max_of(upper) - max_of(s1_half[static_cast<std::size_t>(s + 1)]));
    add(inequality("sigma1(n," + std::to_string(s + 2) + ";m) <= sigma1(n," + std::to_string(s) +
                       ";m) 2||r|| rho~_n",
                   upper(worst), lower(worst) * 2.0 * norm * rt, tail,
                   "worst m = " + std::to_string(idx[static_cast<std::size_t>(worst)])));
  }

  // sigma2 bounds.
  {
    const double lhs = max_of(s2[0]);
    add(inequality("sigma2(n,2;m) <= ||r||^2 2log(6n)/n", lhs, norm * norm * log_ratio,
                   std::abs(lhs - max_of(s2_half[0]))));
  }
  for (int s = 3; s <= opts.s_max; ++s) {
    const double lhs = max_of(s2[static_cast<std::size_t>(s - 2)]);
    const double rhs = norm * norm * log_ratio * max_of(s1[static_cast<std::size_t>(s - 3)]);
    add(inequality("sigma2(n," + std::to_string(s) + ";m) <= ||r||^2 2log(6n)/n sup sigma1(n," +
                       std::to_string(s - 2) + ";k)",
                   lhs, rhs, std::abs(lhs - max_of(s2_half[static_cast<std::size_t>(s - 2)]))));
  }

  {
    const int far = 100000;
    add(inequality("sum_{j != +-n} 1/|n^2-j^2| < 2log(6n)/n", inverse_gap_sum(n, 1, far), log_ratio,
                   1.0 / far, "summed over all integers |j| <= " + std::to_string(far)));
  }

  // First-order term from the coupling magnitudes.
  {
    auto a0 = [&](const IndexSet& set) {
      double sum = 0.0;
      const IndexSet inner = set.without({n, -n});
      for (int k : inner.indices()) sum += (v(k - n) + v(k + n) + v(n - k) + v(-n - k)) / gap(n, k);
      return sum;
    };
    const double lhs = a0(full);
    add(inequality("A(n,0) <= 4||r||/sqrt(n) + 4E_n(r)", lhs,
                   4.0 * norm / std::sqrt(static_cast<double>(n)) + 4.0 * tail_energy(r, n),
                   std::abs(lhs - a0(half))));
  }

  // Sign expansion of sigma(n, s).
  for (int s = 2; s <= opts.s_max; ++s) {
    const int terms = 1 << (s - 1);
    double total = 0.0, worst = 0.0, worst_half = 0.0;
    std::vector<int> deltas(static_cast<std::size_t>(s - 1));
    for (int mask = 0; mask < terms; ++mask) {
      for (int t = 0; t < s - 1; ++t) deltas[static_cast<std::size_t>(t)] = (mask >> t) & 1 ? 1 : -1;
      const double value = sigma_tilde(r, n, deltas, full);
      total += value;
      worst = std::max(worst, value);
      worst_half = std::max(worst_half, sigma_tilde(r, n, deltas, half));
    }
    const std::string ss = std::to_string(s);
    add(identity("sum_delta sigma~(delta) = sigma(n," + ss + ")", total, rep.sigma_values[static_cast<std::size_t>(s - 1)],
                 opts.identity_tolerance));
    add(inequality("sigma~(delta) <= (eps_n/2)^" + ss, worst, std::pow(eps / 2.0, s), std::abs(worst - worst_half)));
  }

  // Tables at sampled m.
  for (int m = n - 4; m <= n + 4; ++m) {
    if ((m - n) % opts.step == 0) rep.sampled_m.push_back(m);
  }
  std::vector<int> far_candidates;
  for (int m : idx) {
    if (2 * std::abs(m - n) > n) far_candidates.push_back(m);
  }
  std::mt19937_64 rng(opts.seed);
  for (int t = 0; t < opts.far_samples && !far_candidates.empty(); ++t) {
    std::uniform_int_distribution<std::size_t> pick(0, far_candidates.size() - 1);
    rep.sampled_m.push_back(far_candidates[pick(rng)]);
  }
  for (int s = 1; s <= opts.s_max; ++s) {
    for (int m : rep.sampled_m) {
      rep.sigma1_table.push_back({s, m, s1[static_cast<std::size_t>(s - 1)](position(m))});
      if (s >= 2) rep.sigma2_table.push_back({s, m, s2[static_cast<std::size_t>(s - 2)](position(m))});
    }
  }
  return rep;
}

SeriesReport lemma_suite(const FourierPotential& p, int n, const LemmaOptions& opts) {
  return lemma_suite(Sequence::coupling(p), majorant(p), n, opts);
}

SeriesReport lemma_suite(const MajorantSeq& r, int n, const LemmaOptions& opts) {
  return lemma_suite(Sequence::coupling_bound(r), r, n, opts);
}

}  // namespace hill
