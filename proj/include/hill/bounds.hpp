#pragma once

// Bound sequences and nested multi-index sums of the localization and decay
// estimates, evaluated at truncation by iterated matrix-vector products.
//
// Index sets are lattices {j : j = n mod step, |j| <= cutoff} (step 2 for the
// periodic problems, 1 for Dirichlet) or explicit finite sets. Each sum applies
// its own exclusions (+-n or n) on top of the set it is given.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hill/operator.hpp"
#include "hill/potential.hpp"

namespace hill {

/// Nonnegative sequence on Z, stored on [-max, max] and zero outside.
class Sequence {
 public:
  Sequence() = default;
  static Sequence from_function(int max_index, const std::function<double(int)>& fn);
  /// |m w(m)|: the coupling magnitudes without the mean (the mean is a diagonal shift).
  static Sequence coupling(const FourierPotential& p);
  /// |m| r(m): the largest coupling magnitudes compatible with the majorant r.
  static Sequence coupling_bound(const MajorantSeq& r);

  double operator()(int m) const {
    if (m < -max_ || m > max_) return 0.0;
    return values_[static_cast<std::size_t>(m + max_)];
  }
  int max_index() const { return max_; }
  Sequence scaled(double factor) const;

 private:
  int max_ = 0;
  std::vector<double> values_{0.0};
};

class IndexSet {
 public:
  /// {j : j = n (mod step), |j| <= cutoff}.
  static IndexSet lattice(int n, int step, int cutoff);
  /// Sorted, deduplicated copy of the given indices.
  static IndexSet of(std::vector<int> indices);

  const std::vector<int>& indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }
  /// Copy without the listed indices.
  IndexSet without(std::initializer_list<int> excluded) const;

 private:
  std::vector<int> indices_;
};

struct SumOptions {
  int cutoff = 0;              // 0 selects 8n
  int step = 2;                // lattice spacing
  bool estimate_tail = true;   // compare against the sum at cutoff / 2
  bool enforce_tail = false;   // throw CutoffTooSmall when tail > tail_tolerance * value
  double tail_tolerance = 0.01;
};

struct SumResult {
  double value = 0.0;
  double tail_estimate = 0.0;  // |value(cutoff) - value(cutoff / 2)|
  int cutoff = 0;

  bool tail_ok(double tolerance) const { return tail_estimate <= tolerance * value; }
};

// Sums over an explicit (already truncated) index set.
double L_sum(const Sequence& v, int p, int d, int n, const IndexSet& set);
double R_sum(const Sequence& v, int p, int d, int n, const IndexSet& set);
double sigma(const MajorantSeq& r, int n, int s, const IndexSet& set);
double sigma1(const MajorantSeq& r, int n, int s, int m, const IndexSet& set);
double sigma2(const MajorantSeq& r, int n, int s, int m, const IndexSet& set);
/// One term of the expansion of sigma(n, s) over sign choices; deltas has s - 1 entries of +-1.
double sigma_tilde(const MajorantSeq& r, int n, std::span<const int> deltas, const IndexSet& set);

/// sigma1(n, s; m) and sigma2(n, s; m) for every m in `set` (same order as set.indices()).
Eigen::VectorXd sigma1_all(const MajorantSeq& r, int n, int s, const IndexSet& set);
Eigen::VectorXd sigma2_all(const MajorantSeq& r, int n, int s, const IndexSet& set);

// Lattice sums with tail estimates.
SumResult L_sum(const Sequence& v, int p, int d, int n, const SumOptions& opts);
SumResult R_sum(const Sequence& v, int p, int d, int n, const SumOptions& opts);
SumResult sigma(const MajorantSeq& r, int n, int s, const SumOptions& opts);
SumResult sigma1(const MajorantSeq& r, int n, int s, int m, const SumOptions& opts);
SumResult sigma2(const MajorantSeq& r, int n, int s, int m, const SumOptions& opts);
SumResult sigma_tilde(const MajorantSeq& r, int n, std::span<const int> deltas, const SumOptions& opts);

/// sum_{j != +-n} 1/|n^2 - j^2| over the lattice of the given step up to `cutoff`.
double inverse_gap_sum(int n, int step, int cutoff);

double rho_tilde(const MajorantSeq& r, int n);
double rho_n(const MajorantSeq& r, int n, double rho_constant);
double eps_n(const MajorantSeq& r, int n);

struct KappaBound {
  double kappa = 0.0;
  double bound64 = 0.0;
  bool valid = false;  // kappa < 1/4
};
KappaBound kappa_and_bound(double rho, double eps);

struct BoundSequences {
  int n = 0;
  double rho_constant = 8.0;
  double r_norm = 0.0;
  double rho_tilde = 0.0;
  double rho = 0.0;
  double eps = 0.0;
  double kappa = 0.0;
  double bound64 = 0.0;
  bool valid = false;
};
BoundSequences bound_sequences(const MajorantSeq& r, int n, double rho_constant = 8.0);

/// Alternative sufficient condition for ||P_n - P_n^0||_{L1->Linf} <= 1/2 at all n >= N.
/// Experimental: its constants are not derived from the other sequences.
struct A6Result {
  double lhs = 0.0;
  bool holds = false;
};
A6Result a6_predicate(const MajorantSeq& r, int N);

enum class Branch { Principal, Negated };

/// Compares entries of K (K V K)^{s+1} K, K = diag((lambda - j^2)^{-1/2}), against the
/// nested sum over j_1..j_s of V(k - j_1) ... V(j_s - m) / prod (lambda - j^2), divided by
/// (lambda - k^2)(lambda - m^2). V(0) carries the mean. Returns the max abs deviation.
/// `branch` picks the square-root branch (Negated flips it on every other index).
double sigma_nested_vs_matrix(const FourierPotential& p, cplx lambda, int s, std::span<const int> indices,
                              Branch branch = Branch::Principal);

enum class VerdictKind { Inequality, Identity, Diagnostic };
std::string_view to_string(VerdictKind kind);

struct Verdict {
  std::string name;
  VerdictKind kind = VerdictKind::Inequality;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;         // rhs - lhs for inequalities, tolerance - |lhs - rhs| for identities
  double tail_estimate = 0.0;  // truncation uncertainty of lhs
  bool passed = true;
  std::string detail;

  /// A passing inequality whose margin is smaller than the truncation tail.
  bool tail_exceeds_margin() const { return kind == VerdictKind::Inequality && tail_estimate > margin; }
};

/// Passes when lhs <= rhs up to a relative rounding allowance of 1e-12.
Verdict inequality(std::string name, double lhs, double rhs, double tail = 0.0, std::string detail = {});
Verdict identity(std::string name, double lhs, double rhs, double tolerance, std::string detail = {});

/// A(n, 0) = sum_{k,m} |first-order residue| over the basis up to `cutoff`, against
/// 4||r||/sqrt(n) + 4 E_n(r). Periodic boundary conditions only.
Verdict A0_bound_check(const FourierPotential& p, BoundaryCondition bc, int n, int cutoff = 0);

struct LemmaOptions {
  int cutoff = 0;  // 0 selects 8n
  int step = 2;
  int s_max = 4;
  int p_max = 4;
  double rho_constant = 8.0;
  std::uint64_t seed = 12345;
  int far_samples = 4;
  bool enforce_tail = false;
  double tail_tolerance = 0.01;
  double identity_tolerance = 1e-12;
};

struct TableEntry {
  int s = 0;
  int m = 0;
  double value = 0.0;
};

struct SeriesReport {
  int n = 0;
  LemmaOptions options;
  BoundSequences sequences;
  std::vector<double> L_plus, L_minus, R_plus, R_minus;  // index p - 1
  std::vector<double> sigma_values;                      // index s - 1
  std::vector<TableEntry> sigma1_table, sigma2_table;
  std::vector<int> sampled_m;
  std::vector<Verdict> verdicts;

  /// True when no inequality or identity verdict failed.
  bool passed() const;
  int failures() const;
};

/// All lemma checks at one n for the couplings v and majorant r.
SeriesReport lemma_suite(const Sequence& v, const MajorantSeq& r, int n, const LemmaOptions& opts = {});
SeriesReport lemma_suite(const FourierPotential& p, int n, const LemmaOptions& opts = {});
/// Uses v = |m| r(m), the largest couplings compatible with r.
SeriesReport lemma_suite(const MajorantSeq& r, int n, const LemmaOptions& opts = {});

}  // namespace hill
