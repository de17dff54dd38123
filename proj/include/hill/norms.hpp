#pragma once

// Norms of the deviation matrix B(n) = P_n - P_n^0, grid synthesis of
// functions from basis coordinates, and L1/Linf equivalence checks on the
// ranges of P_n and S_N.

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hill/bounds.hpp"
#include "hill/projector.hpp"

namespace hill {

/// sup_{x,k} |e_k(x)|: 1 for e^{ikx}, sqrt(2) for sqrt(2) sin kx.
double basis_sup(BoundaryCondition bc);

struct DecayRecord {
  int n = 0;
  BoundaryCondition bc = BoundaryCondition::PerPlus;
  double sum_abs_B = 0.0;
  double l1_linf_bound = 0.0;  // basis_sup^2 * sum_abs_B
  double t_n = 0.0;            // largest singular value of B
  double frob = 0.0;
  double rho_n = 0.0;
  double eps_n = 0.0;
  double kappa_n = 0.0;
  double bound64 = 0.0;
  bool bound_valid = false;
};

DecayRecord decay_record(const ProjectionPair& pair, const BoundSequences& bounds);

double spectral_norm(const Eigen::MatrixXcd& B);

struct BariMarkus {
  std::vector<double> partial_sums;  // cumulative sums of t_n^2
  double tail_share = 0.0;           // last-quarter sum / total (0 when the total vanishes)
};

BariMarkus bari_markus_partial(std::span<const double> t_values);
BariMarkus bari_markus_partial(std::span<const DecayRecord> records);

struct GridFunction {
  std::vector<cplx> values;  // at x_i = pi i / (M - 1), i = 0..M-1

  int size() const { return static_cast<int>(values.size()); }
  double x(int i) const;
};

/// Pointwise sum of coefficient * basis function on M points of [0, pi].
GridFunction synthesize(std::span<const Coefficient> coeffs, BoundaryCondition bc, int M = 8192);
GridFunction synthesize(const BasisSpec& basis, const Eigen::VectorXcd& coords, int M = 8192);

/// Lebesgue: dx on [0, pi]. Normalized: dx / pi, the measure that makes the basis orthonormal.
enum class Measure { Lebesgue, Normalized };

struct LpNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

/// Composite trapezoid for L1 and L2, grid maximum for Linf. Requires M >= 1024.
LpNorms lp_norms(const GridFunction& f, Measure measure = Measure::Lebesgue);

struct EquivalenceOptions {
  int samples = 1000;
  std::uint64_t seed = 12345;
  int grid = 8192;
  double bound = 3.0;            // Linf <= bound * L1 (normalized measure)
  double slack = 0.05;
  double regime_threshold = 0.5; // basis_sup^2 * sum|B| must not exceed this
};

struct EquivalenceReport {
  bool regime_reached = true;
  double proxy = 0.0;  // basis_sup^2 * sum|B| (projection checks only)
  int rank = 0;
  int samples = 0;
  std::uint64_t seed = 0;
  double max_ratio = 0.0;
  double bound = 0.0;
  bool passed = true;  // max_ratio <= bound, or regime not reached
  std::string note;
};

/// Random combinations of a basis of Ran P, normalized in L1, checked against bound + slack.
EquivalenceReport equivalence_check(const ProjectionPair& pair, const EquivalenceOptions& opts = {});

/// Same for Ran S_N against 50 N ln N, with the projected Dirichlet-kernel trial added.
EquivalenceReport sN_equivalence(const BlockProjection& block, const BasisSpec& basis,
                                 const EquivalenceOptions& opts = {});

}  // namespace hill
