#include "hill/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hill/error.hpp"

namespace hill {

namespace {

using std::numbers::pi;

cplx basis_value(BoundaryCondition bc, int k, double x) {
  if (bc == BoundaryCondition::Dirichlet) return {std::numbers::sqrt2 * std::sin(k * x), 0.0};
  return std::polar(1.0, k * x);
}

void require_grid(int M) {
  if (M < 1024) throw Error(Errc::InvalidArgument, "grid needs at least 1024 points");
}

// Grid values of every basis function: row i is x_i, column j is basis.indices[j].
Eigen::MatrixXcd basis_on_grid(const BasisSpec& basis, int M) {
  const double h = pi / (M - 1);
  Eigen::MatrixXcd G(M, basis.size());
  for (int j = 0; j < basis.size(); ++j) {
    const int k = basis.indices[static_cast<std::size_t>(j)];
    for (int i = 0; i < M; ++i) G(i, j) = basis_value(basis.bc, k, i * h);
  }
  return G;
}

// Orthonormal basis of the column space, dimension from the (real part of the) trace.
Eigen::MatrixXcd range_basis(const Eigen::MatrixXcd& P, int& rank) {
  rank = std::max(1, static_cast<int>(std::lround(P.trace().real())));
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(P, Eigen::ComputeThinU);
  rank = std::min(rank, static_cast<int>(svd.matrixU().cols()));
  return svd.matrixU().leftCols(rank);
}

double ratio(const Eigen::VectorXcd& f, double h) {
  double l1 = 0.0, linf = 0.0;
  const Eigen::Index M = f.size();
  for (Eigen::Index i = 0; i < M; ++i) {
    const double a = std::abs(f(i));
    l1 += (i == 0 || i == M - 1) ? 0.5 * a : a;
    linf = std::max(linf, a);
  }
  l1 *= h / pi;
  return l1 > 0.0 ? linf / l1 : 0.0;
}

double sample_ratios(const Eigen::MatrixXcd& F, int samples, std::uint64_t seed, double h) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double best = 0.0;
  Eigen::VectorXcd c(F.cols());
  for (int t = 0; t < samples; ++t) {
    for (Eigen::Index j = 0; j < c.size(); ++j) c(j) = cplx(normal(rng), normal(rng));
    best = std::max(best, ratio(F * c, h));
  }
  return best;
}

}  // namespace

double basis_sup(BoundaryCondition bc) { return bc == BoundaryCondition::Dirichlet ? std::numbers::sqrt2 : 1.0; }

double spectral_norm(const Eigen::MatrixXcd& B) {
  if (B.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(B);
  return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()(0);
}

DecayRecord decay_record(const ProjectionPair& pair, const BoundSequences& bounds) {
  DecayRecord rec;
  rec.n = pair.n;
  rec.bc = pair.bc;
  rec.sum_abs_B = pair.B.cwiseAbs().sum();
  const double D = basis_sup(pair.bc);
  rec.l1_linf_bound = D * D * rec.sum_abs_B;
  rec.t_n = spectral_norm(pair.B);
  rec.frob = pair.B.norm();
  rec.rho_n = bounds.rho;
  rec.eps_n = bounds.eps;
  rec.kappa_n = bounds.kappa;
  rec.bound64 = bounds.bound64;
  rec.bound_valid = bounds.valid;
  return rec;
}

BariMarkus bari_markus_partial(std::span<const double> t_values) {
  if (t_values.size() < 8) throw Error(Errc::TooFewRecords, "need at least 8 records");
  BariMarkus out;
  double sum = 0.0;
  for (double t : t_values) {
    sum += t * t;
    out.partial_sums.push_back(sum);
  }
  const std::size_t tail = t_values.size() / 4;
  const std::size_t head = t_values.size() - tail;
  const double total = out.partial_sums.back();
  out.tail_share = total > 0.0 ? (total - out.partial_sums[head - 1]) / total : 0.0;
  return out;
}

BariMarkus bari_markus_partial(std::span<const DecayRecord> records) {
  std::vector<double> t;
  t.reserve(records.size());
  for (const auto& rec : records) t.push_back(rec.t_n);
  return bari_markus_partial(t);
}

double GridFunction::x(int i) const { return pi * i / (size() - 1); }

GridFunction synthesize(std::span<const Coefficient> coeffs, BoundaryCondition bc, int M) {
  if (M < 2) throw Error(Errc::InvalidArgument, "grid needs at least 2 points");
  GridFunction f;
  f.values.assign(static_cast<std::size_t>(M), cplx{});
  for (const auto& [k, value] : coeffs) {
    if (bc == BoundaryCondition::Dirichlet ? k < 1 : !index_matches(bc, k)) {
      throw Error(Errc::IndexOutOfBasis, "index " + std::to_string(k) + " is not in the " +
                                             std::string(to_string(bc)) + " basis");
    }
  }
  for (int i = 0; i < M; ++i) {
    const double x = pi * i / (M - 1);
    cplx sum{};
    for (const auto& [k, value] : coeffs) sum += value * basis_value(bc, k, x);
    f.values[static_cast<std::size_t>(i)] = sum;
  }
  return f;
}

GridFunction synthesize(const BasisSpec& basis, const Eigen::VectorXcd& coords, int M) {
  if (coords.size() != basis.size()) throw Error(Errc::InvalidArgument, "coordinate vector does not match basis");
  std::vector<Coefficient> coeffs;
  for (int j = 0; j < basis.size(); ++j) {
    if (coords(j) != cplx{}) coeffs.emplace_back(basis.indices[static_cast<std::size_t>(j)], coords(j));
  }
  return synthesize(coeffs, basis.bc, M);
}

LpNorms lp_norms(const GridFunction& f, Measure measure) {
  const int M = f.size();
  require_grid(M);
  const double h = pi / (M - 1);
  double l1 = 0.0, l2 = 0.0, linf = 0.0;
  for (int i = 0; i < M; ++i) {
    const double a = std::abs(f.values[static_cast<std::size_t>(i)]);
    const double w = (i == 0 || i == M - 1) ? 0.5 : 1.0;
    l1 += w * a;
    l2 += w * a * a;
    linf = std::max(linf, a);
  }
  const double scale = measure == Measure::Normalized ? h / pi : h;
  return {l1 * scale, std::sqrt(l2 * scale), linf};
}

EquivalenceReport equivalence_check(const ProjectionPair& pair, const EquivalenceOptions& opts) {
  require_grid(opts.grid);
  EquivalenceReport rep;
  rep.samples = opts.samples;
  rep.seed = opts.seed;
  rep.bound = opts.bound;
  const double D = basis_sup(pair.bc);
  rep.proxy = D * D * pair.B.cwiseAbs().sum();
  rep.regime_reached = rep.proxy <= opts.regime_threshold;

  const BasisSpec& basis = pair.basis;
  if (basis.size() != pair.P.rows()) throw Error(Errc::InvalidArgument, "projection size does not match its basis");
  const Eigen::MatrixXcd U = range_basis(pair.P, rep.rank);
  const Eigen::MatrixXcd F = basis_on_grid(basis, opts.grid) * U;
  const double h = pi / (opts.grid - 1);
  rep.max_ratio = sample_ratios(F, opts.samples, opts.seed, h);
  if (!rep.regime_reached) {
    rep.note = std::string(to_string(Errc::RegimeNotReached)) + ": proxy " + std::to_string(rep.proxy) + " > " +
               std::to_string(opts.regime_threshold);
    rep.passed = true;
  } else {
    rep.passed = rep.max_ratio <= opts.bound + opts.slack;
  }
  return rep;
}

EquivalenceReport sN_equivalence(const BlockProjection& block, const BasisSpec& basis,
                                 const EquivalenceOptions& opts) {
  require_grid(opts.grid);
  if (block.N < 2) throw Error(Errc::InvalidArgument, "N must be >= 2");
  if (basis.size() != block.S.rows()) throw Error(Errc::InvalidArgument, "block projection does not match basis");
  EquivalenceReport rep;
  rep.samples = opts.samples + 1;
  rep.seed = opts.seed;
  rep.bound = 50.0 * block.N * std::log(static_cast<double>(block.N));

  const Eigen::MatrixXcd U = range_basis(block.S, rep.rank);
  const Eigen::MatrixXcd G = basis_on_grid(basis, opts.grid);
  const double h = pi / (opts.grid - 1);
  rep.max_ratio = sample_ratios(G * U, opts.samples, opts.seed, h);
  // Dirichlet-kernel trial: sum of all free basis functions below the block edge, projected.
  const Eigen::VectorXcd trial = block.S * block.S_free.diagonal();
  rep.max_ratio = std::max(rep.max_ratio, ratio(G * trial, h));
  rep.passed = rep.max_ratio <= rep.bound;
  return rep;
}

}  // namespace hill
