#include "hill/operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hill/error.hpp"

namespace hill {

std::string_view to_string(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::PerPlus: return "per+";
    case BoundaryCondition::PerMinus: return "per-";
    case BoundaryCondition::Dirichlet: return "dir";
  }
  return "?";
}

std::optional<BoundaryCondition> parse_boundary_condition(std::string_view text) {
  if (text == "per+" || text == "perplus" || text == "PerPlus") return BoundaryCondition::PerPlus;
  if (text == "per-" || text == "perminus" || text == "PerMinus") return BoundaryCondition::PerMinus;
  if (text == "dir" || text == "dirichlet" || text == "Dirichlet") return BoundaryCondition::Dirichlet;
  return std::nullopt;
}

bool index_matches(BoundaryCondition bc, int n) {
  switch (bc) {
    case BoundaryCondition::PerPlus: return n % 2 == 0;
    case BoundaryCondition::PerMinus: return n % 2 != 0;
    case BoundaryCondition::Dirichlet: return n >= 1;
  }
  return false;
}

int free_rank(BoundaryCondition bc) { return bc == BoundaryCondition::Dirichlet ? 1 : 2; }

int BasisSpec::position(int k) const {
  const auto it = std::lower_bound(indices.begin(), indices.end(), k);
  if (it == indices.end() || *it != k) return -1;
  return static_cast<int>(it - indices.begin());
}

BasisSpec make_basis(BoundaryCondition bc, int half_width) {
  if (half_width < 1) throw Error(Errc::InvalidArgument, "basis half-width must be >= 1");
  BasisSpec basis{bc, half_width, {}};
  switch (bc) {
    case BoundaryCondition::PerPlus:
    case BoundaryCondition::PerMinus: {
      const int first = bc == BoundaryCondition::PerPlus ? 0 : 1;
      for (int k = -half_width; k <= half_width; ++k) {
        if (std::abs(k) % 2 == first) basis.indices.push_back(k);
      }
      break;
    }
    case BoundaryCondition::Dirichlet:
      for (int k = 1; k <= half_width; ++k) basis.indices.push_back(k);
      break;
  }
  return basis;
}

Coupling::Coupling(BoundaryCondition bc, const FourierPotential& p, int max_sine)
    : bc_(bc), pot_(p), source_max_index_(p.max_index()), source_truncated_(p.truncated()) {
  if (bc == BoundaryCondition::Dirichlet) {
    if (max_sine > 0) {
      pot_ = per_to_dir(p, max_sine);
    } else {
      support_ = p.support();
    }
  }
}

cplx Coupling::sine_coefficient(int j) const {
  if (const auto* sine = std::get_if<SinePotential>(&pot_)) return sine->qt(j);
  if (j < 1) return {};
  cplx sum{};
  for (const auto& [k, value] : support_) {
    if (j % 2 == 0 && k != j && k != -j) continue;
    sum += value * exp_sine_integral(k, j);
  }
  return std::numbers::sqrt2 / std::numbers::pi * sum;
}

Coupling::Coupling(BoundaryCondition bc, const SinePotential& p) : bc_(bc), pot_(p) {
  if (bc != BoundaryCondition::Dirichlet) {
    throw Error(Errc::BcMismatch, "sine coefficients only describe the Dirichlet problem");
  }
  source_max_index_ = p.max_index();
  source_truncated_ = p.truncated();
}

cplx Coupling::element(int k, int m) const {
  if (bc_ != BoundaryCondition::Dirichlet) return std::get<FourierPotential>(pot_).V(k - m);
  const int diff = std::abs(k - m);
  cplx value = (static_cast<double>(diff) * sine_coefficient(diff) -
                static_cast<double>(k + m) * sine_coefficient(k + m)) /
               std::numbers::sqrt2;
  if (k == m) value += std::visit([](const auto& p) { return p.v0(); }, pot_);
  return value;
}

double Coupling::coverage(int half_width) const {
  if (!source_truncated_) return 1.0;
  const double needed = 2.0 * half_width;
  return std::min(1.0, source_max_index_ / needed);
}

HillMatrix assemble(const Coupling& coupling, int half_width, const AssemblyOptions& opts) {
  if (half_width < opts.min_half_width) {
    throw Error(Errc::InvalidArgument, "half-width " + std::to_string(half_width) + " below minimum " +
                                           std::to_string(opts.min_half_width));
  }
  const double coverage = coupling.coverage(half_width);
  if (coverage < opts.coverage_floor) {
    throw Error(Errc::InsufficientCoefficients,
                "potential stores " + std::to_string(coverage * 100.0) +
                    "% of the coefficient range the basis needs");
  }

  HillMatrix H;
  H.basis = make_basis(coupling.bc(), half_width);
  H.coverage = coverage;
  const int dim = H.basis.size();
  H.diag0.resize(dim);
  H.Vmat.resize(dim, dim);
  for (int i = 0; i < dim; ++i) {
    const int k = H.basis.indices[static_cast<std::size_t>(i)];
    H.diag0(i) = static_cast<double>(k) * k;
    for (int j = 0; j < dim; ++j) {
      H.Vmat(i, j) = coupling.element(k, H.basis.indices[static_cast<std::size_t>(j)]);
    }
  }
  H.L = H.Vmat;
  H.L.diagonal() += H.diag0.cast<cplx>();
  return H;
}

HillMatrix assemble(BoundaryCondition bc, const FourierPotential& p, int half_width,
                    const AssemblyOptions& opts) {
  const int max_sine = 2 * half_width;
  return assemble(Coupling(bc, p, bc == BoundaryCondition::Dirichlet ? max_sine : 0), half_width, opts);
}

HillMatrix assemble(BoundaryCondition bc, const SinePotential& p, int half_width,
                    const AssemblyOptions& opts) {
  return assemble(Coupling(bc, p), half_width, opts);
}

HillMatrix free_matrix(const BasisSpec& basis) {
  HillMatrix H;
  H.basis = basis;
  const int dim = basis.size();
  H.diag0.resize(dim);
  for (int i = 0; i < dim; ++i) {
    const double k = basis.indices[static_cast<std::size_t>(i)];
    H.diag0(i) = k * k;
  }
  H.Vmat = Eigen::MatrixXcd::Zero(dim, dim);
  H.L = H.diag0.cast<cplx>().asDiagonal();
  return H;
}

}  // namespace hill
