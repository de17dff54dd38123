#pragma once

// Truncated Fourier-basis matrices of L_bc = -d^2/dx^2 + v and of the free
// operator, for bc in {Per+, Per-, Dir}.
//
// Bases (orthonormal for the measure dx/pi on [0, pi]):
//   Per+ : e^{ikx}, k in 2Z,      |k| <= K
//   Per- : e^{ikx}, k in 1 + 2Z,  |k| <= K
//   Dir  : sqrt(2) sin(kx),       1 <= k <= K

#include <Eigen/Dense>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "hill/potential.hpp"

namespace hill {

enum class BoundaryCondition { PerPlus, PerMinus, Dirichlet };

std::string_view to_string(BoundaryCondition bc);
std::optional<BoundaryCondition> parse_boundary_condition(std::string_view text);

/// True when n belongs to the index set of bc (parity for Per+-, n >= 1 for Dir).
bool index_matches(BoundaryCondition bc, int n);
/// Dimension of the free spectral subspace at n: 2 for Per+-, 1 for Dir.
int free_rank(BoundaryCondition bc);

struct BasisSpec {
  BoundaryCondition bc = BoundaryCondition::PerPlus;
  int half_width = 0;
  std::vector<int> indices;  // sorted ascending

  int size() const { return static_cast<int>(indices.size()); }
  /// Position of index k in `indices`, or -1.
  int position(int k) const;
  bool contains(int k) const { return position(k) >= 0; }
};

BasisSpec make_basis(BoundaryCondition bc, int half_width);

struct HillMatrix {
  BasisSpec basis;
  Eigen::MatrixXcd L;      // diag0 + Vmat
  Eigen::VectorXd diag0;   // k^2
  Eigen::MatrixXcd Vmat;   // <v e_m, e_k> at row k, column m
  double coverage = 1.0;   // fraction of required coefficient range that is stored
};

/// Matrix elements <v e_m, e_k> of the potential in the bc basis.
class Coupling {
 public:
  /// Per+-: uses V(k - m). Dir: converts to sine coefficients up to `max_sine`
  /// once; with max_sine = 0 each sine coefficient is evaluated exactly on demand.
  Coupling(BoundaryCondition bc, const FourierPotential& p, int max_sine = 0);
  /// Dir only; Per+- with sine data is a BcMismatch.
  Coupling(BoundaryCondition bc, const SinePotential& p);

  BoundaryCondition bc() const { return bc_; }
  cplx element(int k, int m) const;
  /// Stored fraction of the coefficient range needed by a basis of half-width K.
  double coverage(int half_width) const;

 private:
  BoundaryCondition bc_;
  cplx sine_coefficient(int j) const;

  std::variant<FourierPotential, SinePotential> pot_;
  std::vector<Coefficient> support_;  // Dir from Fourier data without a sine cap
  int source_max_index_ = 0;
  bool source_truncated_ = false;
};

struct AssemblyOptions {
  double coverage_floor = 0.5;
  int min_half_width = 8;
};

HillMatrix assemble(const Coupling& coupling, int half_width, const AssemblyOptions& opts = {});
HillMatrix assemble(BoundaryCondition bc, const FourierPotential& p, int half_width,
                    const AssemblyOptions& opts = {});
HillMatrix assemble(BoundaryCondition bc, const SinePotential& p, int half_width,
                    const AssemblyOptions& opts = {});

HillMatrix free_matrix(const BasisSpec& basis);

}  // namespace hill
