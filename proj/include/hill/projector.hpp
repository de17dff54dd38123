#pragma once

// Riesz projections P_n = (1/2 pi i) \oint_{|z - n^2| = n} (z - L)^{-1} dz of
// a truncated HillMatrix, the free projections P_n^0, block projections S_N
// and the dense-eigensolve oracle used to cross-check them.

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "hill/operator.hpp"

namespace hill {

struct ContourSpec {
  cplx center{};
  double radius = 1.0;
  int nodes = 64;  // initial trapezoid node count; even, >= 16

  /// The circle C_n = {|z - n^2| = n}.
  static ContourSpec circle(int n, int nodes = 64);
  void validate() const;
};

struct ProjectorOptions {
  bool adaptive = true;           // double the node count until converged
  double convergence_tol = 1e-10; // Frobenius change between successive levels
  int max_nodes = 512;
  double guard_fraction = 0.05;   // eigenvalues closer than this * radius to the contour are rejected
  int truncation_factor = 4;      // require half-width >= factor * n
};

struct ProjectionPair {
  int n = 0;
  BoundaryCondition bc = BoundaryCondition::PerPlus;
  BasisSpec basis;
  Eigen::MatrixXcd P;   // quadrature Riesz projection
  Eigen::MatrixXcd P0;  // exact free projection
  Eigen::MatrixXcd B;   // P - P0
  double quad_error_est = 0.0;
  int nodes = 0;
  double guard_distance = 0.0;  // smallest eigenvalue-to-contour distance seen (exact or estimated)

  cplx trace() const { return P.trace(); }
  double idempotency_residual() const { return (P * P - P).norm(); }
  int expected_rank() const { return free_rank(bc); }
};

struct EigenDecomposition {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;
  Eigen::MatrixXcd inverse;  // vectors^{-1}
  bool hermitian = false;
};

EigenDecomposition eigen_decompose(const HillMatrix& H);
Eigen::VectorXcd eigenvalues(const HillMatrix& H);

/// Sum of eigenprojectors for eigenvalues strictly inside |z - center| < radius.
Eigen::MatrixXcd spectral_projector(const EigenDecomposition& eig, cplx center, double radius);

int eigen_count_in_disc(std::span<const cplx> values, int n);
int eigen_count_in_disc(const HillMatrix& H, int n);

/// Smallest candidate n0 such that every candidate n >= n0 has the free disc count
/// (2 for Per+-, 1 for Dir); nullopt when the largest candidate already fails.
std::optional<int> localization_start(std::span<const cplx> values, BoundaryCondition bc,
                                      std::span<const int> candidates);

Eigen::MatrixXcd free_projection(const BasisSpec& basis, int n);

/// `known_eigenvalues`, when given, drives the contour-collision guard exactly;
/// otherwise the guard uses 1/||(z - L)^{-1}||_F at the nodes.
ProjectionPair riesz_projection(const HillMatrix& H, int n, const ContourSpec& contour,
                                const ProjectorOptions& opts = {},
                                std::span<const cplx> known_eigenvalues = {});
ProjectionPair riesz_projection(const HillMatrix& H, int n, const ProjectorOptions& opts = {},
                                std::span<const cplx> known_eigenvalues = {});

/// Closed-form residue of the s = 0 term V_km / ((z - k^2)(z - m^2)) over C_n.
cplx first_order_residue(const Coupling& coupling, int n, int k, int m);
cplx first_order_residue(const FourierPotential& p, BoundaryCondition bc, int n, int k, int m);

/// max_{k,m} |trapezoid quadrature of the s = 0 term - first_order_residue|.
double quadrature_vs_residue_check(const Coupling& coupling, int n, int half_width, int nodes);
/// Same comparison against an arbitrary closed form given by basis index pair (k, m).
double quadrature_vs_residue_check(const Coupling& coupling, int n, int half_width, int nodes,
                                   const std::function<cplx(int, int)>& closed_form);
double quadrature_vs_residue_check(const FourierPotential& p, BoundaryCondition bc, int n,
                                   int half_width, int nodes);

struct RectangleOptions {
  int gauss_order = 16;
  double panel_length = 0.0;  // <= 0 selects N0 (the distance of the real axis to the long sides)
  double guard_fraction = 0.05;
};

/// S_N0 by Gauss-Legendre quadrature over the boundary of
/// R_N0 = {-N0 < Re z < N0^2 + N0, |Im z| < N0}, traversed counterclockwise.
Eigen::MatrixXcd rectangle_projection(const HillMatrix& H, int N0, const RectangleOptions& opts = {},
                                      std::span<const cplx> known_eigenvalues = {});

struct BlockProjection {
  int N0 = 0;
  int N = 0;
  Eigen::MatrixXcd S;       // S_N0 + sum_{N0 < k <= N} P_k
  Eigen::MatrixXcd S_free;  // coordinate projection onto {k : k^2 < N^2 + N}
  std::vector<int> components;
  int expected_dim = 0;

  double idempotency_residual() const { return (S * S - S).norm(); }
};

BlockProjection block_projection(const HillMatrix& H, int N0, int N, const ProjectorOptions& opts = {},
                                 const RectangleOptions& rect = {},
                                 std::span<const cplx> known_eigenvalues = {});

}  // namespace hill
