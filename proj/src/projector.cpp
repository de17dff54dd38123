#include "hill/projector.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "hill/error.hpp"

namespace hill {

namespace {

using std::numbers::pi;

bool is_center(BoundaryCondition bc, int n, int k) {
  return bc == BoundaryCondition::Dirichlet ? k == n : (k == n || k == -n);
}

void validate_index(const BasisSpec& basis, int n, int truncation_factor) {
  if (n < 1 || !index_matches(basis.bc, n)) {
    throw Error(Errc::BcMismatch, "n = " + std::to_string(n) + " is not an index of " +
                                      std::string(to_string(basis.bc)));
  }
  if (!basis.contains(n)) {
    throw Error(Errc::IndexOutOfBasis, "n = " + std::to_string(n) + " lies outside the basis");
  }
  if (basis.half_width < truncation_factor * n) {
    throw Error(Errc::TruncationTooSmall, "half-width " + std::to_string(basis.half_width) + " < " +
                                              std::to_string(truncation_factor) + " * " +
                                              std::to_string(n));
  }
}

Eigen::MatrixXcd resolvent(const Eigen::MatrixXcd& L, cplx z) {
  Eigen::MatrixXcd A = -L;
  A.diagonal().array() += z;
  Eigen::MatrixXcd R = A.partialPivLu().inverse();
  if (!R.allFinite()) throw Error(Errc::EigenvalueOnContour, "singular resolvent on the contour");
  return R;
}

// Smallest exact distance from the given eigenvalues to the circle.
double circle_distance(std::span<const cplx> values, cplx center, double radius) {
  double best = std::numeric_limits<double>::infinity();
  for (cplx lambda : values) best = std::min(best, std::abs(std::abs(lambda - center) - radius));
  return best;
}

struct Rectangle {
  double left, right, half_height;

  double boundary_distance(cplx z) const {
    const double x = z.real(), y = z.imag();
    const bool inside = x > left && x < right && std::abs(y) < half_height;
    if (inside) return std::min({x - left, right - x, half_height - std::abs(y)});
    const double dx = std::max({left - x, 0.0, x - right});
    const double dy = std::max(std::abs(y) - half_height, 0.0);
    return std::hypot(dx, dy);
  }
};

}  // namespace

ContourSpec ContourSpec::circle(int n, int nodes) {
  return ContourSpec{cplx(static_cast<double>(n) * n, 0.0), static_cast<double>(n), nodes};
}

void ContourSpec::validate() const {
  if (!(radius > 0.0)) throw Error(Errc::InvalidArgument, "contour radius must be positive");
  if (nodes < 16 || nodes % 2 != 0) throw Error(Errc::InvalidArgument, "node count must be even and >= 16");
}

EigenDecomposition eigen_decompose(const HillMatrix& H) {
  EigenDecomposition out;
  const double scale = std::max(1.0, H.L.cwiseAbs().maxCoeff());
  out.hermitian = (H.L - H.L.adjoint()).cwiseAbs().maxCoeff() <= 1e-13 * scale;
  if (out.hermitian) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H.L);
    out.values = solver.eigenvalues().cast<cplx>();
    out.vectors = solver.eigenvectors();
    out.inverse = out.vectors.adjoint();
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(H.L);
    out.values = solver.eigenvalues();
    out.vectors = solver.eigenvectors();
    out.inverse = out.vectors.partialPivLu().inverse();
  }
  return out;
}

Eigen::VectorXcd eigenvalues(const HillMatrix& H) {
  const double scale = std::max(1.0, H.L.cwiseAbs().maxCoeff());
  if ((H.L - H.L.adjoint()).cwiseAbs().maxCoeff() <= 1e-13 * scale) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(H.L, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cast<cplx>();
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(H.L, false);
  return solver.eigenvalues();
}

Eigen::MatrixXcd spectral_projector(const EigenDecomposition& eig, cplx center, double radius) {
  const Eigen::Index dim = eig.values.size();
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    if (std::abs(eig.values(i) - center) < radius) P += eig.vectors.col(i) * eig.inverse.row(i);
  }
  return P;
}

int eigen_count_in_disc(std::span<const cplx> values, int n) {
  const cplx center(static_cast<double>(n) * n, 0.0);
  return static_cast<int>(std::count_if(values.begin(), values.end(),
                                        [&](cplx z) { return std::abs(z - center) < n; }));
}

int eigen_count_in_disc(const HillMatrix& H, int n) {
  const Eigen::VectorXcd values = eigenvalues(H);
  return eigen_count_in_disc(std::span<const cplx>(values.data(), static_cast<std::size_t>(values.size())), n);
}

std::optional<int> localization_start(std::span<const cplx> values, BoundaryCondition bc,
                                      std::span<const int> candidates) {
  std::vector<int> sorted(candidates.begin(), candidates.end());
  std::sort(sorted.begin(), sorted.end());
  std::optional<int> start;
  for (auto it = sorted.rbegin(); it != sorted.rend(); ++it) {
    if (eigen_count_in_disc(values, *it) != free_rank(bc)) break;
    start = *it;
  }
  return start;
}

Eigen::MatrixXcd free_projection(const BasisSpec& basis, int n) {
  const int dim = basis.size();
  Eigen::MatrixXcd P0 = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (is_center(basis.bc, n, basis.indices[static_cast<std::size_t>(i)])) P0(i, i) = 1.0;
  }
  return P0;
}

ProjectionPair riesz_projection(const HillMatrix& H, int n, const ContourSpec& contour,
                                const ProjectorOptions& opts, std::span<const cplx> known_eigenvalues) {
  contour.validate();
  validate_index(H.basis, n, opts.truncation_factor);

  const double guard = opts.guard_fraction * contour.radius;
  double guard_distance = std::numeric_limits<double>::infinity();
  if (!known_eigenvalues.empty()) {
    guard_distance = circle_distance(known_eigenvalues, contour.center, contour.radius);
    if (guard_distance < guard) {
      throw Error(Errc::EigenvalueOnContour, "eigenvalue within " + std::to_string(guard_distance) +
                                                 " of the contour around n = " + std::to_string(n));
    }
  }

  // sum_j rho e^{i theta_j} R(z_j) over theta_j = 2 pi (j + offset) / q. For self-adjoint L with a
  // real center, R(conj z) = R(z)^* and the lower half of the circle follows from the upper half.
  const bool mirror = contour.center.imag() == 0.0 && (H.L - H.L.adjoint()).norm() <= 1e-14 * H.L.norm();
  auto accumulate = [&](double offset, int q) {
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(H.L.rows(), H.L.cols());
    for (int j = 0; j < q; ++j) {
      const double twice = 2.0 * (j + offset);  // theta_j / (pi / q)
      if (mirror && twice > q) continue;
      const cplx step = std::polar(contour.radius, 2.0 * pi * (j + offset) / q);
      Eigen::MatrixXcd R = resolvent(H.L, contour.center + step);
      if (known_eigenvalues.empty()) {
        const double estimate = 1.0 / R.norm();
        guard_distance = std::min(guard_distance, estimate);
        if (estimate < guard) {
          throw Error(Errc::EigenvalueOnContour, "resolvent norm suggests an eigenvalue within " +
                                                     std::to_string(estimate) + " of the contour around n = " +
                                                     std::to_string(n));
        }
      }
      sum += step * R;
      if (mirror && twice > 0.0 && twice < q) sum += std::conj(step) * R.adjoint();
    }
    return sum;
  };

  int q = contour.nodes / 2;
  Eigen::MatrixXcd total = accumulate(0.0, q);
  Eigen::MatrixXcd previous = total / static_cast<double>(q);
  Eigen::MatrixXcd current;
  double error = 0.0;
  while (true) {
    total += accumulate(0.5, q);
    q *= 2;
    current = total / static_cast<double>(q);
    error = (current - previous).norm();
    if (!opts.adaptive || error < opts.convergence_tol || q >= opts.max_nodes) break;
    previous = current;
  }

  ProjectionPair out;
  out.n = n;
  out.bc = H.basis.bc;
  out.basis = H.basis;
  out.P = std::move(current);
  out.P0 = free_projection(H.basis, n);
  out.B = out.P - out.P0;
  out.quad_error_est = error;
  out.nodes = q;
  out.guard_distance = guard_distance;
  return out;
}

ProjectionPair riesz_projection(const HillMatrix& H, int n, const ProjectorOptions& opts,
                                std::span<const cplx> known_eigenvalues) {
  return riesz_projection(H, n, ContourSpec::circle(n), opts, known_eigenvalues);
}

cplx first_order_residue(const Coupling& coupling, int n, int k, int m) {
  const BoundaryCondition bc = coupling.bc();
  const bool row = is_center(bc, n, k);
  const bool col = is_center(bc, n, m);
  const double nn = static_cast<double>(n) * n;
  if (col && !row) return coupling.element(k, m) / (nn - static_cast<double>(k) * k);
  if (row && !col) return coupling.element(k, m) / (nn - static_cast<double>(m) * m);
  return {};
}

cplx first_order_residue(const FourierPotential& p, BoundaryCondition bc, int n, int k, int m) {
  return first_order_residue(Coupling(bc, p), n, k, m);
}

double quadrature_vs_residue_check(const Coupling& coupling, int n, int half_width, int nodes) {
  return quadrature_vs_residue_check(coupling, n, half_width, nodes,
                                     [&](int k, int m) { return first_order_residue(coupling, n, k, m); });
}

double quadrature_vs_residue_check(const Coupling& coupling, int n, int half_width, int nodes,
                                   const std::function<cplx(int, int)>& closed_form) {
  const BasisSpec basis = make_basis(coupling.bc(), half_width);
  validate_index(basis, n, 4);
  const ContourSpec contour = ContourSpec::circle(n, nodes);
  contour.validate();

  const int dim = basis.size();
  Eigen::MatrixXcd V(dim, dim);
  Eigen::VectorXd sq(dim);
  for (int i = 0; i < dim; ++i) {
    const int k = basis.indices[static_cast<std::size_t>(i)];
    sq(i) = static_cast<double>(k) * k;
    for (int j = 0; j < dim; ++j) V(i, j) = coupling.element(k, basis.indices[static_cast<std::size_t>(j)]);
  }

  // The s = 0 term R0 V R0 has entries V_km / ((z - k^2)(z - m^2)).
  Eigen::MatrixXcd quad = Eigen::MatrixXcd::Zero(dim, dim);
  for (int j = 0; j < nodes; ++j) {
    const cplx step = std::polar(contour.radius, 2.0 * pi * j / nodes);
    const cplx z = contour.center + step;
    const Eigen::VectorXcd r0 = (z - sq.cast<cplx>().array()).inverse().matrix();
    quad += step * (r0.asDiagonal() * V * r0.asDiagonal());
  }
  quad /= static_cast<double>(nodes);

  double worst = 0.0;
  for (int i = 0; i < dim; ++i) {
    const int k = basis.indices[static_cast<std::size_t>(i)];
    for (int j = 0; j < dim; ++j) {
      const int m = basis.indices[static_cast<std::size_t>(j)];
      worst = std::max(worst, std::abs(quad(i, j) - closed_form(k, m)));
    }
  }
  return worst;
}

double quadrature_vs_residue_check(const FourierPotential& p, BoundaryCondition bc, int n, int half_width,
                                   int nodes) {
  return quadrature_vs_residue_check(Coupling(bc, p, bc == BoundaryCondition::Dirichlet ? 2 * half_width : 0),
                                     n, half_width, nodes);
}

Eigen::MatrixXcd rectangle_projection(const HillMatrix& H, int N0, const RectangleOptions& opts,
                                      std::span<const cplx> known_eigenvalues) {
  if (N0 < 1) throw Error(Errc::InvalidArgument, "N0 must be >= 1");
  if (opts.gauss_order != 8 && opts.gauss_order != 16 && opts.gauss_order != 32) {
    throw Error(Errc::InvalidArgument, "gauss_order must be 8, 16 or 32");
  }
  const double n0 = N0;
  const Rectangle rect{-n0, n0 * n0 + n0, n0};
  if (!known_eigenvalues.empty()) {
    for (cplx lambda : known_eigenvalues) {
      const double d = rect.boundary_distance(lambda);
      if (d < opts.guard_fraction * n0) {
        throw Error(Errc::EigenvalueOnContour, "eigenvalue within " + std::to_string(d) +
                                                   " of the rectangle boundary for N0 = " + std::to_string(N0));
      }
    }
  }

  std::vector<double> nodes, weights;
  auto load = [&](const auto& x, const auto& w) {
    nodes.assign(x.begin(), x.end());
    weights.assign(w.begin(), w.end());
  };
  switch (opts.gauss_order) {
    case 8: load(boost::math::quadrature::gauss<double, 8>::abscissa(), boost::math::quadrature::gauss<double, 8>::weights()); break;
    case 16: load(boost::math::quadrature::gauss<double, 16>::abscissa(), boost::math::quadrature::gauss<double, 16>::weights()); break;
    default: load(boost::math::quadrature::gauss<double, 32>::abscissa(), boost::math::quadrature::gauss<double, 32>::weights()); break;
  }
  // Boost stores the nonnegative half of a symmetric rule.
  std::vector<double> x, w;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    x.push_back(nodes[i]);
    w.push_back(weights[i]);
    if (nodes[i] != 0.0) {
      x.push_back(-nodes[i]);
      w.push_back(weights[i]);
    }
  }

  const double panel = opts.panel_length > 0.0 ? opts.panel_length : n0;
  const cplx corners[4] = {{rect.left, -rect.half_height},
                           {rect.right, -rect.half_height},
                           {rect.right, rect.half_height},
                           {rect.left, rect.half_height}};

  Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(H.L.rows(), H.L.cols());
  for (int side = 0; side < 4; ++side) {
    const cplx a = corners[side];
    const cplx b = corners[(side + 1) % 4];
    const int panels = std::max(1, static_cast<int>(std::ceil(std::abs(b - a) / panel - 1e-12)));
    const cplx h = (b - a) / static_cast<double>(panels);
    for (int p = 0; p < panels; ++p) {
      const cplx mid = a + (p + 0.5) * h;
      for (std::size_t i = 0; i < x.size(); ++i) {
        sum += (w[i] * 0.5 * h) * resolvent(H.L, mid + 0.5 * x[i] * h);
      }
    }
  }
  return sum / cplx(0.0, 2.0 * pi);
}

BlockProjection block_projection(const HillMatrix& H, int N0, int N, const ProjectorOptions& opts,
                                 const RectangleOptions& rect, std::span<const cplx> known_eigenvalues) {
  if (N < N0) throw Error(Errc::InvalidArgument, "N must be >= N0");
  BlockProjection out;
  out.N0 = N0;
  out.N = N;
  out.S = rectangle_projection(H, N0, rect, known_eigenvalues);
  for (int k = N0 + 1; k <= N; ++k) {
    if (!index_matches(H.basis.bc, k)) continue;
    out.S += riesz_projection(H, k, opts, known_eigenvalues).P;
    out.components.push_back(k);
  }
  const int dim = H.basis.size();
  const double limit = static_cast<double>(N) * N + N;
  out.S_free = Eigen::MatrixXcd::Zero(dim, dim);
  for (int i = 0; i < dim; ++i) {
    if (H.diag0(i) < limit) {
      out.S_free(i, i) = 1.0;
      ++out.expected_dim;
    }
  }
  return out;
}

}  // namespace hill
