#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hill/bounds.hpp"
#include "hill/error.hpp"
#include "hill/norms.hpp"
#include "hill/projector.hpp"

namespace py = pybind11;
using namespace hill;

namespace {

std::span<const cplx> as_span(const std::vector<cplx>& v) { return {v.data(), v.size()}; }

py::dict to_dict(const BoundSequences& b) {
  py::dict d;
  d["n"] = b.n;
  d["rho_constant"] = b.rho_constant;
  d["r_norm"] = b.r_norm;
  d["rho_tilde"] = b.rho_tilde;
  d["rho"] = b.rho;
  d["eps"] = b.eps;
  d["kappa"] = b.kappa;
  d["bound64"] = b.bound64;
  d["valid"] = b.valid;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Riesz projections of Hill operators with singular potentials";

  auto error = py::register_exception<Error>(m, "HillError", PyExc_RuntimeError);
  (void)error;

  py::enum_<BoundaryCondition>(m, "BoundaryCondition")
      .value("PerPlus", BoundaryCondition::PerPlus)
      .value("PerMinus", BoundaryCondition::PerMinus)
      .value("Dirichlet", BoundaryCondition::Dirichlet);

  py::class_<FourierPotential>(m, "FourierPotential")
      .def_static(
          "from_coeffs",
          [](cplx v0, const std::vector<std::pair<int, cplx>>& entries, std::optional<int> max_index, bool truncated) {
            return FourierPotential::from_coeffs(v0, entries, max_index, truncated);
          },
          py::arg("v0"), py::arg("coefficients"), py::arg("max_index") = py::none(), py::arg("truncated") = false)
      .def_property_readonly("v0", &FourierPotential::v0)
      .def_property_readonly("max_index", &FourierPotential::max_index)
      .def_property_readonly("truncated", &FourierPotential::truncated)
      .def("w", &FourierPotential::w)
      .def("V", &FourierPotential::V)
      .def("Q", &FourierPotential::Q)
      .def("support", &FourierPotential::support);

  m.def("zero_potential", &zero_potential, py::arg("max_index") = 0);
  m.def("mathieu", &mathieu, py::arg("coupling"), py::arg("max_index") = 2);
  m.def("delta_comb", &delta_comb, py::arg("mass"), py::arg("max_index") = 256);
  m.def("sawtooth", &sawtooth, py::arg("amplitude"), py::arg("max_index") = 256);

  py::class_<HillMatrix>(m, "HillMatrix")
      .def_property_readonly("indices", [](const HillMatrix& H) { return H.basis.indices; })
      .def_property_readonly("bc", [](const HillMatrix& H) { return H.basis.bc; })
      .def_readonly("L", &HillMatrix::L)
      .def_readonly("V", &HillMatrix::Vmat)
      .def_readonly("coverage", &HillMatrix::coverage);

  m.def(
      "assemble", [](BoundaryCondition bc, const FourierPotential& p, int K) { return assemble(bc, p, K); },
      py::arg("bc"), py::arg("potential"), py::arg("K"));
  m.def("eigenvalues", [](const HillMatrix& H) {
    const Eigen::VectorXcd v = eigenvalues(H);
    return std::vector<cplx>(v.data(), v.data() + v.size());
  });
  m.def("eigen_count_in_disc", py::overload_cast<const HillMatrix&, int>(&eigen_count_in_disc), py::arg("H"),
        py::arg("n"));

  py::class_<ProjectionPair>(m, "ProjectionPair")
      .def_readonly("n", &ProjectionPair::n)
      .def_readonly("P", &ProjectionPair::P)
      .def_readonly("P0", &ProjectionPair::P0)
      .def_readonly("B", &ProjectionPair::B)
      .def_readonly("nodes", &ProjectionPair::nodes)
      .def_readonly("quad_error_est", &ProjectionPair::quad_error_est)
      .def("trace", &ProjectionPair::trace)
      .def("idempotency_residual", &ProjectionPair::idempotency_residual);

  m.def(
      "riesz_projection",
      [](const HillMatrix& H, int n, int nodes, const std::vector<cplx>& known) {
        return riesz_projection(H, n, ContourSpec::circle(n, nodes), {}, as_span(known));
      },
      py::arg("H"), py::arg("n"), py::arg("nodes") = 64, py::arg("known_eigenvalues") = std::vector<cplx>{});
  m.def("first_order_residue",
        py::overload_cast<const FourierPotential&, BoundaryCondition, int, int, int>(&first_order_residue),
        py::arg("potential"), py::arg("bc"), py::arg("n"), py::arg("k"), py::arg("m"));
  m.def("quadrature_vs_residue_check",
        py::overload_cast<const FourierPotential&, BoundaryCondition, int, int, int>(&quadrature_vs_residue_check),
        py::arg("potential"), py::arg("bc"), py::arg("n"), py::arg("K"), py::arg("nodes") = 64);

  m.def(
      "bound_sequences",
      [](const FourierPotential& p, int n, double rho_constant) {
        return to_dict(bound_sequences(majorant(p), n, rho_constant));
      },
      py::arg("potential"), py::arg("n"), py::arg("rho_constant") = 8.0);

  py::class_<Verdict>(m, "Verdict")
      .def_readonly("name", &Verdict::name)
      .def_property_readonly("kind", [](const Verdict& v) { return std::string(to_string(v.kind)); })
      .def_readonly("lhs", &Verdict::lhs)
      .def_readonly("rhs", &Verdict::rhs)
      .def_readonly("margin", &Verdict::margin)
      .def_readonly("tail_estimate", &Verdict::tail_estimate)
      .def_readonly("passed", &Verdict::passed)
      .def("__repr__", [](const Verdict& v) {
        return "<Verdict " + v.name + (v.passed ? " passed>" : " failed>");
      });

  py::class_<SeriesReport>(m, "SeriesReport")
      .def_readonly("n", &SeriesReport::n)
      .def_property_readonly("sequences", [](const SeriesReport& r) { return to_dict(r.sequences); })
      .def_readonly("L_plus", &SeriesReport::L_plus)
      .def_readonly("L_minus", &SeriesReport::L_minus)
      .def_readonly("sigma", &SeriesReport::sigma_values)
      .def_readonly("verdicts", &SeriesReport::verdicts)
      .def("passed", &SeriesReport::passed)
      .def("failures", &SeriesReport::failures);

  m.def(
      "lemma_suite",
      [](const FourierPotential& p, int n, int cutoff) {
        LemmaOptions opts;
        opts.cutoff = cutoff;
        return lemma_suite(p, n, opts);
      },
      py::arg("potential"), py::arg("n"), py::arg("cutoff") = 0);

  m.def("sum_abs_B", [](const ProjectionPair& pair) { return pair.B.cwiseAbs().sum(); });
  m.def("spectral_norm", &spectral_norm);
  m.def(
      "equivalence_ratio",
      [](const ProjectionPair& pair, int samples, std::uint64_t seed) {
        EquivalenceOptions opts;
        opts.samples = samples;
        opts.seed = seed;
        const auto rep = equivalence_check(pair, opts);
        py::dict d;
        d["regime_reached"] = rep.regime_reached;
        d["proxy"] = rep.proxy;
        d["max_ratio"] = rep.max_ratio;
        d["bound"] = rep.bound;
        d["passed"] = rep.passed;
        return d;
      },
      py::arg("pair"), py::arg("samples") = 1000, py::arg("seed") = 12345);
}
