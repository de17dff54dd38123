#include "hill/cli.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "hill/error.hpp"

namespace hill::cli {

namespace {

namespace fs = std::filesystem;

struct Setup {
  FourierPotential potential;
  HillMatrix H;
  Eigen::VectorXcd eigenvalues;
  MajorantSeq r;

  std::span<const cplx> eigs() const {
    return {eigenvalues.data(), static_cast<std::size_t>(eigenvalues.size())};
  }
};

MajorantSeq majorant_for(BoundaryCondition bc, const FourierPotential& p, int half_width) {
  if (bc == BoundaryCondition::Dirichlet) return majorant(per_to_dir(p, 2 * half_width));
  return majorant(p);
}

Setup prepare(const RunConfig& config, BoundaryCondition bc, int half_width) {
  Setup s;
  s.potential = make_potential(config.potential, half_width);
  s.H = assemble(bc, s.potential, half_width);
  s.eigenvalues = eigenvalues(s.H);
  s.r = majorant_for(bc, s.potential, half_width);
  return s;
}

ProjectorOptions projector_options() { return ProjectorOptions{}; }

ProjectionPair project(const Setup& s, int n, int nodes) {
  return riesz_projection(s.H, n, ContourSpec::circle(n, nodes), projector_options(), s.eigs());
}

LemmaOptions lemma_options(const RunConfig& config, BoundaryCondition bc) {
  LemmaOptions opts;
  opts.cutoff = config.cutoff;
  opts.step = bc == BoundaryCondition::Dirichlet ? 1 : 2;
  opts.rho_constant = config.rho_constant;
  opts.seed = config.seed;
  return opts;
}

SeriesReport bounds_report(const RunConfig& config, const Setup& s, BoundaryCondition bc, int n) {
  const LemmaOptions opts = lemma_options(config, bc);
  if (bc == BoundaryCondition::Dirichlet) return lemma_suite(s.r, n, opts);
  SeriesReport rep = lemma_suite(s.potential, n, opts);
  rep.verdicts.push_back(A0_bound_check(s.potential, bc, n, config.cutoff));
  return rep;
}

fs::path output(const RunConfig& config, const std::string& name) { return fs::path(config.out) / name; }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

int cmd_spectrum(const RunConfig& config, std::ostream& log) {
  config.validate();
  const Setup s = prepare(config, config.bc, config.half_width());

  std::vector<cplx> sorted(s.eigenvalues.data(), s.eigenvalues.data() + s.eigenvalues.size());
  std::sort(sorted.begin(), sorted.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  std::string values_csv = csv_preamble(config) + "index,re,im\n";
  json values = json::array();
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    values_csv += std::to_string(i) + ',' + format_double(sorted[i].real()) + ',' + format_double(sorted[i].imag()) + '\n';
    values.push_back({sorted[i].real(), sorted[i].imag()});
  }

  const int expected = free_rank(config.bc);
  std::string counts_csv = csv_preamble(config) + "n,count,expected,ok\n";
  json counts = json::array();
  int mismatches = 0;
  for (int n : config.n_values()) {
    const int count = eigen_count_in_disc(s.eigs(), n);
    const bool ok = count == expected;
    mismatches += ok ? 0 : 1;
    counts_csv += std::to_string(n) + ',' + std::to_string(count) + ',' + std::to_string(expected) + ',' +
                  (ok ? "1" : "0") + '\n';
    counts.push_back({{"n", n}, {"count", count}, {"expected", expected}, {"ok", ok}});
  }

  json doc = json_envelope(config);
  doc["eigenvalues"] = values;
  doc["disc_counts"] = counts;
  doc["passed"] = mismatches == 0;
  write_text(output(config, "spectrum_eigenvalues.csv"), values_csv);
  write_text(output(config, "spectrum_counts.csv"), counts_csv);
  write_text(output(config, "spectrum.json"), dump(doc));
  log << "spectrum: " << sorted.size() << " eigenvalues, " << mismatches << " disc-count mismatches\n";
  return mismatches == 0 ? kPass : kVerdictFailure;
}

int cmd_decay(const RunConfig& config, std::ostream& log, bool dump_matrices) {
  config.validate();
  const Setup s = prepare(config, config.bc, config.half_width());

  std::vector<DecayRecord> records;
  json projections = json::array();
  json errors = json::array();
  int inconsistent = 0;
  for (int n : config.n_values()) {
    try {
      const ProjectionPair pair = project(s, n, config.nodes);
      const DecayRecord rec = decay_record(pair, bound_sequences(s.r, n, config.rho_constant));
      if (rec.bound_valid && rec.sum_abs_B > rec.bound64) ++inconsistent;
      records.push_back(rec);
      projections.push_back(projection_metadata(pair));
      if (dump_matrices) {
        write_matrix_binary(output(config, "B_n" + std::to_string(n) + ".bin"), pair.basis, pair.B);
      }
    } catch (const Error& e) {
      errors.push_back({{"n", n}, {"error", std::string(to_string(e.code()))}, {"message", e.what()}});
      log << "decay: n = " << n << " skipped: " << e.what() << '\n';
    }
  }

  std::string csv = csv_preamble(config) + std::string(kDecayColumns) + '\n';
  json rows = json::array();
  for (const auto& rec : records) {
    csv += decay_csv_row(rec) + '\n';
    rows.push_back(to_json(rec));
  }
  json doc = json_envelope(config);
  doc["columns"] = kDecayColumns;
  doc["records"] = rows;
  doc["projections"] = projections;
  doc["errors"] = errors;
  doc["bound_violations"] = inconsistent;
  if (records.size() >= 8) {
    const BariMarkus bm = bari_markus_partial(records);
    doc["bari_markus"] = {{"partial_sums", bm.partial_sums}, {"tail_share", bm.tail_share}};
  }
  write_text(output(config, "decay.csv"), csv);
  write_text(output(config, "decay.json"), dump(doc));
  log << "decay: " << records.size() << " records, " << errors.size() << " errors, " << inconsistent
      << " bound violations\n";
  return errors.empty() && inconsistent == 0 ? kPass : kVerdictFailure;
}

int cmd_bounds(const RunConfig& config, std::ostream& log) {
  config.validate();
  const Setup s = prepare(config, config.bc, config.half_width());

  std::string csv = csv_preamble(config) + "n,check,kind,lhs,rhs,margin,tail_estimate,passed\n";
  json reports = json::array();
  int failures = 0;
  auto row = [&](int n, const Verdict& v) {
    std::string name = v.name;
    std::replace(name.begin(), name.end(), ',', ';');
    csv += std::to_string(n) + ",\"" + name + "\"," + std::string(to_string(v.kind)) + ',' + format_double(v.lhs) +
           ',' + format_double(v.rhs) + ',' + format_double(v.margin) + ',' + format_double(v.tail_estimate) + ',' +
           (v.passed ? "1" : "0") + '\n';
  };
  for (int n : config.n_values()) {
    try {
      const SeriesReport rep = bounds_report(config, s, config.bc, n);
      failures += rep.failures();
      for (const auto& v : rep.verdicts) row(n, v);
      reports.push_back(to_json(rep));
    } catch (const Error& e) {
      Verdict v = inequality(std::string(to_string(e.code())), 1.0, 0.0);
      v.detail = e.what();
      ++failures;
      row(n, v);
      reports.push_back({{"n", n}, {"verdicts", json::array({to_json(v)})}, {"passed", false}});
    }
  }
  json doc = json_envelope(config);
  doc["reports"] = reports;
  doc["failures"] = failures;
  write_text(output(config, "bounds.csv"), csv);
  write_text(output(config, "bounds.json"), dump(doc));
  log << "bounds: " << reports.size() << " reports, " << failures << " failed checks\n";
  return failures == 0 ? kPass : kVerdictFailure;
}

int cmd_lpnorms(const RunConfig& config, std::ostream& log) {
  config.validate();
  const Setup s = prepare(config, config.bc, config.half_width());
  EquivalenceOptions eq;
  eq.seed = config.seed;

  std::string csv = csv_preamble(config) + "check,index,rank,proxy,regime_reached,max_ratio,bound,passed\n";
  json items = json::array();
  int failures = 0;
  auto record = [&](const std::string& check, int index, const EquivalenceReport& rep) {
    failures += rep.passed ? 0 : 1;
    csv += check + ',' + std::to_string(index) + ',' + std::to_string(rep.rank) + ',' + format_double(rep.proxy) + ',' +
           (rep.regime_reached ? "1" : "0") + ',' + format_double(rep.max_ratio) + ',' + format_double(rep.bound) +
           ',' + (rep.passed ? "1" : "0") + '\n';
    json j = to_json(rep);
    j["check"] = check;
    j["index"] = index;
    items.push_back(j);
  };
  auto failure = [&](const std::string& check, int index, const Error& e) {
    ++failures;
    csv += check + ',' + std::to_string(index) + ",0,0,0,0,0,0\n";
    items.push_back({{"check", check}, {"index", index}, {"error", std::string(to_string(e.code()))},
                     {"message", e.what()}});
  };

  for (int n : config.n_values()) {
    try {
      record("projection", n, equivalence_check(project(s, n, config.nodes), eq));
    } catch (const Error& e) {
      failure("projection", n, e);
    }
  }

  std::vector<int> candidates;
  for (int n = 1; n <= config.n_max; ++n) {
    if (index_matches(config.bc, n)) candidates.push_back(n);
  }
  const auto start = localization_start(s.eigs(), config.bc, candidates);
  const int N0 = std::max(1, start.value_or(config.n_max) - 2);
  std::vector<int> block_sizes{config.n_min, config.n_max};
  block_sizes.erase(std::unique(block_sizes.begin(), block_sizes.end()), block_sizes.end());
  for (int N : block_sizes) {
    if (N <= N0) continue;
    try {
      const BlockProjection block = block_projection(s.H, N0, N, projector_options(), {}, s.eigs());
      EquivalenceReport rep = sN_equivalence(block, s.H.basis, eq);
      rep.note = "N0 = " + std::to_string(N0);
      record("block", N, rep);
    } catch (const Error& e) {
      failure("block", N, e);
    }
  }

  json doc = json_envelope(config);
  doc["checks"] = items;
  doc["N0"] = N0;
  doc["failures"] = failures;
  write_text(output(config, "lpnorms.csv"), csv);
  write_text(output(config, "lpnorms.json"), dump(doc));
  log << "lpnorms: " << items.size() << " checks, " << failures << " failed\n";
  return failures == 0 ? kPass : kVerdictFailure;
}

int cmd_verify(const RunConfig& config, std::ostream& log) {
  config.validate();
  constexpr int kHalfWidth = 64;
  struct Row {
    std::string check;
    std::string bc;
    int n;
    double value;
    double tolerance;
    bool passed;
  };
  std::vector<Row> rows;
  auto add = [&](std::string check, BoundaryCondition bc, int n, double value, double tol, bool passed) {
    rows.push_back({std::move(check), std::string(to_string(bc)), n, value, tol, passed});
  };
  auto at_most = [&](std::string check, BoundaryCondition bc, int n, double value, double tol) {
    add(std::move(check), bc, n, value, tol, value <= tol);
  };

  for (BoundaryCondition bc : {BoundaryCondition::PerPlus, BoundaryCondition::PerMinus, BoundaryCondition::Dirichlet}) {
    const std::vector<int> ns = bc == BoundaryCondition::PerMinus ? std::vector<int>{9, 13, 15}
                                                                  : std::vector<int>{8, 12, 16};
    try {
      const Setup s = prepare(config, bc, kHalfWidth);
      const Coupling coupling(bc, s.potential, bc == BoundaryCondition::Dirichlet ? 2 * kHalfWidth : 0);
      const EigenDecomposition eig = eigen_decompose(s.H);
      std::vector<Eigen::MatrixXcd> projections;
      for (int n : ns) {
        const double scale = config.inject_fault == "residue" ? 1.001 : 1.0;
        at_most("residue", bc, n,
                quadrature_vs_residue_check(coupling, n, kHalfWidth, config.nodes,
                                            [&](int k, int m) { return scale * first_order_residue(coupling, n, k, m); }),
                1e-10);
        const ProjectionPair pair = project(s, n, config.nodes);
        const int rank = free_rank(bc);
        at_most("idempotency", bc, n, pair.idempotency_residual(), 1e-8);
        at_most("trace", bc, n, std::abs(pair.trace() - cplx(rank, 0.0)), 1e-6);
        const cplx center(static_cast<double>(n) * n, 0.0);
        at_most("eigen_agreement", bc, n, (pair.P - spectral_projector(eig, center, n)).norm(), 1e-7);
        const int count = eigen_count_in_disc(s.eigs(), n);
        add("localization", bc, n, count, rank, count == rank);
        const DecayRecord rec = decay_record(pair, bound_sequences(s.r, n, config.rho_constant));
        add("bound_consistency", bc, n, rec.sum_abs_B, rec.bound64, !rec.bound_valid || rec.sum_abs_B <= rec.bound64);
        add("norm_chain", bc, n, rec.t_n, rec.frob,
            rec.t_n <= rec.frob * (1 + 1e-12) && rec.frob <= rec.sum_abs_B * (1 + 1e-12));
        projections.push_back(pair.P);
        if (n == ns.back()) {
          EquivalenceOptions eq;
          eq.seed = config.seed;
          eq.samples = 200;
          const EquivalenceReport rep = equivalence_check(pair, eq);
          add("equivalence", bc, n, rep.max_ratio, rep.bound + eq.slack, rep.passed);
        }
      }
      double orth = 0.0;
      for (std::size_t i = 0; i < projections.size(); ++i) {
        for (std::size_t j = i + 1; j < projections.size(); ++j) {
          orth = std::max(orth, (projections[i] * projections[j]).norm());
        }
      }
      at_most("orthogonality", bc, ns.front(), orth, 1e-7);
      const int mid = ns[1];
      LemmaOptions lo = lemma_options(config, bc);
      lo.cutoff = 0;
      const SeriesReport rep = bc == BoundaryCondition::Dirichlet ? lemma_suite(s.r, mid, lo)
                                                                  : lemma_suite(s.potential, mid, lo);
      add("lemma_suite", bc, mid, rep.failures(), 0, rep.passed());
    } catch (const Error& e) {
      add(std::string("error: ") + std::string(to_string(e.code())), bc, 0, 1, 0, false);
      log << "verify: " << to_string(bc) << ": " << e.what() << '\n';
    }
  }

  std::string csv = csv_preamble(config) + "check,bc,n,value,tolerance,passed\n";
  json items = json::array();
  int failures = 0;
  for (const auto& r : rows) {
    failures += r.passed ? 0 : 1;
    csv += r.check + ',' + r.bc + ',' + std::to_string(r.n) + ',' + format_double(r.value) + ',' +
           format_double(r.tolerance) + ',' + (r.passed ? "1" : "0") + '\n';
    items.push_back({{"check", r.check}, {"bc", r.bc}, {"n", r.n}, {"value", r.value}, {"tolerance", r.tolerance},
                     {"passed", r.passed}});
  }
  json doc = json_envelope(config);
  doc["half_width"] = kHalfWidth;
  doc["checks"] = items;
  doc["failures"] = failures;
  write_text(output(config, "verify.csv"), csv);
  write_text(output(config, "verify.json"), dump(doc));
  log << "verify: " << rows.size() << " checks, " << failures << " failed\n";
  return failures == 0 ? kPass : kVerdictFailure;
}

}  // namespace hill::cli
