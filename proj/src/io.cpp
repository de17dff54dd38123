#include "hill/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "hill/error.hpp"

namespace hill {

static_assert(std::endian::native == std::endian::little, "binary dumps assume a little-endian host");

namespace {

constexpr char kMagic[8] = {'H', 'I', 'L', 'L', 'M', 'A', 'T', '1'};

double number(const json& j, const char* key) {
  if (!j.at(key).is_number()) throw Error(Errc::Config, std::string("'") + key + "' must be a number");
  return j.at(key).get<double>();
}

int integer(const json& j, const char* key) {
  if (!j.at(key).is_number_integer()) throw Error(Errc::Config, std::string("'") + key + "' must be an integer");
  return j.at(key).get<int>();
}

const char* parameter_name(const std::string& kind) {
  if (kind == "mathieu") return "coupling";
  if (kind == "delta_comb") return "mass";
  if (kind == "sawtooth") return "amplitude";
  return nullptr;
}

}  // namespace

json PotentialSpec::to_json() const {
  json j{{"kind", kind}};
  if (const char* name = parameter_name(kind)) j[name] = parameter;
  if (max_index) j["max_index"] = *max_index;
  if (kind == "custom") {
    j["v0"] = {v0.real(), v0.imag()};
    json coeffs = json::array();
    for (const auto& [m, value] : coefficients) coeffs.push_back({m, value.real(), value.imag()});
    j["coefficients"] = coeffs;
  }
  return j;
}

PotentialSpec potential_spec_from_json(const json& j) {
  if (!j.is_object()) throw Error(Errc::Config, "potential must be a JSON object");
  PotentialSpec spec;
  if (!j.contains("kind") || !j.at("kind").is_string()) throw Error(Errc::Config, "potential needs a string 'kind'");
  spec.kind = j.at("kind").get<std::string>();
  const char* name = parameter_name(spec.kind);
  if (spec.kind != "zero" && spec.kind != "custom" && name == nullptr) {
    throw Error(Errc::Config, "unknown potential kind '" + spec.kind + "'");
  }
  for (const auto& [key, value] : j.items()) {
    const bool known = key == "kind" || key == "max_index" || (name && key == name) ||
                       (spec.kind == "custom" && (key == "v0" || key == "coefficients"));
    if (!known) throw Error(Errc::Config, "unknown potential key '" + key + "'");
  }
  if (name) spec.parameter = j.contains(name) ? number(j, name) : 1.0;
  if (j.contains("max_index")) spec.max_index = integer(j, "max_index");
  if (spec.kind == "custom") {
    if (j.contains("v0")) {
      const json& v0 = j.at("v0");
      if (v0.is_number()) {
        spec.v0 = v0.get<double>();
      } else if (v0.is_array() && v0.size() == 2) {
        spec.v0 = {v0[0].get<double>(), v0[1].get<double>()};
      } else {
        throw Error(Errc::Config, "'v0' must be a number or [re, im]");
      }
    }
    if (!j.contains("coefficients") || !j.at("coefficients").is_array()) {
      throw Error(Errc::Config, "custom potential needs a 'coefficients' array of [m, re, im]");
    }
    for (const json& row : j.at("coefficients")) {
      if (!row.is_array() || row.size() != 3 || !row[0].is_number_integer()) {
        throw Error(Errc::Config, "coefficient entries must be [m, re, im] with integer m");
      }
      spec.coefficients.emplace_back(row[0].get<int>(), cplx(row[1].get<double>(), row[2].get<double>()));
    }
  }
  return spec;
}

PotentialSpec parse_potential_spec(std::string_view text) {
  const std::string s(text);
  const auto colon = s.find(':');
  const std::string kind = s.substr(0, colon);
  if (kind == "zero" || parameter_name(kind)) {
    PotentialSpec spec;
    spec.kind = kind;
    if (colon != std::string::npos) {
      if (kind == "zero") throw Error(Errc::Config, "zero potential takes no parameter");
      try {
        std::size_t used = 0;
        spec.parameter = std::stod(s.substr(colon + 1), &used);
        if (used != s.size() - colon - 1) throw std::invalid_argument("trailing text");
      } catch (const std::exception&) {
        throw Error(Errc::Config, "bad potential parameter in '" + s + "'");
      }
    }
    return spec;
  }
  if (std::filesystem::exists(s)) return potential_spec_from_json(read_json_file(s));
  throw Error(Errc::Config, "'" + s + "' is neither a gallery potential nor a readable file");
}

FourierPotential make_potential(const PotentialSpec& spec, int half_width) {
  try {
    if (spec.kind == "zero") return zero_potential(spec.max_index.value_or(2));
    if (spec.kind == "mathieu") return mathieu(spec.parameter, spec.max_index.value_or(2));
    if (spec.kind == "delta_comb") return delta_comb(spec.parameter, spec.max_index.value_or(4 * half_width));
    if (spec.kind == "sawtooth") return sawtooth(spec.parameter, spec.max_index.value_or(4 * half_width));
    if (spec.kind == "custom") return FourierPotential::from_coeffs(spec.v0, spec.coefficients, spec.max_index);
  } catch (const Error& e) {
    if (e.code() == Errc::InvalidArgument) throw Error(Errc::Config, e.what());
    throw;
  }
  throw Error(Errc::Config, "unknown potential kind '" + spec.kind + "'");
}

std::vector<int> RunConfig::n_values() const {
  std::vector<int> out;
  for (int n = n_min; n <= n_max; ++n) {
    if (index_matches(bc, n)) out.push_back(n);
  }
  return out;
}

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(Errc::Config, msg); };
  if (n_min < 2) fail("n_min must be >= 2");
  if (n_max < n_min) fail("n_max must be >= n_min");
  if (!index_matches(bc, n_min) || !index_matches(bc, n_max)) {
    fail("n-range [" + std::to_string(n_min) + ", " + std::to_string(n_max) + "] does not match the parity of " +
         std::string(to_string(bc)));
  }
  if (half_width() < 4 * n_max) fail("K must be >= 4 * n_max = " + std::to_string(4 * n_max));
  if (nodes < 16 || nodes % 2 != 0 || nodes > 512) fail("nodes must be even and in [16, 512]");
  if (!(rho_constant > 0.0)) fail("rho_constant must be positive");
  if (cutoff != 0 && cutoff < 8 * n_max) fail("cutoff must be 0 (auto) or >= 8 * n_max");
  if (!inject_fault.empty() && inject_fault != "residue") fail("unknown fault '" + inject_fault + "'");
}

json RunConfig::to_json() const {
  json j{{"potential", potential.to_json()},
         {"bc", std::string(to_string(bc))},
         {"K", half_width()},
         {"n_min", n_min},
         {"n_max", n_max},
         {"nodes", nodes},
         {"rho_constant", rho_constant},
         {"cutoff", cutoff},
         {"seed", seed}};
  if (!inject_fault.empty()) j["inject_fault"] = inject_fault;
  return j;
}

RunConfig apply_config_json(const json& j, RunConfig base) {
  if (!j.is_object()) throw Error(Errc::Config, "config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "potential") {
      base.potential = value.is_string() ? parse_potential_spec(value.get<std::string>())
                                         : potential_spec_from_json(value);
    } else if (key == "bc") {
      const auto bc = value.is_string() ? parse_boundary_condition(value.get<std::string>()) : std::nullopt;
      if (!bc) throw Error(Errc::Config, "bc must be one of per+, per-, dir");
      base.bc = *bc;
    } else if (key == "K") {
      base.K = integer(j, "K");
    } else if (key == "n_min") {
      base.n_min = integer(j, "n_min");
    } else if (key == "n_max") {
      base.n_max = integer(j, "n_max");
    } else if (key == "nodes") {
      base.nodes = integer(j, "nodes");
    } else if (key == "rho_constant") {
      base.rho_constant = number(j, "rho_constant");
    } else if (key == "cutoff") {
      base.cutoff = integer(j, "cutoff");
    } else if (key == "seed") {
      if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
        throw Error(Errc::Config, "seed must be a nonnegative integer");
      }
      base.seed = value.get<std::uint64_t>();
    } else if (key == "out") {
      if (!value.is_string()) throw Error(Errc::Config, "out must be a string");
      base.out = value.get<std::string>();
    } else {
      throw Error(Errc::Config, "unknown config key '" + key + "'");
    }
  }
  return base;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(Errc::Config, path.string() + ": " + e.what());
  }
}

std::string format_double(double value) {
  char buf[32];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

std::string csv_preamble(const RunConfig& config) {
  return "# " + std::string(kToolName) + " " + std::string(kVersion) + "\n# config: " + config.to_json().dump() +
         "\n";
}

json json_envelope(const RunConfig& config) {
  return json{{"tool", kToolName}, {"version", kVersion}, {"config", config.to_json()}};
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(Errc::Io, "write failed for " + path.string());
}

std::string decay_csv_row(const DecayRecord& rec) {
  std::ostringstream row;
  row << rec.n << ',' << to_string(rec.bc) << ',' << format_double(rec.sum_abs_B) << ','
      << format_double(rec.l1_linf_bound) << ',' << format_double(rec.t_n) << ',' << format_double(rec.frob) << ','
      << format_double(rec.rho_n) << ',' << format_double(rec.eps_n) << ',' << format_double(rec.kappa_n) << ','
      << format_double(rec.bound64) << ',' << (rec.bound_valid ? 1 : 0);
  return row.str();
}

json to_json(const DecayRecord& rec) {
  return json{{"n", rec.n},
              {"bc", std::string(to_string(rec.bc))},
              {"sum_abs_B", rec.sum_abs_B},
              {"l1_linf_bound", rec.l1_linf_bound},
              {"t_n", rec.t_n},
              {"frob", rec.frob},
              {"rho_n", rec.rho_n},
              {"eps_n", rec.eps_n},
              {"kappa_n", rec.kappa_n},
              {"bound64", rec.bound64},
              {"bound_valid", rec.bound_valid}};
}

json to_json(const BoundSequences& seq) {
  return json{{"n", seq.n},          {"rho_constant", seq.rho_constant},
              {"r_norm", seq.r_norm}, {"rho_tilde", seq.rho_tilde},
              {"rho_n", seq.rho},     {"eps_n", seq.eps},
              {"kappa_n", seq.kappa}, {"bound64", seq.bound64},
              {"bound_valid", seq.valid}};
}

json to_json(const Verdict& v) {
  json j{{"name", v.name},
         {"kind", std::string(to_string(v.kind))},
         {"lhs", v.lhs},
         {"rhs", v.rhs},
         {"margin", v.margin},
         {"tail_estimate", v.tail_estimate},
         {"passed", v.passed},
         {"tail_exceeds_margin", v.tail_exceeds_margin()}};
  if (!v.detail.empty()) j["detail"] = v.detail;
  return j;
}

json to_json(const SeriesReport& rep) {
  const auto& o = rep.options;
  json tables{{"L_plus", rep.L_plus},
              {"L_minus", rep.L_minus},
              {"R_plus", rep.R_plus},
              {"R_minus", rep.R_minus},
              {"sigma", rep.sigma_values},
              {"sampled_m", rep.sampled_m}};
  json s1 = json::array(), s2 = json::array();
  for (const auto& e : rep.sigma1_table) s1.push_back({{"s", e.s}, {"m", e.m}, {"value", e.value}});
  for (const auto& e : rep.sigma2_table) s2.push_back({{"s", e.s}, {"m", e.m}, {"value", e.value}});
  tables["sigma1"] = s1;
  tables["sigma2"] = s2;
  json verdicts = json::array();
  for (const auto& v : rep.verdicts) verdicts.push_back(to_json(v));
  return json{{"n", rep.n},
              {"inputs",
               {{"cutoff", o.cutoff},
                {"step", o.step},
                {"s_max", o.s_max},
                {"p_max", o.p_max},
                {"rho_constant", o.rho_constant},
                {"seed", o.seed},
                {"far_samples", o.far_samples},
                {"enforce_tail", o.enforce_tail},
                {"tail_tolerance", o.tail_tolerance},
                {"identity_tolerance", o.identity_tolerance}}},
              {"sequences", to_json(rep.sequences)},
              {"tables", tables},
              {"verdicts", verdicts},
              {"passed", rep.passed()}};
}

json to_json(const EquivalenceReport& rep) {
  json j{{"regime_reached", rep.regime_reached},
         {"proxy", rep.proxy},
         {"rank", rep.rank},
         {"samples", rep.samples},
         {"seed", rep.seed},
         {"max_ratio", rep.max_ratio},
         {"bound", rep.bound},
         {"passed", rep.passed}};
  if (!rep.note.empty()) j["note"] = rep.note;
  return j;
}

json projection_metadata(const ProjectionPair& pair) {
  const cplx tr = pair.trace();
  return json{{"n", pair.n},
              {"bc", std::string(to_string(pair.bc))},
              {"nodes", pair.nodes},
              {"quad_error_est", pair.quad_error_est},
              {"trace", {tr.real(), tr.imag()}},
              {"idempotency_residual", pair.idempotency_residual()}};
}

std::string matrix_csv(const BasisSpec& basis, const Eigen::MatrixXcd& M) {
  if (M.rows() != basis.size() || M.cols() != basis.size()) {
    throw Error(Errc::InvalidArgument, "matrix does not match the basis");
  }
  std::string out = "k,m,re,im\n";
  for (int i = 0; i < basis.size(); ++i) {
    for (int j = 0; j < basis.size(); ++j) {
      out += std::to_string(basis.indices[static_cast<std::size_t>(i)]) + ',' +
             std::to_string(basis.indices[static_cast<std::size_t>(j)]) + ',' + format_double(M(i, j).real()) + ',' +
             format_double(M(i, j).imag()) + '\n';
    }
  }
  return out;
}

void write_matrix_binary(const std::filesystem::path& path, const BasisSpec& basis, const Eigen::MatrixXcd& M) {
  if (M.rows() != basis.size() || M.cols() != basis.size()) {
    throw Error(Errc::InvalidArgument, "matrix does not match the basis");
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::Io, "cannot write " + path.string());
  const auto dim = static_cast<std::uint32_t>(basis.size());
  out.write(kMagic, sizeof kMagic);
  out.write(reinterpret_cast<const char*>(&dim), sizeof dim);
  out.write(reinterpret_cast<const char*>(&dim), sizeof dim);
  for (int pass = 0; pass < 2; ++pass) {
    for (int k : basis.indices) {
      const auto v = static_cast<std::int32_t>(k);
      out.write(reinterpret_cast<const char*>(&v), sizeof v);
    }
  }
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    for (Eigen::Index j = 0; j < M.cols(); ++j) {
      const double parts[2] = {M(i, j).real(), M(i, j).imag()};
      out.write(reinterpret_cast<const char*>(parts), sizeof parts);
    }
  }
  if (!out) throw Error(Errc::Io, "write failed for " + path.string());
}

MatrixDump read_matrix_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Io, "cannot open " + path.string());
  char magic[8];
  std::uint32_t rows = 0, cols = 0;
  in.read(magic, sizeof magic);
  in.read(reinterpret_cast<char*>(&rows), sizeof rows);
  in.read(reinterpret_cast<char*>(&cols), sizeof cols);
  if (!in || std::memcmp(magic, kMagic, sizeof kMagic) != 0) throw Error(Errc::Io, path.string() + " is not a matrix dump");
  MatrixDump dump;
  dump.row_indices.resize(rows);
  dump.col_indices.resize(cols);
  in.read(reinterpret_cast<char*>(dump.row_indices.data()), static_cast<std::streamsize>(rows * sizeof(std::int32_t)));
  in.read(reinterpret_cast<char*>(dump.col_indices.data()), static_cast<std::streamsize>(cols * sizeof(std::int32_t)));
  dump.values.resize(rows, cols);
  for (std::uint32_t i = 0; i < rows; ++i) {
    for (std::uint32_t j = 0; j < cols; ++j) {
      double parts[2];
      in.read(reinterpret_cast<char*>(parts), sizeof parts);
      dump.values(i, j) = cplx(parts[0], parts[1]);
    }
  }
  if (!in) throw Error(Errc::Io, path.string() + " is truncated");
  return dump;
}

}  // namespace hill
