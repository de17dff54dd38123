#pragma once

// Potential gallery specs, run configuration, and the CSV / JSON / binary
// writers shared by the command-line tool and the tests.

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hill/bounds.hpp"
#include "hill/norms.hpp"
#include "hill/operator.hpp"
#include "hill/potential.hpp"
#include "hill/projector.hpp"

namespace hill {

using json = nlohmann::json;

inline constexpr std::string_view kToolName = "hillproj";
inline constexpr std::string_view kVersion = "0.1.0";

/// Gallery entry. JSON form:
///   {"kind": "zero"}
///   {"kind": "mathieu", "coupling": 1.0}              v = 2 q cos 2x
///   {"kind": "delta_comb", "mass": 0.5}               c * sum_k delta(x - k pi)
///   {"kind": "sawtooth", "amplitude": 1.0}            Q = a (x - pi/2) on [0, pi)
///   {"kind": "custom", "v0": [re, im], "coefficients": [[m, re, im], ...]}
/// Any kind accepts "max_index"; truncated kinds default to 4 * half-width.
struct PotentialSpec {
  std::string kind = "mathieu";
  double parameter = 1.0;
  std::optional<int> max_index;
  cplx v0{};
  std::vector<Coefficient> coefficients;  // custom only

  json to_json() const;
};

/// "zero", "mathieu:1", "delta_comb:0.5", "sawtooth:2", or a path to a JSON file.
PotentialSpec parse_potential_spec(std::string_view text);
PotentialSpec potential_spec_from_json(const json& j);
FourierPotential make_potential(const PotentialSpec& spec, int half_width);

struct RunConfig {
  PotentialSpec potential;
  BoundaryCondition bc = BoundaryCondition::PerPlus;
  int K = 0;  // 0 selects 4 * n_max
  int n_min = 10;
  int n_max = 40;
  int nodes = 64;
  double rho_constant = 8.0;
  int cutoff = 0;  // 0 selects 8n per sum
  std::uint64_t seed = 12345;
  std::string out = ".";
  std::string inject_fault;  // test hook for verify: "residue"

  int half_width() const { return K > 0 ? K : 4 * n_max; }
  /// n in [n_min, n_max] belonging to the boundary condition's index set.
  std::vector<int> n_values() const;
  /// Throws Error(Config) on inconsistent settings.
  void validate() const;
  /// Echo written into every output; excludes the output directory.
  json to_json() const;
};

/// Applies the keys present in `j` on top of `base`. Unknown keys are errors.
RunConfig apply_config_json(const json& j, RunConfig base = {});
json read_json_file(const std::filesystem::path& path);

/// Shortest round-trip text for a double.
std::string format_double(double value);

/// "# hillproj 0.1.0" and "# config: {...}" lines.
std::string csv_preamble(const RunConfig& config);
/// {"tool", "version", "config"} object to which outputs add their payload.
json json_envelope(const RunConfig& config);

void write_text(const std::filesystem::path& path, const std::string& content);

inline constexpr std::string_view kDecayColumns =
    "n,bc,sum_abs_B,l1_linf_bound,t_n,frob,rho_n,eps_n,kappa_n,bound64,bound_valid";
std::string decay_csv_row(const DecayRecord& rec);
json to_json(const DecayRecord& rec);
json to_json(const BoundSequences& seq);
json to_json(const Verdict& verdict);
json to_json(const SeriesReport& report);
json to_json(const EquivalenceReport& report);
/// n, bc, nodes, quad_error_est, trace, idempotency residual.
json projection_metadata(const ProjectionPair& pair);

/// Long-form CSV: header "k,m,re,im", one row per entry in row-major order.
std::string matrix_csv(const BasisSpec& basis, const Eigen::MatrixXcd& M);
/// "HILLMAT1", uint32 rows, uint32 cols, int32 row indices, int32 column indices,
/// then rows * cols (re, im) float64 pairs in row-major order; little-endian.
void write_matrix_binary(const std::filesystem::path& path, const BasisSpec& basis, const Eigen::MatrixXcd& M);

struct MatrixDump {
  std::vector<int> row_indices;
  std::vector<int> col_indices;
  Eigen::MatrixXcd values;
};
MatrixDump read_matrix_binary(const std::filesystem::path& path);

}  // namespace hill
