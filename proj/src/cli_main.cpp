#include <CLI11.hpp>

#include "hill/cli.hpp"
#include "hill/error.hpp"

namespace hill::cli {

namespace {

struct Flags {
  std::string potential;
  std::string bc;
  int K = 0;
  int n_min = 0;
  int n_max = 0;
  int nodes = 0;
  double rho_constant = 0.0;
  int cutoff = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string config;
  std::string inject_fault;
  bool dump_matrices = false;
};

RunConfig resolve(const CLI::App& app, const Flags& f) {
  RunConfig config;
  if (app.count("--config")) {
    const std::filesystem::path path = f.config;
    if (!std::filesystem::exists(path)) throw Error(Errc::Config, "config file " + f.config + " not found");
    if (std::filesystem::file_size(path) == 0) throw Error(Errc::Config, "config file " + f.config + " is empty");
    const json j = read_json_file(path);
    if (j.is_object() && j.empty()) throw Error(Errc::Config, "config file " + f.config + " is empty");
    config = apply_config_json(j, config);
  }
  // Explicit flags win over the config file.
  if (app.count("--potential")) config.potential = parse_potential_spec(f.potential);
  if (app.count("--bc")) {
    const auto bc = parse_boundary_condition(f.bc);
    if (!bc) throw Error(Errc::Config, "bc must be one of per+, per-, dir");
    config.bc = *bc;
  }
  if (app.count("--K")) config.K = f.K;
  if (app.count("--n-min")) config.n_min = f.n_min;
  if (app.count("--n-max")) config.n_max = f.n_max;
  if (app.count("--nodes")) config.nodes = f.nodes;
  if (app.count("--rho-constant")) config.rho_constant = f.rho_constant;
  if (app.count("--cutoff")) config.cutoff = f.cutoff;
  if (app.count("--seed")) config.seed = f.seed;
  if (app.count("--out")) config.out = f.out;
  if (app.count("--inject-fault")) config.inject_fault = f.inject_fault;
  return config;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Riesz projections of Hill operators: spectra, decay of P_n - P_n^0, bound sums and L^p checks",
               "hillproj"};
  app.set_version_flag("--version", std::string(kVersion));
  Flags f;
  app.add_option("--potential", f.potential, "gallery entry (zero, mathieu:q, delta_comb:c, sawtooth:a) or JSON file");
  app.add_option("--bc", f.bc, "boundary condition: per+, per-, dir");
  app.add_option("--K", f.K, "basis half-width (default 4 * n-max)");
  app.add_option("--n-min", f.n_min, "smallest n");
  app.add_option("--n-max", f.n_max, "largest n");
  app.add_option("--nodes", f.nodes, "initial trapezoid nodes per circle");
  app.add_option("--rho-constant", f.rho_constant, "constant C in rho_n");
  app.add_option("--cutoff", f.cutoff, "index cutoff for bound sums (default 8n)");
  app.add_option("--seed", f.seed, "random seed");
  app.add_option("--out", f.out, "output directory");
  app.add_option("--config", f.config, "JSON run configuration; explicit flags override it");
  app.add_option("--inject-fault", f.inject_fault)->group("");
  app.require_subcommand(1);

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues and disc counts");
  auto* decay = app.add_subcommand("decay", "norms of P_n - P_n^0 over the n-range");
  decay->add_flag("--dump-matrices", f.dump_matrices, "write B(n) as binary dumps");
  auto* bounds = app.add_subcommand("bounds", "bound sequences and lemma checks");
  auto* lpnorms = app.add_subcommand("lpnorms", "L1/Linf equivalence on Ran P_n and Ran S_N");
  auto* verify = app.add_subcommand("verify", "small-size property suite");
  for (auto* sub : {spectrum, decay, bounds, lpnorms, verify}) sub->fallthrough();

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kPass : kConfigError;
  }

  try {
    const RunConfig config = resolve(app, f);
    if (spectrum->parsed()) return cmd_spectrum(config, out);
    if (decay->parsed()) return cmd_decay(config, out, f.dump_matrices);
    if (bounds->parsed()) return cmd_bounds(config, out);
    if (lpnorms->parsed()) return cmd_lpnorms(config, out);
    return cmd_verify(config, out);
  } catch (const Error& e) {
    err << "hillproj: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "hillproj: " << e.what() << '\n';
    return kConfigError;
  }
}

}  // namespace hill::cli
