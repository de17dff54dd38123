#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>

#include "hill/error.hpp"
#include "hill/io.hpp"

using namespace hill;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "hillproj_unit";
  fs::create_directories(dir);
  return dir / name;
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::Io;
}

}  // namespace

TEST_CASE("potential specs") {
  const auto m = parse_potential_spec("mathieu:2.5");
  CHECK(m.kind == "mathieu");
  CHECK(m.parameter == 2.5);
  CHECK(std::abs(make_potential(m, 16).w(2) - cplx(0, -1.25)) < 1e-15);
  CHECK(parse_potential_spec("zero").kind == "zero");
  CHECK(make_potential(parse_potential_spec("delta_comb:0.5"), 20).max_index() == 80);
  CHECK(code_of([] { parse_potential_spec("bessel:1"); }) == Errc::Config);

  const json custom = json::parse(R"({"kind": "custom", "v0": [0.5, 0], "coefficients": [[2, 0, -0.5], [-2, 0, 0.5]]})");
  const auto spec = potential_spec_from_json(custom);
  const auto p = make_potential(spec, 16);
  CHECK(std::abs(p.v0() - cplx(0.5, 0)) < 1e-15);
  CHECK(std::abs(p.V(2) - cplx(1, 0)) < 1e-15);
  // The JSON form round-trips.
  const auto again = potential_spec_from_json(spec.to_json());
  CHECK(again.coefficients == spec.coefficients);
  CHECK(again.v0 == spec.v0);
}

TEST_CASE("run configuration") {
  RunConfig c;
  CHECK(c.half_width() == 160);
  CHECK_NOTHROW(c.validate());
  CHECK(c.n_values().front() == 10);
  CHECK(c.n_values().size() == 16);

  const json j = json::parse(R"({"bc": "per-", "n_min": 9, "n_max": 15, "K": 80, "seed": 4})");
  const auto d = apply_config_json(j, c);
  CHECK(d.bc == BoundaryCondition::PerMinus);
  CHECK(d.n_values() == std::vector<int>{9, 11, 13, 15});
  CHECK_NOTHROW(d.validate());

  // The echo feeds back to the same configuration.
  const auto echo = apply_config_json(d.to_json());
  CHECK(echo.to_json() == d.to_json());
  CHECK_FALSE(d.to_json().contains("out"));

  CHECK(code_of([&] { apply_config_json(json::parse(R"({"colour": 1})")); }) == Errc::Config);
  CHECK(code_of([&] { apply_config_json(json::parse("[1, 2]")); }) == Errc::Config);
  CHECK(code_of([&] { apply_config_json(json::parse(R"({"bc": "neumann"})")); }) == Errc::Config);

  RunConfig bad;
  bad.bc = BoundaryCondition::PerMinus;  // n_min = 10 is even
  CHECK(code_of([&] { bad.validate(); }) == Errc::Config);
  bad = RunConfig{};
  bad.K = 100;
  CHECK(code_of([&] { bad.validate(); }) == Errc::Config);
  bad = RunConfig{};
  bad.nodes = 17;
  CHECK(code_of([&] { bad.validate(); }) == Errc::Config);
  bad = RunConfig{};
  bad.cutoff = 100;
  CHECK(code_of([&] { bad.validate(); }) == Errc::Config);
}

TEST_CASE("format_double round-trips") {
  for (double x : {0.1, 1.0 / 3.0, 1e-300, 12345.678, -2.5e17, std::numeric_limits<double>::denorm_min()}) {
    CHECK(std::strtod(format_double(x).c_str(), nullptr) == x);
  }
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("binary matrix dumps round-trip") {
  const auto basis = make_basis(BoundaryCondition::PerMinus, 5);
  Eigen::MatrixXcd M(basis.size(), basis.size());
  for (int i = 0; i < M.rows(); ++i)
    for (int j = 0; j < M.cols(); ++j) M(i, j) = cplx(i - 0.5 * j, 1.0 / (1 + i + j));
  const auto path = scratch("m.bin");
  write_matrix_binary(path, basis, M);
  const auto dump = read_matrix_binary(path);
  CHECK(dump.row_indices == basis.indices);
  CHECK(dump.col_indices == basis.indices);
  CHECK(dump.values == M);
  CHECK(fs::file_size(path) == 8 + 8 + 2 * 4 * basis.indices.size() + 16 * M.size());

  write_text(scratch("junk.bin"), "HILLMAT0");
  CHECK_THROWS_AS(read_matrix_binary(scratch("junk.bin")), Error);

  const std::string csv = matrix_csv(basis, M);
  CHECK(csv.rfind("k,m,re,im\n", 0) == 0);
}

TEST_CASE("csv preamble and json envelope carry the config") {
  RunConfig c;
  const auto pre = csv_preamble(c);
  CHECK(pre.rfind("# hillproj 0.1.0\n# config: ", 0) == 0);
  const auto env = json_envelope(c);
  CHECK(env["tool"] == "hillproj");
  CHECK(env["config"] == c.to_json());
}
