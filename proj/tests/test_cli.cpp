#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "wigswap_cli/cli.hpp"

using namespace wigswap;
using namespace wigswap::cli;

namespace {

std::map<std::string, double> column(const Table& t, std::size_t key_col, std::size_t value_col,
                                     const std::string& kind = {}) {
  std::map<std::string, double> out;
  for (const auto& r : t.rows)
    if (kind.empty() || r[0] == kind) out[r[key_col]] = std::stod(r[value_col]);
  return out;
}

std::string csv(const Table& t) {
  std::ostringstream s;
  write_csv(t, s);
  return s.str();
}

int run_args(std::vector<const char*> args, std::string* out_text = nullptr) {
  args.insert(args.begin(), "wigswap");
  std::ostringstream out, err;
  const int code = run(static_cast<int>(args.size()), args.data(), out, err);
  if (out_text) *out_text = out.str();
  return code;
}

std::filesystem::path write_temp(const std::string& name, const std::string& text) {
  auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

}  // namespace

TEST_CASE("empty config takes the documented defaults") {
  auto cfg = parse_config("{}");
  CHECK(cfg.params.model.coupling == 0.1);
  CHECK(cfg.params.model.pump == Complex(1.0, 0.0));
  CHECK(cfg.params.model.correlation_time_s == 1e-12);
  CHECK(cfg.params.arm_lengths_m[2] == 1.0);
  CHECK(cfg.mc.coupling == 0.5);
  CHECK(cfg.mc.batches == 100);
}

TEST_CASE("config fields map onto scenario parameters") {
  auto cfg = parse_config(R"({"g": 0.2, "V": [0, 1], "tau_c_ps": 2, "wavelength_nm": 1000,
      "arm_lengths_m": [1, 2, 3, 4], "detection_times_ps": {"DV3": 1.5},
      "corrections": [{"beam": 4, "polarization": "V", "phase_rad": 3.0}],
      "mc": {"samples": 500, "seed": 9, "batches": 10, "g": 0.3}})");
  CHECK(cfg.params.model.coupling == 0.2);
  CHECK(cfg.params.model.pump == Complex(0.0, 1.0));
  CHECK(cfg.params.model.correlation_time_s == doctest::Approx(2e-12));
  CHECK(cfg.params.omega_rad_s == doctest::Approx(2 * std::numbers::pi * kSpeedOfLight / 1e-6));
  CHECK(cfg.params.arm_lengths_m[3] == 4.0);
  CHECK(cfg.params.detection_times_s[static_cast<std::size_t>(PortName::DV3)] ==
        doctest::Approx(1.5e-12));
  REQUIRE(cfg.params.corrections.size() == 1);
  CHECK(cfg.params.corrections[0].phase_rad == 3.0);
  CHECK(cfg.mc.samples == 500);
  CHECK(cfg.mc.seed == 9);
  CHECK(cfg.mc.coupling == 0.3);
  auto obj = parse_config(R"({"arm_lengths_m": {"3": 2.5}})");
  CHECK(obj.params.arm_lengths_m[2] == 2.5);
  CHECK(obj.params.arm_lengths_m[0] == 1.0);
}

TEST_CASE("invalid configs are rejected as config errors") {
  const char* bad[] = {
      "[1, 2]",
      "{",
      R"({"gee": 0.1})",
      R"({"g": "x"})",
      R"({"V": [1]})",
      R"({"tau_c_ps": 0})",
      R"({"kernel": "lorentzian"})",
      R"({"arm_lengths_m": [1, 1, 1]})",
      R"({"arm_lengths_m": {"5": 1}})",
      R"({"arm_lengths_m": {"1": -1}})",
      R"({"detection_times_ps": {"DX1": 0}})",
      R"({"corrections": [{"beam": 7, "phase_rad": 1}]})",
      R"({"corrections": [{"beam": 4}]})",
      R"({"corrections": [{"beam": 4, "polarization": "D", "phase_rad": 1}]})",
      R"({"mc": {"samples": 0}})",
      R"({"mc": {"batches": 1}})",
      R"({"mc": {"seed": -3}})",
      R"({"mc": {"extra": 1}})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_config(text), ConfigError);
  }
  CHECK_THROWS_AS(load_config("/nonexistent/scenario.json"), ConfigError);
}

TEST_CASE("CSV follows RFC 4180 quoting") {
  Table t{{"a", "b"}, {{"x,y", "say \"hi\""}, {"plain", ""}}};
  CHECK(csv(t) == "a,b\r\n\"x,y\",\"say \"\"hi\"\"\"\r\nplain,\r\n");
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-0.0) == "0");
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("correlations: default config reproduces the prefactor table") {
  auto t = cmd_correlations(parse_config("{}"));
  REQUIRE(t.rows.size() == 8);
  CHECK(t.rows[0][0] == "DH2-DV1");
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::stod(t.rows[0][4]) == doctest::Approx(s));
  CHECK(std::stod(t.rows[1][5]) == doctest::Approx(s));
  for (const auto& r : t.rows) CHECK(std::stod(r[3]) == doctest::Approx(0.1 * s));
  auto zero = cmd_correlations(parse_config(R"({"g": 0})"));
  for (const auto& r : zero.rows) CHECK(std::stod(r[3]) == 0.0);
}

TEST_CASE("correlations: unequal arms scale the affected moduli by the kernel") {
  const double delta = 2e-4;
  auto t = cmd_correlations(parse_config(R"({"arm_lengths_m": {"1": 1.0002}})"));
  const double nu = std::exp(-0.5 * std::pow(delta / kSpeedOfLight / 1e-12, 2));
  auto mod = column(t, 0, 3);
  CHECK(mod["DH2-DV1"] == doctest::Approx(0.1 / std::sqrt(2.0) * nu).epsilon(1e-12));
  CHECK(mod["DV2-DH1"] == doctest::Approx(0.1 / std::sqrt(2.0) * nu).epsilon(1e-12));
  CHECK(mod["DH2-DV4"] == doctest::Approx(0.1 / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("probabilities: closed forms, exclusions and coupling scaling") {
  auto t = cmd_probabilities(parse_config("{}"));
  auto joint = column(t, 1, 3, "joint");
  auto quad = column(t, 1, 3, "quadruple");
  CHECK(joint.size() == 28);
  CHECK(quad.size() == 24);
  CHECK(joint["DH1.DV2"] == doctest::Approx(0.005).epsilon(1e-12));
  CHECK(joint["DH1.DV4"] == 0.0);
  CHECK(joint["DH2.DV3"] == 0.0);
  CHECK(joint["DH1.DH2"] == 0.0);
  CHECK(quad["DH1.DH2.DV2.DV4"] == doctest::Approx(2.5e-5).epsilon(1e-12));
  CHECK(quad["DH1.DV2.DV3.DH4"] == 0.0);
  for (const auto& r : t.rows)
    if (r[0] == "double") CHECK(std::stod(r[3]) == doctest::Approx(5e-5).epsilon(1e-12));

  auto t2 = cmd_probabilities(parse_config(R"({"g": 0.2})"));
  auto joint2 = column(t2, 1, 3, "joint");
  auto quad2 = column(t2, 1, 3, "quadruple");
  CHECK(joint2["DH1.DV2"] == doctest::Approx(4 * joint["DH1.DV2"]).epsilon(1e-12));
  CHECK(quad2["DH1.DH2.DV2.DV4"] == doctest::Approx(16 * quad["DH1.DH2.DV2.DV4"]).epsilon(1e-12));
}

TEST_CASE("montecarlo: estimates agree with the exact moment and are reproducible") {
  auto cfg = parse_config(R"({"mc": {"samples": 200000, "seed": 3}})");
  auto a = cmd_montecarlo(cfg);
  REQUIRE(a.rows.size() == 52);
  for (const auto& r : a.rows) {
    CAPTURE(r[1]);
    CHECK(std::abs(std::stod(r[2]) - std::stod(r[4])) <= 5 * std::stod(r[3]));
  }
  CHECK(csv(cmd_montecarlo(cfg)) == csv(a));
  cfg.mc.batches = 40;
  auto b = cmd_montecarlo(cfg);
  CHECK(a.rows[0][2] == b.rows[0][2]);
  CHECK(a.rows[0][3] != b.rows[0][3]);
}

TEST_CASE("sweep: zero width equals probabilities, phase endpoints flip the sign rows") {
  auto cfg = parse_config("{}");
  auto single = cmd_sweep(cfg, {SweepParameter::ImbalanceM, 0.0, 0.0, 1});
  auto probs = column(cmd_probabilities(cfg), 1, 3);
  for (const auto& r : single.rows)
    if (r[2] != "correlation") CHECK(std::stod(r[4]) == probs.at(r[3]));

  auto phase = cmd_sweep(cfg, {SweepParameter::PhaseRad, 0.0, std::numbers::pi, 5});
  std::map<std::string, Complex> first, last;
  for (const auto& r : phase.rows) {
    if (r[2] != "correlation") continue;
    const Complex v{std::stod(r[4]), std::stod(r[5])};
    if (std::stod(r[1]) == 0.0) first[r[3]] = v;
    if (std::stod(r[1]) == std::numbers::pi) last[r[3]] = v;
  }
  REQUIRE(first.size() == 8);
  REQUIRE(last.size() == 8);
  for (const auto& [label, v] : first) {
    const bool h1v4 = label.rfind("DH1", 0) == 0;
    CHECK(std::abs(last[label] - (h1v4 ? -v : v)) < 1e-15);
  }

  auto far = cmd_sweep(cfg, {SweepParameter::ImbalanceM, 0.0, 5 * kSpeedOfLight * 1e-12, 6});
  for (const auto& r : far.rows)
    if (r[2] != "correlation" && std::stod(r[1]) == 5 * kSpeedOfLight * 1e-12)
      CHECK(std::stod(r[4]) < 1e-12);

  CHECK_THROWS_AS(cmd_sweep(cfg, {SweepParameter::ImbalanceM, 0.0, 1.0, 1}), ConfigError);
  CHECK_THROWS_AS(cmd_sweep(cfg, {SweepParameter::ImbalanceM, -2.0, -2.0, 1}), ConfigError);
  CHECK_THROWS_AS(parse_sweep_parameter("tau"), ConfigError);
}

TEST_CASE("run: exit codes and output") {
  auto good = write_temp("wigswap_cli_good.json", "{}");
  auto bad = write_temp("wigswap_cli_bad.json", R"({"g": [1]})");
  std::string text;
  CHECK(run_args({"correlations", "--scenario", good.c_str()}, &text) == 0);
  CHECK(text.rfind("pattern,re,im,modulus,prefactor_re,prefactor_im\r\n", 0) == 0);
  CHECK(run_args({"probabilities", "--scenario", bad.c_str()}) == 2);
  CHECK(run_args({"probabilities", "--scenario", "/nonexistent.json"}) == 2);
  CHECK(run_args({"bogus"}) == 2);
  CHECK(run_args({"correlations"}) == 2);
  CHECK(run_args({"--help"}) == 0);
  CHECK(run_args({"sweep", "--scenario", good.c_str(), "--parameter", "nope"}) == 2);
  CHECK(run_args({"montecarlo", "--scenario", good.c_str(), "--samples", "5"}) == 2);
  CHECK(run_args({"sweep", "--scenario", good.c_str(), "--parameter", "g", "--from", "0",
                  "--to", "0.2", "--steps", "3"},
                 &text) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 3 * 24);
}

TEST_CASE("exception classes map to documented exit codes") {
  CHECK(exit_code_for(ConsistencyError("x")) == 3);
  CHECK(exit_code_for(ConfigError("x")) == 2);
  CHECK(exit_code_for(InvalidArgument("x")) == 2);
  CHECK(exit_code_for(std::runtime_error("x")) == 1);
}
