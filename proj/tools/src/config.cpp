#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "wigswap_cli/cli.hpp"

namespace wigswap::cli {

namespace {

using nlohmann::json;

constexpr double kPicosecond = 1e-12;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void reject_unknown(const json& obj, const std::set<std::string>& known, const std::string& where) {
  for (const auto& [key, value] : obj.items())
    if (!known.count(key)) fail(where, "unknown key '" + key + "'");
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where, "expected a finite number");
  return x;
}

Complex complex_value(const json& v, const std::string& where) {
  if (v.is_number()) return number(v, where);
  if (!v.is_array() || v.size() != 2) fail(where, "expected [re, im]");
  return {number(v[0], where + "[0]"), number(v[1], where + "[1]")};
}

std::int64_t positive_integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) fail(where, "expected an integer");
  const auto x = v.get<std::int64_t>();
  if (x <= 0) fail(where, "must be positive");
  return x;
}

Polarization polarization(const json& v, const std::string& where) {
  if (v == "H") return Polarization::H;
  if (v == "V") return Polarization::V;
  fail(where, "expected \"H\" or \"V\"");
}

void read_arms(const json& v, ScenarioParams& p) {
  const std::string where = "arm_lengths_m";
  auto set = [&](int beam, const json& x) {
    const std::string w = where + "." + std::to_string(beam);
    const double l = number(x, w);
    if (l < 0.0) fail(w, "must be >= 0");
    p.arm_lengths_m[static_cast<std::size_t>(beam - 1)] = l;
  };
  if (v.is_array()) {
    if (v.size() != 4) fail(where, "expected 4 entries (beams 1..4)");
    for (int b = 1; b <= 4; ++b) set(b, v[static_cast<std::size_t>(b - 1)]);
  } else if (v.is_object()) {
    for (const auto& [key, x] : v.items()) {
      if (key.size() != 1 || key[0] < '1' || key[0] > '4') fail(where, "unknown beam '" + key + "'");
      set(key[0] - '0', x);
    }
  } else {
    fail(where, "expected an object keyed by beam or an array of 4");
  }
}

void read_times(const json& v, ScenarioParams& p) {
  const std::string where = "detection_times_ps";
  if (!v.is_object()) fail(where, "expected an object keyed by port name");
  for (const auto& [key, x] : v.items()) {
    PortName port;
    try {
      port = parse_port(key);
    } catch (const InvalidArgument&) {
      fail(where, "unknown port '" + key + "'");
    }
    p.detection_times_s[static_cast<std::size_t>(port)] = number(x, where + "." + key) * kPicosecond;
  }
}

void read_corrections(const json& v, ScenarioParams& p) {
  if (!v.is_array()) fail("corrections", "expected an array");
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string where = "corrections[" + std::to_string(i) + "]";
    const json& c = v[i];
    if (!c.is_object()) fail(where, "expected an object");
    reject_unknown(c, {"beam", "polarization", "phase_rad"}, where);
    PhaseCorrection pc;
    if (c.contains("beam")) {
      if (!c["beam"].is_number_integer()) fail(where + ".beam", "expected an integer");
      pc.beam = c["beam"].get<int>();
      if (pc.beam < 1 || pc.beam > 4) fail(where + ".beam", "must be 1..4");
    }
    if (c.contains("polarization")) pc.polarization = polarization(c["polarization"], where + ".polarization");
    if (!c.contains("phase_rad")) fail(where, "missing phase_rad");
    pc.phase_rad = number(c["phase_rad"], where + ".phase_rad");
    p.corrections.push_back(pc);
  }
}

void read_mc(const json& v, McConfig& mc) {
  if (!v.is_object()) fail("mc", "expected an object");
  reject_unknown(v, {"samples", "seed", "batches", "g"}, "mc");
  if (v.contains("samples")) mc.samples = positive_integer(v["samples"], "mc.samples");
  if (v.contains("seed")) {
    if (!v["seed"].is_number_unsigned() && !(v["seed"].is_number_integer() && v["seed"].get<std::int64_t>() >= 0))
      fail("mc.seed", "expected a non-negative integer");
    mc.seed = v["seed"].get<std::uint64_t>();
  }
  if (v.contains("batches")) mc.batches = positive_integer(v["batches"], "mc.batches");
  if (mc.batches < 2) fail("mc.batches", "must be >= 2");
  if (v.contains("g")) mc.coupling = number(v["g"], "mc.g");
}

}  // namespace

ScenarioConfig parse_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("scenario document must be a JSON object");
  reject_unknown(doc,
                 {"g", "V", "tau_c_ps", "kernel", "wavelength_nm", "arm_lengths_m",
                  "detection_times_ps", "corrections", "mc"},
                 "scenario");

  ScenarioConfig cfg;
  auto& p = cfg.params;
  if (doc.contains("g")) p.model.coupling = number(doc["g"], "g");
  if (doc.contains("V")) p.model.pump = complex_value(doc["V"], "V");
  if (doc.contains("tau_c_ps")) {
    const double tau = number(doc["tau_c_ps"], "tau_c_ps");
    if (tau <= 0.0) fail("tau_c_ps", "must be positive");
    p.model.correlation_time_s = tau * kPicosecond;
  }
  if (doc.contains("kernel") && doc["kernel"] != "gaussian")
    fail("kernel", "only \"gaussian\" is supported");
  if (doc.contains("wavelength_nm")) {
    const double nm = number(doc["wavelength_nm"], "wavelength_nm");
    if (nm <= 0.0) fail("wavelength_nm", "must be positive");
    p.omega_rad_s = 2.0 * 3.14159265358979323846 * kSpeedOfLight / (nm * 1e-9);
  }
  if (doc.contains("arm_lengths_m")) read_arms(doc["arm_lengths_m"], p);
  if (doc.contains("detection_times_ps")) read_times(doc["detection_times_ps"], p);
  if (doc.contains("corrections")) read_corrections(doc["corrections"], p);
  if (doc.contains("mc")) read_mc(doc["mc"], cfg.mc);

  try {
    p.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError(e.what());
  }
  return cfg;
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open scenario file '" + path.string() + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

}  // namespace wigswap::cli
