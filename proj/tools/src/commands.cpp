#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <ostream>

#include "wigswap/correlation.hpp"
#include "wigswap/montecarlo.hpp"
#include "wigswap/protocol.hpp"
#include "wigswap/sign_table.hpp"
#include "wigswap_cli/cli.hpp"

namespace wigswap::cli {

namespace {

using P = PortName;

std::string join(const std::vector<P>& ports, const char* sep) {
  std::string s;
  for (P p : ports) s += (s.empty() ? "" : sep) + to_string(p);
  return s;
}

bool needs_quotes(const std::string& field) {
  return field.find_first_of(",\"\r\n") != std::string::npos;
}

// One click in each of areas 1 and 4, two distinct BSM clicks.
struct FourFold {
  std::vector<P> ports;
  CoincidencePattern bsm;
};

std::vector<FourFold> four_fold_patterns() {
  std::vector<FourFold> out;
  for (const auto& bsm : all_bsm_patterns()) {
    if (bsm.doubled()) continue;
    for (P o1 : {P::DH1, P::DV1})
      for (P o4 : {P::DH4, P::DV4}) out.push_back({{o1, bsm.first(), bsm.second(), o4}, bsm});
  }
  return out;
}

std::vector<std::pair<P, P>> all_pairs() {
  std::vector<std::pair<P, P>> out;
  for (std::size_t i = 0; i < kAllPorts.size(); ++i)
    for (std::size_t j = i + 1; j < kAllPorts.size(); ++j) out.emplace_back(kAllPorts[i], kAllPorts[j]);
  return out;
}

}  // namespace

std::string format_number(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

void write_csv(const Table& table, std::ostream& out) {
  auto record = [&](const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) out << ',';
      const std::string& f = fields[i];
      if (!needs_quotes(f)) {
        out << f;
        continue;
      }
      out << '"';
      for (char c : f) {
        if (c == '"') out << '"';
        out << c;
      }
      out << '"';
    }
    out << "\r\n";
  };
  record(table.header);
  for (const auto& row : table.rows) record(row);
}

Table cmd_correlations(const ScenarioConfig& cfg) {
  const auto sc = build_scenario(cfg.params);
  Table t{{"pattern", "re", "im", "modulus", "prefactor_re", "prefactor_im"}, {}};
  for (const auto& r : pair_table(sc))
    t.rows.push_back({r.label, format_number(r.value.real()), format_number(r.value.imag()),
                      format_number(std::abs(r.value)), format_number(r.prefactor.real()),
                      format_number(r.prefactor.imag())});
  return t;
}

Table cmd_probabilities(const ScenarioConfig& cfg) {
  const auto sc = build_scenario(cfg.params);
  const auto& m = sc.model();
  Table t{{"kind", "pattern", "outcome", "value"}, {}};
  for (P p : kAllPorts)
    t.rows.push_back({"single", to_string(p), "", format_number(single_rate(sc.port(p), m))});
  for (auto [a, b] : all_pairs())
    t.rows.push_back({"joint", join({a, b}, "."), "",
                      format_number(joint_probability(sc.port(a), sc.port(b), m))});
  for (const auto& f : four_fold_patterns()) {
    const auto& q = f.ports;
    const double v =
        quadruple_probability(sc.port(q[0]), sc.port(q[1]), sc.port(q[2]), sc.port(q[3]), m).value;
    t.rows.push_back({"quadruple", join(q, "."), to_string(classify_pattern(f.bsm).label),
                      format_number(v)});
  }
  for (const auto& r : double_detection_table(sc)) {
    const double v = double_detection_probability(sc.port(r.ports[0]), sc.port(r.ports[1]),
                                                  sc.port(r.ports[3]), m);
    t.rows.push_back({"double", r.label, to_string(BellLabel::PhiAmbiguous), format_number(v)});
  }
  return t;
}

Table cmd_montecarlo(const ScenarioConfig& cfg) {
  ScenarioParams params = cfg.params;
  params.model.coupling = cfg.mc.coupling;
  const auto sc = build_scenario(params);
  const auto& m = sc.model();
  const auto spec = build_joint_spec(sc.ports(), m);

  struct Item {
    std::string kind;
    std::vector<P> ports;
  };
  std::vector<Item> items;
  for (auto [a, b] : all_pairs()) items.push_back({"joint", {a, b}});
  for (const auto& f : four_fold_patterns()) items.push_back({"quadruple", f.ports});

  std::vector<std::vector<std::size_t>> patterns;
  for (const auto& it : items) {
    std::vector<std::size_t> idx;
    for (P p : it.ports) idx.push_back(static_cast<std::size_t>(p));
    patterns.push_back(std::move(idx));
  }
  const auto est = estimate_intensity_products(spec, patterns, cfg.mc.samples, cfg.mc.seed,
                                               {cfg.mc.batches, 0});

  Table t{{"kind", "pattern", "estimate", "standard_error", "exact", "leading_order", "g",
           "n_samples", "seed"},
          {}};
  for (std::size_t k = 0; k < items.size(); ++k) {
    const auto& q = items[k].ports;
    std::vector<DetectorPort> ports;
    for (P p : q) ports.push_back(sc.port(p));
    const double exact = intensity_moment(ports, m);
    const double leading =
        q.size() == 2 ? joint_probability(ports[0], ports[1], m)
                      : quadruple_probability(ports[0], ports[1], ports[2], ports[3], m).value;
    t.rows.push_back({items[k].kind, join(q, "."), format_number(est[k].estimate),
                      format_number(est[k].standard_error), format_number(exact),
                      format_number(leading), format_number(cfg.mc.coupling),
                      std::to_string(est[k].n_samples), std::to_string(est[k].seed)});
  }
  return t;
}

SweepParameter parse_sweep_parameter(std::string_view name) {
  if (name == "imbalance_m") return SweepParameter::ImbalanceM;
  if (name == "phase_rad") return SweepParameter::PhaseRad;
  if (name == "g") return SweepParameter::Coupling;
  throw ConfigError("unknown sweep parameter '" + std::string(name) +
                    "' (expected imbalance_m, phase_rad or g)");
}

std::string to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::ImbalanceM: return "imbalance_m";
    case SweepParameter::PhaseRad: return "phase_rad";
    case SweepParameter::Coupling: return "g";
  }
  return "?";
}

Table cmd_sweep(const ScenarioConfig& cfg, const SweepRange& range) {
  if (range.steps < 1) throw ConfigError("sweep steps must be >= 1");
  if (!std::isfinite(range.from) || !std::isfinite(range.to))
    throw ConfigError("sweep bounds must be finite");
  if (range.steps == 1 && range.from != range.to)
    throw ConfigError("a single-step sweep needs from == to");

  Table t{{"parameter", "value", "kind", "pattern", "re", "im"}, {}};
  const std::string name = to_string(range.parameter);
  const std::pair<P, P> allowed[] = {{P::DH2, P::DV1}, {P::DH2, P::DV4}, {P::DV2, P::DH1},
                                     {P::DV2, P::DH4}, {P::DH3, P::DV1}, {P::DH3, P::DV4},
                                     {P::DV3, P::DH1}, {P::DV3, P::DH4}};

  for (int k = 0; k < range.steps; ++k) {
    const double x = range.steps == 1
                         ? range.from
                         : range.from + (range.to - range.from) * k / (range.steps - 1);
    ScenarioParams params = cfg.params;
    switch (range.parameter) {
      case SweepParameter::ImbalanceM:
        params.arm_lengths_m[0] += x;
        params.arm_lengths_m[3] += x;
        break;
      case SweepParameter::PhaseRad:
        params.corrections.push_back({4, Polarization::V, x});
        break;
      case SweepParameter::Coupling:
        params.model.coupling = x;
        break;
    }
    SwappingScenario sc;
    try {
      sc = build_scenario(params);
    } catch (const InvalidArgument& e) {
      throw ConfigError("sweep value " + format_number(x) + ": " + e.what());
    }
    const auto& m = sc.model();
    const std::string xs = format_number(x);
    for (auto [a, b] : allowed)
      t.rows.push_back({name, xs, "joint", join({std::min(a, b), std::max(a, b)}, "."),
                        format_number(joint_probability(sc.port(a), sc.port(b), m)), "0"});
    const auto rows = sign_table(sc);
    for (const auto& r : rows) {
      const auto& q = r.ports;
      const double v =
          quadruple_probability(sc.port(q[0]), sc.port(q[1]), sc.port(q[2]), sc.port(q[3]), m).value;
      t.rows.push_back({name, xs, "quadruple", r.label, format_number(v), "0"});
    }
    for (const auto& r : rows)
      t.rows.push_back({name, xs, "correlation", r.label, format_number(r.value.real()),
                        format_number(r.value.imag())});
  }
  return t;
}

}  // namespace wigswap::cli
