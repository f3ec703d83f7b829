#include "wigswap/scenario.hpp"

#include <cmath>

#include "wigswap/errors.hpp"

namespace wigswap {

std::string to_string(PortName p) {
  static constexpr std::array<std::string_view, 8> names{"DH1", "DV1", "DH2", "DV2",
                                                         "DH3", "DV3", "DH4", "DV4"};
  return std::string(names[static_cast<std::size_t>(p)]);
}

PortName parse_port(std::string_view name) {
  for (PortName p : kAllPorts)
    if (to_string(p) == name) return p;
  throw InvalidArgument("unknown detector port '" + std::string(name) + "'");
}

int area(PortName p) { return static_cast<int>(p) / 2 + 1; }

Polarization channel(PortName p) {
  return static_cast<int>(p) % 2 == 0 ? Polarization::H : Polarization::V;
}

bool is_bsm_port(PortName p) { return area(p) == 2 || area(p) == 3; }

void ScenarioParams::validate() const {
  model.validate();
  if (!(omega_rad_s > 0.0) || !std::isfinite(omega_rad_s))
    throw InvalidArgument("carrier frequency must be positive");
  for (double l : arm_lengths_m)
    if (!(l >= 0.0) || !std::isfinite(l)) throw InvalidArgument("arm lengths must be >= 0");
  for (double t : detection_times_s)
    if (!std::isfinite(t)) throw InvalidArgument("detection times must be finite");
  for (const auto& c : corrections) {
    if (c.beam < 1 || c.beam > 4) throw InvalidArgument("correction beam must be 1..4");
    if (!std::isfinite(c.phase_rad)) throw InvalidArgument("correction phase must be finite");
  }
}

const Beam& SwappingScenario::beam(int index) const {
  if (index < 1 || index > 4) throw InvalidArgument("beam index must be 1..4");
  return beams_[static_cast<std::size_t>(index - 1)];
}

FieldExpr SwappingScenario::source_component(std::string_view name, PortName at) const {
  const bool primed = name.size() == 2 && name[1] == '\'';
  if (name.empty() || name.size() > 2 || (name.size() == 2 && !primed))
    throw InvalidArgument("unknown source component '" + std::string(name) + "'");
  const PdcComponents& c = primed ? primed_ : unprimed_;
  const FieldExpr* f = nullptr;
  switch (name[0]) {
    case 's': f = &c.s; break;
    case 'p': f = &c.p; break;
    case 'q': f = &c.q; break;
    case 'r': f = &c.r; break;
    default: throw InvalidArgument("unknown source component '" + std::string(name) + "'");
  }
  return f->with_time(params_.detection_times_s[static_cast<std::size_t>(at)]);
}

SwappingScenario build_scenario(const ScenarioParams& params) {
  params.validate();
  SwappingScenario sc;
  sc.params_ = params;

  const auto& model = params.model;
  PdcBeams c1 = pdc_source(Source::Crystal1, model, sc.registry_, params.omega_rad_s);
  PdcBeams c2 = pdc_source(Source::Crystal2, model, sc.registry_, params.omega_rad_s);

  const auto& len = params.arm_lengths_m;
  auto prop = [](const PdcComponents& c, double l_sig, double l_idl) {
    return PdcComponents{propagate(c.s, l_sig), propagate(c.p, l_sig), propagate(c.q, l_idl),
                         propagate(c.r, l_idl)};
  };
  sc.primed_ = prop(c1.components, len[0], len[1]);
  sc.unprimed_ = prop(c2.components, len[2], len[3]);

  std::array<Beam, 4> beams{propagate(c1.signal, len[0]), propagate(c1.idler, len[1]),
                            propagate(c2.signal, len[2]), propagate(c2.idler, len[3])};
  for (const auto& corr : params.corrections) {
    auto& b = beams[static_cast<std::size_t>(corr.beam - 1)];
    b = apply_phase(b, corr.polarization, corr.phase_rad);
  }
  sc.beams_ = beams;

  auto [to_area2, to_area3] = apply_bs(beams[1], beams[2]);
  const std::array<const Beam*, 4> analysed{&beams[0], &to_area2, &to_area3, &beams[3]};
  for (int a = 0; a < 4; ++a) {
    auto [dh, dv] = apply_pbs(*analysed[static_cast<std::size_t>(a)], sc.registry_,
                              std::to_string(a + 1));
    const auto ih = static_cast<std::size_t>(2 * a);
    sc.ports_[ih] = dh.at_time(params.detection_times_s[ih]);
    sc.ports_[ih + 1] = dv.at_time(params.detection_times_s[ih + 1]);
  }
  return sc;
}

}  // namespace wigswap
