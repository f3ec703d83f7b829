#include "wigswap/optics.hpp"

#include <cmath>
#include <numbers>

#include "wigswap/errors.hpp"

namespace wigswap {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr Complex kI{0.0, 1.0};

SpaceTimeEvent source_event(Source crystal) {
  return {crystal == Source::Crystal1 ? "S1" : "S2", 0.0, 0.0};
}

}  // namespace

Beam::Beam(std::string label, FieldExpr h, FieldExpr v)
    : label_(std::move(label)), h_(std::move(h)), v_(std::move(v)) {
  if (h_.central_frequency() != v_.central_frequency())
    throw FrequencyMismatch("beam '" + label_ + "': components differ in frequency");
  const auto& eh = h_.event();
  const auto& ev = v_.event();
  if (eh.path_length_m != ev.path_length_m || eh.time_s != ev.time_s)
    throw InvalidArgument("beam '" + label_ + "': components differ in event");
}

DetectorPort DetectorPort::at_time(double time_s) const {
  DetectorPort p = *this;
  p.x = x.with_time(time_s);
  p.y = y.with_time(time_s);
  return p;
}

void validate(const ElementSpec& element) {
  if (const auto* ps = std::get_if<PhaseShifter>(&element)) {
    if (!(ps->phase_rad >= 0.0 && ps->phase_rad < 2 * std::numbers::pi))
      throw InvalidArgument("phase shift must lie in [0, 2pi)");
  } else if (const auto* pr = std::get_if<Propagation>(&element)) {
    if (!(pr->distance_m >= 0.0)) throw InvalidArgument("propagation distance must be >= 0");
  }
}

PdcBeams pdc_source(Source crystal, const CovarianceModel& model, ModeRegistry& registry,
                    double omega_rad_s) {
  model.validate();
  const auto m = registry.allocate_source(crystal);
  const SpaceTimeEvent ev = source_event(crystal);
  const Complex gv = model.pdc_amplitude();

  auto amp = [&](const ModeId& direct, const ModeId& partner) {
    FieldExpr e(ev, omega_rad_s);
    e.add({{direct, false}, Origin::Vacuum, 0.0}, 1.0);
    e.add({{partner, true}, Origin::Amplified, 0.0}, gv);
    return e;
  };

  PdcComponents c{
      amp(m.signal_h, m.idler_v),  // s
      amp(m.signal_v, m.idler_h),  // p
      amp(m.idler_h, m.signal_v),  // q
      amp(m.idler_v, m.signal_h),  // r
  };
  const bool first = crystal == Source::Crystal1;
  Beam signal(first ? "1" : "3", c.s, c.p);
  Beam idler(first ? "2" : "4", c.q, c.r.scaled(-1.0));
  return {std::move(signal), std::move(idler), std::move(c)};
}

std::pair<Beam, Beam> apply_bs(const Beam& in_a, const Beam& in_b) {
  if (in_a.central_frequency() != in_b.central_frequency())
    throw FrequencyMismatch("beam splitter inputs differ in frequency");
  const SpaceTimeEvent ev1{"BS:out1", in_a.event().path_length_m, in_a.event().time_s};
  const SpaceTimeEvent ev2{"BS:out2", in_a.event().path_length_m, in_a.event().time_s};
  const Complex t = kInvSqrt2;
  const Complex r = kI * kInvSqrt2;

  auto mix = [](Complex ca, const FieldExpr& a, Complex cb, const FieldExpr& b,
                const SpaceTimeEvent& ev) {
    const Complex cs[] = {ca, cb};
    const FieldExpr xs[] = {a, b};
    return linear_combine(cs, xs, ev);
  };
  Beam out1(in_a.label() + in_b.label() + "'1", mix(r, in_a.h(), t, in_b.h(), ev1),
            mix(r, in_a.v(), t, in_b.v(), ev1));
  Beam out2(in_a.label() + in_b.label() + "'2", mix(t, in_a.h(), r, in_b.h(), ev2),
            mix(t, in_a.v(), r, in_b.v(), ev2));
  return {std::move(out1), std::move(out2)};
}

std::pair<DetectorPort, DetectorPort> apply_pbs(const Beam& in, ModeRegistry& registry,
                                                const std::string& label) {
  const auto z = registry.allocate_idle(label);
  const double omega = in.central_frequency();
  const SpaceTimeEvent ev_h{"DH" + label, in.event().path_length_m, in.event().time_s};
  const SpaceTimeEvent ev_v{"DV" + label, in.event().path_length_m, in.event().time_s};

  DetectorPort dh;
  dh.name = "DH" + label;
  dh.channel = Polarization::H;
  dh.x = in.h().with_event(ev_h);
  dh.y = FieldExpr::mode(z.v, ev_h, omega).scaled(kI);

  DetectorPort dv;
  dv.name = "DV" + label;
  dv.channel = Polarization::V;
  dv.x = FieldExpr::mode(z.h, ev_v, omega);
  dv.y = in.v().with_event(ev_v).scaled(-kI);
  return {std::move(dh), std::move(dv)};
}

Beam apply_phase(const Beam& in, Polarization pol, double phi_rad) {
  const Complex ph = unit_phasor(phi_rad);
  if (pol == Polarization::H) return Beam(in.label(), in.h().scaled(ph), in.v());
  return Beam(in.label(), in.h(), in.v().scaled(ph));
}

FieldExpr propagate(const FieldExpr& in, double distance_m) {
  if (!(distance_m >= 0.0)) throw InvalidArgument("propagation distance must be >= 0");
  if (distance_m == 0.0) return in;
  const double delay = distance_m / kSpeedOfLight;
  const Complex phase = std::polar(1.0, in.central_frequency() * delay);
  SpaceTimeEvent ev = in.event();
  ev.path_length_m += distance_m;
  FieldExpr out(ev, in.central_frequency());
  for (const auto& [k, c] : in.terms())
    out.add({k.var, k.origin, k.retardation_s + delay}, c * phase);
  return out;
}

Beam propagate(const Beam& in, double distance_m) {
  return Beam(in.label(), propagate(in.h(), distance_m), propagate(in.v(), distance_m));
}

Beam apply(const ElementSpec& element, const Beam& in) {
  validate(element);
  if (const auto* ps = std::get_if<PhaseShifter>(&element))
    return apply_phase(in, ps->polarization, ps->phase_rad);
  if (const auto* pr = std::get_if<Propagation>(&element)) return propagate(in, pr->distance_m);
  throw InvalidArgument("two-port elements need apply_bs / apply_pbs");
}

}  // namespace wigswap
