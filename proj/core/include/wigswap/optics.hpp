#pragma once

#include <string>
#include <utility>
#include <variant>

#include "wigswap/covariance.hpp"
#include "wigswap/field_expr.hpp"
#include "wigswap/modes.hpp"

namespace wigswap {

/// Two-component (H along i, V along j) field at one location.
class Beam {
 public:
  Beam() = default;
  /// Throws FrequencyMismatch / InvalidArgument if the components disagree
  /// on carrier frequency or event.
  Beam(std::string label, FieldExpr h, FieldExpr v);

  const std::string& label() const { return label_; }
  const FieldExpr& h() const { return h_; }
  const FieldExpr& v() const { return v_; }
  const FieldExpr& component(Polarization p) const { return p == Polarization::H ? h_ : v_; }
  double central_frequency() const { return h_.central_frequency(); }
  const SpaceTimeEvent& event() const { return h_.event(); }

  Beam relabeled(std::string label) const { return Beam(std::move(label), h_, v_); }

 private:
  std::string label_;
  FieldExpr h_, v_;
};

/// A detector behind a PBS output: both polarization axes reach it, one of
/// them carrying only idle-channel vacuum.
struct DetectorPort {
  std::string name;
  Polarization channel = Polarization::H;  // axis carrying the beam signal
  FieldExpr x;                             // H axis
  FieldExpr y;                             // V axis
  double efficiency = 1.0;                 // K

  const FieldExpr& component(Polarization p) const { return p == Polarization::H ? x : y; }
  const FieldExpr& signal() const { return component(channel); }
  const SpaceTimeEvent& event() const { return x.event(); }

  /// Copy with both components evaluated at detection time `t`.
  DetectorPort at_time(double time_s) const;
};

/// Signal/idler components of one crystal's output, in the canonical
/// first-order form  F = a_direct + gV a*_partner.
struct PdcComponents {
  FieldExpr s, p, q, r;
};

struct PdcBeams {
  Beam signal;  // F_s i + F_p j
  Beam idler;   // F_q i - F_r j
  PdcComponents components;
};

struct BeamSplitter {};
struct PolarizingBeamSplitter {};
struct PhaseShifter {
  double phase_rad = 0.0;
  Polarization polarization = Polarization::V;
};
struct Propagation {
  double distance_m = 0.0;
};
using ElementSpec = std::variant<BeamSplitter, PolarizingBeamSplitter, PhaseShifter, Propagation>;

/// Throws InvalidArgument for phases outside [0, 2pi) or negative distances.
void validate(const ElementSpec& element);

/// Allocates the crystal's four mode sets and returns its two beams at the
/// crystal centre. Throws ModeError if the crystal was already used.
PdcBeams pdc_source(Source crystal, const CovarianceModel& model, ModeRegistry& registry,
                    double omega_rad_s);

/// Balanced splitter: out1 = (i a + b)/sqrt2, out2 = (a + i b)/sqrt2 per axis.
std::pair<Beam, Beam> apply_bs(const Beam& in_a, const Beam& in_b);

/// Polarizing splitter transmitting H and reflecting V, with one fresh
/// idle-channel vacuum pair entering the unused input:
///   DH = in.h i + i Z_V j,     DV = Z_H i - i in.v j.
/// Ports are named "DH<label>" and "DV<label>".
std::pair<DetectorPort, DetectorPort> apply_pbs(const Beam& in, ModeRegistry& registry,
                                                const std::string& label);

/// Multiplies the chosen component by exp(i phi).
Beam apply_phase(const Beam& in, Polarization pol, double phi_rad);

/// Free flight over `distance_m`: retards every term by d/c and multiplies
/// by exp(i omega d / c). Throws InvalidArgument for d < 0.
FieldExpr propagate(const FieldExpr& in, double distance_m);
Beam propagate(const Beam& in, double distance_m);

/// Single-beam elements (phase shifter, propagation).
Beam apply(const ElementSpec& element, const Beam& in);

}  // namespace wigswap
