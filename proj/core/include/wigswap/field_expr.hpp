#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>

#include "wigswap/modes.hpp"

namespace wigswap {

using Complex = std::complex<double>;

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
/// Coefficients with modulus below this are dropped from expressions.
inline constexpr double kPruneThreshold = 1e-15;

/// Where and when an amplitude is evaluated.
struct SpaceTimeEvent {
  std::string position_label;
  double path_length_m = 0.0;
  double time_s = 0.0;

  /// Throws InvalidArgument on negative path length.
  void validate() const;
  bool operator==(const SpaceTimeEvent&) const = default;
};

/// Zeroth-order (vacuum input) versus first-order (down-converted) term.
/// Only a vacuum/amplified pairing of one mode carries the PDC kernel.
enum class Origin { Vacuum, Amplified };

struct TermKey {
  BasisVar var;
  Origin origin = Origin::Vacuum;
  /// Accumulated propagation delay d/c from the crystal to here.
  double retardation_s = 0.0;

  auto operator<=>(const TermKey&) const = default;
  bool operator==(const TermKey&) const = default;

  /// Wavevector of the beam this term travels in.
  Wavevector beam_wavevector() const;
};

/// Sparse complex-linear form over zeropoint amplitudes, evaluated at an event.
///
/// The value at event (r, t) of a term with retardation d/c is the source
/// amplitude at time t - d/c; the vacuum mean of every expression is zero.
class FieldExpr {
 public:
  using Terms = std::map<TermKey, Complex>;

  FieldExpr() = default;
  FieldExpr(SpaceTimeEvent event, double omega_rad_s);

  /// A single unit-coefficient vacuum term.
  static FieldExpr mode(const ModeId& m, SpaceTimeEvent event, double omega_rad_s);

  const Terms& terms() const { return terms_; }
  const SpaceTimeEvent& event() const { return event_; }
  double central_frequency() const { return omega_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Adds `c` to the coefficient of `key`; drops the term if it cancels.
  void add(const TermKey& key, Complex c);

  /// Coefficient of `key` (zero if absent).
  Complex coefficient(const TermKey& key) const;

  FieldExpr with_event(SpaceTimeEvent event) const;
  FieldExpr with_time(double time_s) const;
  FieldExpr scaled(Complex c) const;

  /// Only the Origin::Vacuum terms, i.e. the g = 0 limit of the amplitude.
  FieldExpr vacuum_part() const;

  bool operator==(const FieldExpr&) const = default;

 private:
  Terms terms_;
  SpaceTimeEvent event_;
  double omega_ = 0.0;
};

/// Complex conjugate: conjugates coefficients and toggles every BasisVar.
FieldExpr conj(const FieldExpr& expr);

/// Termwise sum of coeffs[i] * exprs[i] at `event`.
/// Throws FrequencyMismatch unless all exprs share one carrier frequency.
FieldExpr linear_combine(std::span<const Complex> coeffs, std::span<const FieldExpr> exprs,
                         SpaceTimeEvent event);

/// Two-term convenience overload; the event of `a` is kept.
FieldExpr linear_combine(Complex ca, const FieldExpr& a, Complex cb, const FieldExpr& b);

/// Unit phasor exp(i*phi), exact for integer multiples of pi/2.
Complex unit_phasor(double phi);

}  // namespace wigswap
