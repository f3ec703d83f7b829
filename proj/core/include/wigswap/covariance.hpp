#pragma once

#include <span>

#include "wigswap/field_expr.hpp"
#include "wigswap/modes.hpp"

namespace wigswap {

enum class KernelShape { Gaussian };

/// Second-order statistics of the zeropoint field and of the PDC coupling.
///
/// <a_m a*_m> = vacuum_norm; <a_m a_n> = <a*_m a*_n> = 0; distinct modes are
/// independent. A vacuum/amplified pairing of one mode is additionally
/// weighted by the signal-idler kernel nu(t_idler - t_signal).
struct CovarianceModel {
  /// Vacuum variance <|a|^2> of a mode under W(a) = (2/pi) exp(-2|a|^2).
  static constexpr double kVacuumNorm = 0.5;

  double vacuum_norm = kVacuumNorm;
  double coupling = 0.1;         // g
  Complex pump{1.0, 0.0};        // V
  double correlation_time_s = 1e-12;
  KernelShape kernel_shape = KernelShape::Gaussian;

  /// gV, the first-order amplitude of the down-converted term.
  Complex pdc_amplitude() const { return coupling * pump; }

  /// nu(tau): 1 at tau = 0, decays on the scale of correlation_time_s.
  Complex kernel(double tau_s) const;

  /// Throws InvalidArgument on non-positive vacuum_norm or correlation time.
  void validate() const;
};

/// <A B> under the vacuum measure.
Complex pair_correlation(const FieldExpr& a, const FieldExpr& b, const CovarianceModel& model);

/// Same as above, and throws ModeError if a term references a mode that the
/// registry does not know.
Complex pair_correlation(const FieldExpr& a, const FieldExpr& b, const CovarianceModel& model,
                         const ModeRegistry& registry);

/// <ABCD> = <AB><CD> + <AC><BD> + <AD><BC>.
Complex isserlis_quadruple(const FieldExpr& a, const FieldExpr& b, const FieldExpr& c,
                           const FieldExpr& d, const CovarianceModel& model);

/// Mean of the product of an even number of zero-mean jointly Gaussian
/// factors: the sum over all perfect pairings. Odd counts give zero.
Complex gaussian_moment(std::span<const FieldExpr> factors, const CovarianceModel& model);

/// <|F_0|^2>, the intensity carried by the vacuum inputs alone.
double vacuum_intensity(const FieldExpr& expr, const CovarianceModel& model);

/// Throws ModeError unless every mode referenced by `expr` is registered.
void check_modes(const FieldExpr& expr, const ModeRegistry& registry);

}  // namespace wigswap
