#pragma once

#include <array>
#include <span>
#include <vector>

#include "wigswap/covariance.hpp"
#include "wigswap/optics.hpp"

namespace wigswap {

/// Analytic probabilities below this magnitude of negativity are rounding
/// noise and clamp to zero; anything more negative is a ConsistencyError.
inline constexpr double kNegativeProbabilityTolerance = 1e-14;

double checked_probability(double value);

/// One polarization-component selection of a four-fold term.
struct PairingTerm {
  std::array<Polarization, 4> selection{};
  /// <ab><cd>, <ac><bd>, <ad><bc>
  std::array<Complex, 3> pairings{};
  Complex correlation{};  // sum of the three pairings
};

struct ProbabilityReport {
  double value = 0.0;                      // K-weighted
  std::vector<PairingTerm> contributions;  // nonzero selections only
};

/// <I - I_zpf> summed over both axes, times K.
double single_rate(const DetectorPort& port, const CovarianceModel& model);

/// K_a K_b sum_{l,l'} |<F_a,l F_b,l'>|^2.
double joint_probability(const DetectorPort& a, const DetectorPort& b,
                         const CovarianceModel& model);

/// K_a K_b K_c K_d sum over all 16 selections of |<F_a F_b F_c F_d>|^2,
/// each four-point function factorized into its three pairings.
ProbabilityReport quadruple_probability(const DetectorPort& a, const DetectorPort& b,
                                        const DetectorPort& c, const DetectorPort& d,
                                        const CovarianceModel& model);

/// Two photons on the same component b: 2 <a b><b c>. The self-pairing
/// <b b><a c> is left out; it vanishes whenever a and c are uncorrelated.
Complex double_detection_correlation(const FieldExpr& a, const FieldExpr& b, const FieldExpr& c,
                                     const CovarianceModel& model);

/// Same, on the signal axes of three ports.
Complex double_detection_correlation(const DetectorPort& a, const DetectorPort& b,
                                     const DetectorPort& c, const CovarianceModel& model);

/// Probability of a two-photon click at `b` in coincidence with a and c:
/// K_a K_b^2 K_c |2<ab><bc>|^2 / 2!.
double double_detection_probability(const DetectorPort& a, const DetectorPort& b,
                                    const DetectorPort& c, const CovarianceModel& model);

struct WickCheck {
  double via_grouped = 0.0;  // P_ab P_cd + P_ac P_bd + P_ad P_bc + interference terms
  double via_modulus = 0.0;  // sum |<abcd>|^2
};

/// Evaluates the four-fold probability twice: once from the grouped
/// normal-order pairing expansion (products of joint probabilities plus
/// interference terms), once from the modulus-squared form.
WickCheck wick_expansion_check(const DetectorPort& a, const DetectorPort& b,
                               const DetectorPort& c, const DetectorPort& d,
                               const CovarianceModel& model);

/// Exact Gaussian mean of prod_i K_i (I_i - I_zpf,i), summed over both axes
/// of every port, to all orders in g. This is precisely the quantity the
/// Monte Carlo estimators target; the closed forms above keep only its
/// leading order in g.
double intensity_moment(std::span<const DetectorPort> ports, const CovarianceModel& model);

}  // namespace wigswap
