#include "wigswap/correlation.hpp"

#include <cmath>
#include <string>

#include "wigswap/errors.hpp"

namespace wigswap {

namespace {

constexpr std::array<Polarization, 2> kAxes{Polarization::H, Polarization::V};

}  // namespace

double checked_probability(double value) {
  if (value >= 0.0) return value;
  if (value >= -kNegativeProbabilityTolerance) return 0.0;
  throw ConsistencyError("negative probability " + std::to_string(value));
}

double single_rate(const DetectorPort& port, const CovarianceModel& model) {
  double excess = 0.0;
  for (Polarization p : kAxes) {
    const FieldExpr& f = port.component(p);
    excess += pair_correlation(f, conj(f), model).real() - vacuum_intensity(f, model);
  }
  return checked_probability(port.efficiency * excess);
}

double joint_probability(const DetectorPort& a, const DetectorPort& b,
                         const CovarianceModel& model) {
  double sum = 0.0;
  for (Polarization pa : kAxes)
    for (Polarization pb : kAxes)
      sum += std::norm(pair_correlation(a.component(pa), b.component(pb), model));
  return checked_probability(a.efficiency * b.efficiency * sum);
}

ProbabilityReport quadruple_probability(const DetectorPort& a, const DetectorPort& b,
                                        const DetectorPort& c, const DetectorPort& d,
                                        const CovarianceModel& model) {
  ProbabilityReport report;
  double sum = 0.0;
  for (Polarization la : kAxes)
    for (Polarization lb : kAxes)
      for (Polarization lc : kAxes)
        for (Polarization ld : kAxes) {
          const FieldExpr& fa = a.component(la);
          const FieldExpr& fb = b.component(lb);
          const FieldExpr& fc = c.component(lc);
          const FieldExpr& fd = d.component(ld);
          PairingTerm t;
          t.selection = {la, lb, lc, ld};
          t.pairings = {
              pair_correlation(fa, fb, model) * pair_correlation(fc, fd, model),
              pair_correlation(fa, fc, model) * pair_correlation(fb, fd, model),
              pair_correlation(fa, fd, model) * pair_correlation(fb, fc, model),
          };
          t.correlation = t.pairings[0] + t.pairings[1] + t.pairings[2];
          sum += std::norm(t.correlation);
          if (t.correlation != Complex{}) report.contributions.push_back(t);
        }
  const double k = a.efficiency * b.efficiency * c.efficiency * d.efficiency;
  report.value = checked_probability(k * sum);
  return report;
}

Complex double_detection_correlation(const FieldExpr& a, const FieldExpr& b, const FieldExpr& c,
                                     const CovarianceModel& model) {
  return 2.0 * pair_correlation(a, b, model) * pair_correlation(b, c, model);
}

Complex double_detection_correlation(const DetectorPort& a, const DetectorPort& b,
                                     const DetectorPort& c, const CovarianceModel& model) {
  return double_detection_correlation(a.signal(), b.signal(), c.signal(), model);
}

double double_detection_probability(const DetectorPort& a, const DetectorPort& b,
                                    const DetectorPort& c, const CovarianceModel& model) {
  const double k = a.efficiency * b.efficiency * b.efficiency * c.efficiency;
  return checked_probability(k * std::norm(double_detection_correlation(a, b, c, model)) / 2.0);
}

WickCheck wick_expansion_check(const DetectorPort& a, const DetectorPort& b,
                               const DetectorPort& c, const DetectorPort& d,
                               const CovarianceModel& model) {
  WickCheck out;
  const double k = a.efficiency * b.efficiency * c.efficiency * d.efficiency;

  // Grouped route: the diagonal products factor into joint probabilities
  // (with the K's stripped), the off-diagonal pairings interfere.
  auto bare_joint = [&](const DetectorPort& x, const DetectorPort& y) {
    return joint_probability(x, y, model) / (x.efficiency * y.efficiency);
  };
  double grouped = bare_joint(a, b) * bare_joint(c, d) + bare_joint(a, c) * bare_joint(b, d) +
                   bare_joint(a, d) * bare_joint(b, c);
  double modulus = 0.0;
  for (Polarization la : kAxes)
    for (Polarization lb : kAxes)
      for (Polarization lc : kAxes)
        for (Polarization ld : kAxes) {
          const FieldExpr& fa = a.component(la);
          const FieldExpr& fb = b.component(lb);
          const FieldExpr& fc = c.component(lc);
          const FieldExpr& fd = d.component(ld);
          const Complex x1 = pair_correlation(fa, fb, model) * pair_correlation(fc, fd, model);
          const Complex x2 = pair_correlation(fa, fc, model) * pair_correlation(fb, fd, model);
          const Complex x3 = pair_correlation(fa, fd, model) * pair_correlation(fb, fc, model);
          grouped += 2.0 * (std::conj(x1) * x2 + std::conj(x1) * x3 + std::conj(x2) * x3).real();
          modulus += std::norm(isserlis_quadruple(fa, fb, fc, fd, model));
        }
  out.via_grouped = checked_probability(k * grouped);
  out.via_modulus = checked_probability(k * modulus);
  return out;
}

double intensity_moment(std::span<const DetectorPort> ports, const CovarianceModel& model) {
  const std::size_t n = ports.size();
  if (n == 0) return 1.0;
  if (n > 16) throw InvalidArgument("intensity_moment: too many ports");

  std::vector<double> zpf(n);
  double k = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    zpf[i] = vacuum_intensity(ports[i].x, model) + vacuum_intensity(ports[i].y, model);
    k *= ports[i].efficiency;
  }

  // E[prod (I_i - z_i)] = sum_S prod_{i not in S} (-z_i) E[prod_{i in S} I_i],
  // and E[prod I_i] expands over axis selections into Gaussian moments of
  // the factors F, F*.
  double total = 0.0;
  std::vector<FieldExpr> factors;
  for (unsigned subset = 0; subset < (1u << n); ++subset) {
    double weight = 1.0;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (subset & (1u << i)) members.push_back(i);
      else weight *= -zpf[i];
    }
    if (weight == 0.0) continue;
    double moment = 0.0;
    const std::size_t m = members.size();
    for (unsigned axes = 0; axes < (1u << m); ++axes) {
      factors.clear();
      for (std::size_t j = 0; j < m; ++j) {
        const FieldExpr& f = ports[members[j]].component(kAxes[(axes >> j) & 1u]);
        factors.push_back(f);
        factors.push_back(conj(f));
      }
      moment += gaussian_moment(factors, model).real();
    }
    total += weight * moment;
  }
  return checked_probability(k * total);
}

}  // namespace wigswap
