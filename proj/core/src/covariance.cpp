#include "wigswap/covariance.hpp"

#include <cmath>
#include <vector>

#include "wigswap/errors.hpp"

namespace wigswap {

Complex CovarianceModel::kernel(double tau_s) const {
  switch (kernel_shape) {
    case KernelShape::Gaussian: {
      const double x = tau_s / correlation_time_s;
      return std::exp(-0.5 * x * x);
    }
  }
  return 0.0;
}

void CovarianceModel::validate() const {
  if (!(vacuum_norm > 0.0)) throw InvalidArgument("vacuum norm must be positive");
  if (!(correlation_time_s > 0.0)) throw InvalidArgument("correlation time must be positive");
  if (!std::isfinite(coupling) || !std::isfinite(pump.real()) || !std::isfinite(pump.imag()))
    throw InvalidArgument("coupling and pump amplitude must be finite");
}

namespace {

double emission_time(const FieldExpr& e, const TermKey& k) {
  return e.event().time_s - k.retardation_s;
}

}  // namespace

Complex pair_correlation(const FieldExpr& a, const FieldExpr& b, const CovarianceModel& model) {
  Complex sum{};
  for (const auto& [ka, ca] : a.terms()) {
    for (const auto& [kb, cb] : b.terms()) {
      if (ka.var.mode != kb.var.mode || ka.var.conjugated == kb.var.conjugated) continue;
      Complex w = model.vacuum_norm * ca * cb;
      if (ka.origin != kb.origin) {
        // Signal-idler cross term: weight by nu(t_idler - t_signal).
        const bool a_signal = is_signal_side(ka.beam_wavevector());
        const double ta = emission_time(a, ka);
        const double tb = emission_time(b, kb);
        w *= model.kernel(a_signal ? tb - ta : ta - tb);
      }
      sum += w;
    }
  }
  return sum;
}

void check_modes(const FieldExpr& expr, const ModeRegistry& registry) {
  for (const auto& [k, c] : expr.terms())
    if (!registry.contains(k.var.mode)) throw ModeError("unknown mode " + to_string(k.var.mode));
}

Complex pair_correlation(const FieldExpr& a, const FieldExpr& b, const CovarianceModel& model,
                         const ModeRegistry& registry) {
  check_modes(a, registry);
  check_modes(b, registry);
  return pair_correlation(a, b, model);
}

Complex isserlis_quadruple(const FieldExpr& a, const FieldExpr& b, const FieldExpr& c,
                           const FieldExpr& d, const CovarianceModel& model) {
  return pair_correlation(a, b, model) * pair_correlation(c, d, model) +
         pair_correlation(a, c, model) * pair_correlation(b, d, model) +
         pair_correlation(a, d, model) * pair_correlation(b, c, model);
}

namespace {

// Sum over perfect matchings of the index set `idx` (hafnian expansion).
Complex hafnian(const std::vector<std::vector<Complex>>& pairs, std::vector<int>& idx) {
  if (idx.empty()) return 1.0;
  const int first = idx.back();
  idx.pop_back();
  Complex sum{};
  for (std::size_t j = 0; j < idx.size(); ++j) {
    const Complex p = pairs[first][idx[j]];
    if (p == Complex{}) continue;
    const int partner = idx[j];
    idx.erase(idx.begin() + static_cast<std::ptrdiff_t>(j));
    sum += p * hafnian(pairs, idx);
    idx.insert(idx.begin() + static_cast<std::ptrdiff_t>(j), partner);
  }
  idx.push_back(first);
  return sum;
}

}  // namespace

Complex gaussian_moment(std::span<const FieldExpr> factors, const CovarianceModel& model) {
  const std::size_t n = factors.size();
  if (n % 2 != 0) return 0.0;
  std::vector<std::vector<Complex>> pairs(n, std::vector<Complex>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      pairs[i][j] = pairs[j][i] = pair_correlation(factors[i], factors[j], model);
  std::vector<int> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = static_cast<int>(i);
  return hafnian(pairs, idx);
}

double vacuum_intensity(const FieldExpr& expr, const CovarianceModel& model) {
  const FieldExpr v = expr.vacuum_part();
  return pair_correlation(v, conj(v), model).real();
}

}  // namespace wigswap
