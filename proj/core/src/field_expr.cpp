#include "wigswap/field_expr.hpp"

#include <cmath>
#include <numbers>

#include "wigswap/errors.hpp"

namespace wigswap {

void SpaceTimeEvent::validate() const {
  if (!(path_length_m >= 0.0))
    throw InvalidArgument("negative path length at '" + position_label + "'");
}

Wavevector TermKey::beam_wavevector() const {
  const Wavevector k = var.mode.wavevector;
  if (origin == Origin::Vacuum || k == Wavevector::idle) return k;
  return pdc_partner(k);
}

FieldExpr::FieldExpr(SpaceTimeEvent event, double omega_rad_s)
    : event_(std::move(event)), omega_(omega_rad_s) {
  event_.validate();
}

FieldExpr FieldExpr::mode(const ModeId& m, SpaceTimeEvent event, double omega_rad_s) {
  FieldExpr e(std::move(event), omega_rad_s);
  e.add({{m, false}, Origin::Vacuum, 0.0}, 1.0);
  return e;
}

void FieldExpr::add(const TermKey& key, Complex c) {
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < kPruneThreshold) terms_.erase(it);
}

Complex FieldExpr::coefficient(const TermKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Complex{} : it->second;
}

FieldExpr FieldExpr::with_event(SpaceTimeEvent event) const {
  event.validate();
  FieldExpr e = *this;
  e.event_ = std::move(event);
  return e;
}

FieldExpr FieldExpr::with_time(double time_s) const {
  FieldExpr e = *this;
  e.event_.time_s = time_s;
  return e;
}

FieldExpr FieldExpr::scaled(Complex c) const {
  FieldExpr e(event_, omega_);
  for (const auto& [key, coeff] : terms_) e.add(key, c * coeff);
  return e;
}

FieldExpr FieldExpr::vacuum_part() const {
  FieldExpr e(event_, omega_);
  for (const auto& [key, coeff] : terms_)
    if (key.origin == Origin::Vacuum) e.terms_.emplace(key, coeff);
  return e;
}

FieldExpr conj(const FieldExpr& expr) {
  FieldExpr e(expr.event(), expr.central_frequency());
  for (const auto& [key, coeff] : expr.terms())
    e.add({key.var.conj(), key.origin, key.retardation_s}, std::conj(coeff));
  return e;
}

FieldExpr linear_combine(std::span<const Complex> coeffs, std::span<const FieldExpr> exprs,
                         SpaceTimeEvent event) {
  if (coeffs.size() != exprs.size())
    throw InvalidArgument("linear_combine: coefficient/expression count mismatch");
  const double omega = exprs.empty() ? 0.0 : exprs.front().central_frequency();
  for (const auto& x : exprs)
    if (x.central_frequency() != omega)
      throw FrequencyMismatch("linear_combine: expressions have different carrier frequencies");

  FieldExpr out(std::move(event), omega);
  for (std::size_t i = 0; i < exprs.size(); ++i) {
    if (coeffs[i] == Complex{}) continue;
    for (const auto& [key, c] : exprs[i].terms()) out.add(key, coeffs[i] * c);
  }
  return out;
}

FieldExpr linear_combine(Complex ca, const FieldExpr& a, Complex cb, const FieldExpr& b) {
  const Complex cs[] = {ca, cb};
  const FieldExpr xs[] = {a, b};
  return linear_combine(cs, xs, a.event());
}

Complex unit_phasor(double phi) {
  const double quarter = phi / (std::numbers::pi / 2);
  const double r = std::round(quarter);
  if (std::abs(quarter - r) < 1e-12) {
    switch (((static_cast<long long>(r) % 4) + 4) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return std::polar(1.0, phi);
}

}  // namespace wigswap
