#include "wigswap/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wigswap/correlation.hpp"
#include "wigswap/errors.hpp"

namespace wigswap {

CoincidencePattern::CoincidencePattern(PortName a, PortName b)
    : first_(std::min(a, b)), second_(std::max(a, b)) {
  if (!is_bsm_port(a) || !is_bsm_port(b))
    throw InvalidArgument("coincidence pattern ports must belong to the analyser");
}

std::string CoincidencePattern::label() const {
  return to_string(first_) + "+" + to_string(second_);
}

std::string to_string(BellLabel l) {
  switch (l) {
    case BellLabel::PsiPlus: return "psi+";
    case BellLabel::PsiMinus: return "psi-";
    case BellLabel::PhiAmbiguous: return "phi-ambiguous";
    case BellLabel::UnresolvableNull: return "unresolvable-null";
  }
  return "?";
}

std::string to_string(Correction c) {
  switch (c) {
    case Correction::Identity: return "identity";
    case Correction::PiPhaseBeam4V: return "pi-phase-beam4-V";
    case Correction::Unavailable: return "none";
  }
  return "?";
}

std::vector<CoincidencePattern> all_bsm_patterns() {
  const PortName bsm[] = {PortName::DH2, PortName::DV2, PortName::DH3, PortName::DV3};
  std::vector<CoincidencePattern> out;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i; j < 4; ++j) out.emplace_back(bsm[i], bsm[j]);
  return out;
}

BellOutcome classify_pattern(const CoincidencePattern& p) {
  if (p.doubled()) return {BellLabel::PhiAmbiguous, Correction::Unavailable};
  const bool same_axis = channel(p.first()) == channel(p.second());
  if (same_axis) return {BellLabel::UnresolvableNull, Correction::Unavailable};
  if (area(p.first()) == area(p.second())) return {BellLabel::PsiPlus, Correction::PiPhaseBeam4V};
  return {BellLabel::PsiMinus, Correction::Identity};
}

SwappingScenario apply_feedforward(const SwappingScenario& sc, const BellOutcome& outcome) {
  switch (outcome.correction) {
    case Correction::Identity: return sc;
    case Correction::PiPhaseBeam4V: {
      ScenarioParams params = sc.params();
      params.corrections.push_back({4, Polarization::V, std::numbers::pi});
      return build_scenario(params);
    }
    case Correction::Unavailable: break;
  }
  throw CorrectionUnavailable("no local correction for outcome " + to_string(outcome.label));
}

namespace {

const SignRow* find_row(const std::vector<SignRow>& table, PortName a, PortName b,
                        OuterPair outer) {
  const auto lo = std::min(a, b);
  const auto hi = std::max(a, b);
  for (const auto& r : table)
    if (r.outer == outer && std::min(r.bsm[0], r.bsm[1]) == lo && std::max(r.bsm[0], r.bsm[1]) == hi)
      return &r;
  return nullptr;
}

}  // namespace

int conditional_signature(const std::vector<SignRow>& table, PortName bsm_a, PortName bsm_b) {
  const SignRow* hv = find_row(table, bsm_a, bsm_b, OuterPair::H1V4);
  const SignRow* vh = find_row(table, bsm_a, bsm_b, OuterPair::V1H4);
  if (!hv || !vh) throw InvalidArgument("no conditional rows for this BSM pair");
  if (hv->prefactor == Complex{} || vh->prefactor == Complex{}) return 0;
  const Complex r = hv->prefactor / vh->prefactor;
  // Prefactors are exact quarter-turn multiples of 1/2; the ratio is +-1.
  if (std::abs(r.imag()) > 1e-9 * std::abs(r)) return 0;
  return r.real() > 0 ? 1 : -1;
}

WitnessReport swapped_pair_witness(const SwappingScenario& sc, const CoincidencePattern& p) {
  WitnessReport rep{p, classify_pattern(p), {}, 0, {}, false, {}};

  const DetectorPort& d1h = sc.port(PortName::DH1);
  const DetectorPort& d1v = sc.port(PortName::DV1);
  const DetectorPort& d4h = sc.port(PortName::DH4);
  const DetectorPort& d4v = sc.port(PortName::DV4);
  // Beam-1 and beam-4 signal amplitudes on each axis.
  const FieldExpr* b1[] = {&d1h.x, &d1v.y};
  const FieldExpr* b4[] = {&d4h.x, &d4v.y};
  bool zero = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const Complex c = pair_correlation(*b1[i], *b4[j], sc.model());
      rep.outer_pair_correlations[static_cast<std::size_t>(2 * i + j)] = c;
      zero = zero && c == Complex{} &&
             pair_correlation(*b1[i], conj(*b4[j]), sc.model()) == Complex{};
    }
  rep.outer_uncorrelated = zero;

  switch (rep.outcome.label) {
    case BellLabel::PsiPlus:
    case BellLabel::PsiMinus: {
      const auto table = sign_table(sc);
      for (OuterPair o : {OuterPair::H1V4, OuterPair::V1H4})
        if (const SignRow* r = find_row(table, p.first(), p.second(), o)) rep.rows.push_back(*r);
      rep.signature = conditional_signature(table, p.first(), p.second());
      break;
    }
    case BellLabel::PhiAmbiguous: {
      rep.double_detections = double_detection_table(sc);
      break;
    }
    case BellLabel::UnresolvableNull: break;
  }
  return rep;
}

}  // namespace wigswap
