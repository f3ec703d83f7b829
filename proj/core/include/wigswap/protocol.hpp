#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "wigswap/scenario.hpp"
#include "wigswap/sign_table.hpp"

namespace wigswap {

/// Two clicks at the Bell-state analyser: two distinct ports or one port
/// fired twice. Construction throws InvalidArgument for non-BSM ports.
class CoincidencePattern {
 public:
  CoincidencePattern(PortName a, PortName b);

  PortName first() const { return first_; }
  PortName second() const { return second_; }
  bool doubled() const { return first_ == second_; }
  std::string label() const;

  bool operator==(const CoincidencePattern&) const = default;

 private:
  PortName first_, second_;  // sorted
};

enum class BellLabel { PsiPlus, PsiMinus, PhiAmbiguous, UnresolvableNull };
enum class Correction { Identity, PiPhaseBeam4V, Unavailable };

std::string to_string(BellLabel l);
std::string to_string(Correction c);

struct BellOutcome {
  BellLabel label = BellLabel::PsiMinus;
  Correction correction = Correction::Identity;
};

/// Every two-click pattern at the analyser: 6 distinct pairs, 4 doubles.
std::vector<CoincidencePattern> all_bsm_patterns();

/// Pure function of the pattern:
///   same-area H+V           -> PsiPlus,  pi phase on beam 4 V
///   cross-area H+V          -> PsiMinus, identity
///   one port twice          -> PhiAmbiguous, no correction
///   cross-area same axis    -> UnresolvableNull, no correction
BellOutcome classify_pattern(const CoincidencePattern& p);

/// New scenario with the outcome's correction applied to beam 4 ahead of its
/// PBS. Throws CorrectionUnavailable for the Phi/null classes.
SwappingScenario apply_feedforward(const SwappingScenario& sc, const BellOutcome& outcome);

/// Ratio sign of the H1/V4 row to the V1/H4 row conditioned on a BSM pair:
/// +1 for the triplet-like signature, -1 for the singlet (alternating) one.
int conditional_signature(const std::vector<SignRow>& table, PortName bsm_a, PortName bsm_b);

struct WitnessReport {
  CoincidencePattern pattern;
  BellOutcome outcome;
  /// The two conditional four-fold rows (empty for Phi/null outcomes).
  std::vector<SignRow> rows;
  /// +1 / -1 as in conditional_signature; 0 when not applicable.
  int signature = 0;
  /// <F_1,l F_4,l'> for l, l' in {H, V}: beam-1 axis by beam-4 axis.
  std::array<Complex, 4> outer_pair_correlations{};
  bool outer_uncorrelated = false;
  /// For doubled ports: all four double-detection rows. Every one of them is
  /// i times its source product, so the signs that separate Phi+ from Phi-
  /// are gone.
  std::vector<TableRow> double_detections;
};

WitnessReport swapped_pair_witness(const SwappingScenario& sc, const CoincidencePattern& p);

}  // namespace wigswap
