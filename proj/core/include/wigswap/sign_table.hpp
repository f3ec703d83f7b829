#pragma once

#include <array>
#include <string>
#include <vector>

#include "wigswap/scenario.hpp"

namespace wigswap {

enum class Sector { PsiPlus, PsiMinus };

std::string to_string(Sector s);

/// A correlation of detector signal axes, together with the product of the
/// source-level correlations it reduces to and the ratio between them.
struct TableRow {
  std::string label;           // port pattern, e.g. "DH1.DH2.DV2.DV4"
  std::vector<PortName> ports;
  Complex value{};
  Complex reference{};         // product of source-level pair correlations
  Complex prefactor{};         // value / reference (0 if reference vanishes)
};

/// Which orthogonal outer combination a four-fold row belongs to.
enum class OuterPair { H1V4, V1H4 };

struct SignRow : TableRow {
  Sector sector = Sector::PsiPlus;
  OuterPair outer = OuterPair::H1V4;
  std::array<PortName, 2> bsm{};  // the two BSM clicks
};

/// The eight correlated (BSM port, outer port) pairs; prefactors are
/// +-1/sqrt2 or +-i/sqrt2.
std::vector<TableRow> pair_table(const SwappingScenario& sc);

/// The eight orthogonal-polarization four-fold correlations: four for
/// same-area BSM clicks (all with prefactor -i/2) and four for cross-area
/// clicks (prefactors -1/2, +1/2, +1/2, -1/2 in table order).
std::vector<SignRow> sign_table(const SwappingScenario& sc);

/// The two same-polarization BSM correlations <DH1 DV2 DV3 DH4> and
/// <DV1 DH2 DH3 DV4>; reference/prefactor are left zero.
std::vector<TableRow> same_polarization_table(const SwappingScenario& sc);

/// <F_a F_b F_b F_c> for each BSM port doubled, outer ports sharing a
/// polarization; every prefactor is i.
std::vector<TableRow> double_detection_table(const SwappingScenario& sc);

}  // namespace wigswap
