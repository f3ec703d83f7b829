#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "wigswap/covariance.hpp"
#include "wigswap/optics.hpp"

namespace wigswap {

enum class PortName { DH1, DV1, DH2, DV2, DH3, DV3, DH4, DV4 };
inline constexpr std::array<PortName, 8> kAllPorts{PortName::DH1, PortName::DV1, PortName::DH2,
                                                   PortName::DV2, PortName::DH3, PortName::DV3,
                                                   PortName::DH4, PortName::DV4};

std::string to_string(PortName p);
/// Throws InvalidArgument for unknown names.
PortName parse_port(std::string_view name);
/// Detection area 1..4 of a port.
int area(PortName p);
Polarization channel(PortName p);
bool is_bsm_port(PortName p);

/// Carrier frequency of 810 nm light, the usual degenerate PDC wavelength.
inline constexpr double kDefaultOmega = 2.0 * 3.14159265358979323846 * kSpeedOfLight / 810e-9;

/// A local phase applied to one beam before its polarizing splitter.
struct PhaseCorrection {
  int beam = 4;  // 1..4
  Polarization polarization = Polarization::V;
  double phase_rad = 0.0;
};

/// Everything needed to build the two-crystal swapping experiment.
struct ScenarioParams {
  CovarianceModel model;
  double omega_rad_s = kDefaultOmega;
  std::array<double, 4> arm_lengths_m{1.0, 1.0, 1.0, 1.0};  // source -> detector, per beam
  std::array<double, 8> detection_times_s{};                // indexed by PortName
  std::vector<PhaseCorrection> corrections;

  /// Throws InvalidArgument on negative lengths, non-finite times, bad beams.
  void validate() const;
};

/// The built experiment: four source beams, a balanced splitter on beams 2
/// and 3, and four polarizing splitters feeding eight detectors.
class SwappingScenario {
 public:
  const ScenarioParams& params() const { return params_; }
  const CovarianceModel& model() const { return params_.model; }
  const ModeRegistry& registry() const { return registry_; }

  const DetectorPort& port(PortName p) const { return ports_[static_cast<std::size_t>(p)]; }
  const std::array<DetectorPort, 8>& ports() const { return ports_; }

  /// Beam 1..4 after its arm (and any corrections), before the BSM optics.
  const Beam& beam(int index) const;

  /// Source component named as in the field decomposition ("s'", "p", ...)
  /// propagated along its own arm and evaluated at `at`'s detection time.
  /// Corrections are not applied: these are the reference amplitudes.
  FieldExpr source_component(std::string_view name, PortName at) const;

  friend SwappingScenario build_scenario(const ScenarioParams& params);

 private:
  ScenarioParams params_;
  ModeRegistry registry_;
  std::array<Beam, 4> beams_;
  std::array<DetectorPort, 8> ports_;
  PdcComponents primed_, unprimed_;  // crystal 1 / crystal 2, propagated
};

/// Two PDC sources, arm propagation, corrections, BS on beams 2 and 3,
/// PBS on 1, both BS outputs and 4; BS output 1 feeds area 2.
SwappingScenario build_scenario(const ScenarioParams& params);

}  // namespace wigswap
