#pragma once

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace wigswap {

enum class Source { Crystal1, Crystal2, IdleChannel };
enum class Wavevector { k1, k2, k3, k4, idle };
enum class Polarization { H, V };

std::string to_string(Source s);
std::string to_string(Wavevector k);
std::string to_string(Polarization p);

constexpr Polarization orthogonal(Polarization p) {
  return p == Polarization::H ? Polarization::V : Polarization::H;
}

/// One zeropoint mode: the atom every field amplitude is built from.
///
/// Crystal1 owns k1/k2, Crystal2 owns k3/k4, idle-channel modes carry
/// Wavevector::idle plus the label of the port they enter through.
struct ModeId {
  Source source = Source::Crystal1;
  Wavevector wavevector = Wavevector::k1;
  Polarization polarization = Polarization::H;
  std::string port_label;  // empty unless source == IdleChannel
  int index = 0;

  auto operator<=>(const ModeId&) const = default;
  bool operator==(const ModeId&) const = default;

  /// Throws ModeError if the source/wavevector combination is illegal.
  void validate() const;
};

std::string to_string(const ModeId& m);

/// A mode amplitude or its complex conjugate.
struct BasisVar {
  ModeId mode;
  bool conjugated = false;

  BasisVar conj() const { return {mode, !conjugated}; }

  auto operator<=>(const BasisVar&) const = default;
  bool operator==(const BasisVar&) const = default;
};

/// Down-conversion partner of a source wavevector (k1<->k2, k3<->k4).
Wavevector pdc_partner(Wavevector k);

/// True for the wavevector of the first beam emitted by each crystal (k1, k3).
bool is_signal_side(Wavevector k);

/// Finite registry of the zeropoint modes that exist in one experiment.
///
/// Scenario construction allocates from it; afterwards it is only read.
class ModeRegistry {
 public:
  /// The four source modes of a crystal: {kS,H}, {kS,V}, {kI,H}, {kI,V}.
  struct SourceModes {
    ModeId signal_h, signal_v, idler_h, idler_v;
  };

  /// The H/V pair entering one idle channel.
  struct IdleModes {
    ModeId h, v;
  };

  SourceModes allocate_source(Source crystal);
  IdleModes allocate_idle(const std::string& port_label);

  bool contains(const ModeId& m) const { return modes_.count(m) != 0; }
  const std::set<ModeId>& modes() const { return modes_; }

  /// Number of amplified source mode sets (one per ModeId, four per crystal).
  std::size_t source_set_count() const { return source_sets_; }
  /// Number of idle-channel injections (one H+V pair each).
  std::size_t idle_set_count() const { return idle_sets_.size(); }

 private:
  std::set<ModeId> modes_;
  std::set<Source> crystals_;
  std::vector<std::string> idle_sets_;
  std::size_t source_sets_ = 0;
};

}  // namespace wigswap
