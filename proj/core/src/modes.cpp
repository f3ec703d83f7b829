#include "wigswap/modes.hpp"

#include <algorithm>

#include "wigswap/errors.hpp"

namespace wigswap {

std::string to_string(Source s) {
  switch (s) {
    case Source::Crystal1: return "Crystal1";
    case Source::Crystal2: return "Crystal2";
    case Source::IdleChannel: return "Idle";
  }
  return "?";
}

std::string to_string(Wavevector k) {
  switch (k) {
    case Wavevector::k1: return "k1";
    case Wavevector::k2: return "k2";
    case Wavevector::k3: return "k3";
    case Wavevector::k4: return "k4";
    case Wavevector::idle: return "idle";
  }
  return "?";
}

std::string to_string(Polarization p) { return p == Polarization::H ? "H" : "V"; }

std::string to_string(const ModeId& m) {
  std::string s = to_string(m.source);
  if (m.source == Source::IdleChannel) s += "[" + m.port_label + "]";
  s += ":" + to_string(m.wavevector) + "," + to_string(m.polarization);
  if (m.index != 0) s += "#" + std::to_string(m.index);
  return s;
}

void ModeId::validate() const {
  const bool ok = [&] {
    switch (source) {
      case Source::Crystal1: return wavevector == Wavevector::k1 || wavevector == Wavevector::k2;
      case Source::Crystal2: return wavevector == Wavevector::k3 || wavevector == Wavevector::k4;
      case Source::IdleChannel: return wavevector == Wavevector::idle;
    }
    return false;
  }();
  if (!ok) throw ModeError("illegal mode " + to_string(*this));
  if (source != Source::IdleChannel && !port_label.empty())
    throw ModeError("source mode carries a port label: " + to_string(*this));
}

Wavevector pdc_partner(Wavevector k) {
  switch (k) {
    case Wavevector::k1: return Wavevector::k2;
    case Wavevector::k2: return Wavevector::k1;
    case Wavevector::k3: return Wavevector::k4;
    case Wavevector::k4: return Wavevector::k3;
    case Wavevector::idle: break;
  }
  throw ModeError("idle modes have no down-conversion partner");
}

bool is_signal_side(Wavevector k) { return k == Wavevector::k1 || k == Wavevector::k3; }

ModeRegistry::SourceModes ModeRegistry::allocate_source(Source crystal) {
  if (crystal == Source::IdleChannel) throw ModeError("idle channels are not PDC sources");
  if (!crystals_.insert(crystal).second)
    throw ModeError("mode sets of " + to_string(crystal) + " already allocated");

  const bool first = crystal == Source::Crystal1;
  const Wavevector ks = first ? Wavevector::k1 : Wavevector::k3;
  const Wavevector ki = first ? Wavevector::k2 : Wavevector::k4;
  SourceModes out{
      {crystal, ks, Polarization::H, {}, 0},
      {crystal, ks, Polarization::V, {}, 0},
      {crystal, ki, Polarization::H, {}, 0},
      {crystal, ki, Polarization::V, {}, 0},
  };
  for (const ModeId* m : {&out.signal_h, &out.signal_v, &out.idler_h, &out.idler_v}) {
    m->validate();
    modes_.insert(*m);
    ++source_sets_;
  }
  return out;
}

ModeRegistry::IdleModes ModeRegistry::allocate_idle(const std::string& port_label) {
  const int index = static_cast<int>(idle_sets_.size());
  IdleModes out{
      {Source::IdleChannel, Wavevector::idle, Polarization::H, port_label, index},
      {Source::IdleChannel, Wavevector::idle, Polarization::V, port_label, index},
  };
  if (std::find(idle_sets_.begin(), idle_sets_.end(), port_label) != idle_sets_.end())
    throw ModeError("idle channel '" + port_label + "' already allocated");
  modes_.insert(out.h);
  modes_.insert(out.v);
  idle_sets_.push_back(port_label);
  return out;
}

}  // namespace wigswap
