#include "doctest.h"

#include <cmath>
#include <numbers>

#include "wigswap/errors.hpp"
#include "wigswap/optics.hpp"

using namespace wigswap;

namespace {

constexpr double kOmega = 2.3e15;
constexpr Complex kI{0.0, 1.0};

Complex corr(const FieldExpr& a, const FieldExpr& b, const CovarianceModel& m) {
  return pair_correlation(a, b, m);
}

double intensity(const FieldExpr& a, const CovarianceModel& m) {
  return corr(a, conj(a), m).real();
}

bool same_terms(const FieldExpr& a, const FieldExpr& b) {
  if (a.size() != b.size()) return false;
  for (const auto& [k, c] : a.terms())
    if (std::abs(b.coefficient(k) - c) > 1e-15) return false;
  return true;
}

}  // namespace

TEST_CASE("PDC source correlates orthogonally polarized partners only") {
  CovarianceModel m;
  m.coupling = 0.2;
  m.pump = {0.0, 1.0};
  ModeRegistry reg;
  PdcBeams b = pdc_source(Source::Crystal2, m, reg, kOmega);
  const Complex g = m.pdc_amplitude();
  const auto& c = b.components;
  CHECK(std::abs(corr(c.p, c.q, m) - g) < 1e-15);
  CHECK(std::abs(corr(c.s, c.r, m) - g) < 1e-15);
  CHECK(corr(c.s, c.q, m) == Complex{});
  CHECK(corr(c.p, c.r, m) == Complex{});
  CHECK(corr(c.s, c.p, m) == Complex{});
  CHECK(b.signal.label() == "3");
  CHECK(b.idler.label() == "4");
  CHECK(b.signal.h() == c.s);
  CHECK(b.idler.v() == c.r.scaled(-1.0));
  CHECK(reg.source_set_count() == 4);
  // Each amplitude carries vacuum plus |gV|^2 of amplified noise.
  CHECK(intensity(c.s, m) == doctest::Approx(0.5 * (1.0 + std::norm(g))));
}

TEST_CASE("the two crystals are independent") {
  CovarianceModel m;
  ModeRegistry reg;
  PdcBeams b1 = pdc_source(Source::Crystal1, m, reg, kOmega);
  PdcBeams b2 = pdc_source(Source::Crystal2, m, reg, kOmega);
  for (const auto* x : {&b1.components.s, &b1.components.p, &b1.components.q, &b1.components.r})
    for (const auto* y : {&b2.components.s, &b2.components.p, &b2.components.q, &b2.components.r}) {
      CHECK(corr(*x, *y, m) == Complex{});
      CHECK(corr(*x, conj(*y), m) == Complex{});
    }
}

TEST_CASE("beam splitter is unitary on the intensity and cross moments") {
  CovarianceModel m;
  m.coupling = 0.3;
  ModeRegistry reg;
  PdcBeams b1 = pdc_source(Source::Crystal1, m, reg, kOmega);
  PdcBeams b2 = pdc_source(Source::Crystal2, m, reg, kOmega);
  auto [o1, o2] = apply_bs(b1.idler, b2.signal);
  for (Polarization p : {Polarization::H, Polarization::V}) {
    const double in = intensity(b1.idler.component(p), m) + intensity(b2.signal.component(p), m);
    const double out = intensity(o1.component(p), m) + intensity(o2.component(p), m);
    CHECK(out == doctest::Approx(in).epsilon(1e-14));
    // Independent inputs with equal intensity leave the outputs uncorrelated.
    CHECK(std::abs(corr(o1.component(p), conj(o2.component(p)), m)) < 1e-15);
  }
  // out1 = (i a + b)/sqrt2, out2 = (a + i b)/sqrt2
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(same_terms(o1.h(), linear_combine(kI * s, b1.idler.h(), s, b2.signal.h())));
  CHECK(same_terms(o2.v(), linear_combine(s, b1.idler.v(), kI * s, b2.signal.v())));
}

TEST_CASE("beam splitter rejects mixed carriers") {
  CovarianceModel m;
  ModeRegistry reg;
  PdcBeams b1 = pdc_source(Source::Crystal1, m, reg, kOmega);
  PdcBeams b2 = pdc_source(Source::Crystal2, m, reg, 2 * kOmega);
  CHECK_THROWS_AS(apply_bs(b1.idler, b2.signal), FrequencyMismatch);
}

TEST_CASE("PBS transmits H, reflects V with -i and injects idle vacuum") {
  CovarianceModel m;
  ModeRegistry reg;
  PdcBeams b = pdc_source(Source::Crystal1, m, reg, kOmega);
  auto [dh, dv] = apply_pbs(b.signal, reg, "1");
  CHECK(dh.name == "DH1");
  CHECK(dv.name == "DV1");
  CHECK(dh.signal() == b.signal.h().with_event(dh.event()));
  CHECK(dv.signal() == b.signal.v().with_event(dv.event()).scaled(-kI));
  CHECK(reg.idle_set_count() == 1);
  REQUIRE(dh.y.size() == 1);
  CHECK(dh.y.terms().begin()->second == kI);
  CHECK(dh.y.terms().begin()->first.var.mode.source == Source::IdleChannel);
  CHECK(dv.x.terms().begin()->second == Complex(1.0, 0.0));
  CHECK(intensity(dh.y, m) == 0.5);
  CHECK(corr(dh.y, dv.signal(), m) == Complex{});
  CHECK(corr(dh.y, conj(dv.x), m) == Complex{});
  CHECK_THROWS_AS(apply_pbs(b.signal, reg, "1"), ModeError);
}

TEST_CASE("phase shifter acts on one polarization and pi twice is identity") {
  CovarianceModel m;
  ModeRegistry reg;
  PdcBeams b = pdc_source(Source::Crystal2, m, reg, kOmega);
  Beam once = apply_phase(b.idler, Polarization::V, std::numbers::pi);
  CHECK(once.v() == b.idler.v().scaled(-1.0));
  CHECK(once.h() == b.idler.h());
  CHECK(apply_phase(once, Polarization::V, std::numbers::pi).v() == b.idler.v());
  CHECK(apply(PhaseShifter{0.0, Polarization::H}, b.idler).h() == b.idler.h());
  CHECK_THROWS_AS(apply(PhaseShifter{2 * std::numbers::pi, Polarization::V}, b.idler),
                  InvalidArgument);
  CHECK_THROWS_AS(apply(PhaseShifter{-0.1, Polarization::V}, b.idler), InvalidArgument);
  CHECK_THROWS_AS(apply(BeamSplitter{}, b.idler), InvalidArgument);
}

TEST_CASE("propagation delays, advances path and keeps intensity") {
  CovarianceModel m;
  ModeRegistry reg;
  PdcBeams b = pdc_source(Source::Crystal2, m, reg, kOmega);
  const double d = 0.25;
  FieldExpr s = propagate(b.components.s, d);
  CHECK(s.event().path_length_m == d);
  for (const auto& [k, c] : s.terms()) CHECK(k.retardation_s == d / kSpeedOfLight);
  CHECK(intensity(s, m) == doctest::Approx(intensity(b.components.s, m)));
  CHECK(propagate(b.components.s, 0.0) == b.components.s);
  CHECK_THROWS_AS(propagate(b.components.s, -1e-3), InvalidArgument);
  CHECK_THROWS_AS(apply(Propagation{-1.0}, b.signal), InvalidArgument);
  CHECK(apply(Propagation{d}, b.signal).h() == s);
}

TEST_CASE("unequal propagation of partners is weighted by the kernel") {
  CovarianceModel m;
  ModeRegistry reg;
  PdcBeams b = pdc_source(Source::Crystal2, m, reg, kOmega);
  const double d = 1e-4;  // 0.33 ps
  const Complex equal = corr(propagate(b.components.s, d), propagate(b.components.r, d), m);
  const Complex skew = corr(propagate(b.components.s, 2 * d), propagate(b.components.r, d), m);
  const double nu = std::exp(-0.5 * std::pow(d / kSpeedOfLight / m.correlation_time_s, 2));
  CHECK(std::abs(equal) == doctest::Approx(std::abs(m.pdc_amplitude())).epsilon(1e-14));
  CHECK(std::abs(skew) == doctest::Approx(std::abs(m.pdc_amplitude()) * nu).epsilon(1e-14));
}
