#include "doctest.h"

#include <cmath>
#include <numbers>

#include "wigswap/errors.hpp"
#include "wigswap/field_expr.hpp"

using namespace wigswap;

namespace {
const ModeId kA{Source::Crystal1, Wavevector::k1, Polarization::H, {}, 0};
const ModeId kB{Source::Crystal1, Wavevector::k2, Polarization::V, {}, 0};
const SpaceTimeEvent kHere{"here", 0.0, 0.0};
}  // namespace

TEST_CASE("mode factory gives a single unit vacuum term") {
  FieldExpr a = FieldExpr::mode(kA, kHere, 1.0);
  REQUIRE(a.size() == 1);
  CHECK(a.coefficient({{kA, false}, Origin::Vacuum, 0.0}) == Complex(1.0, 0.0));
  CHECK(a.coefficient({{kA, true}, Origin::Vacuum, 0.0}) == Complex{});
}

TEST_CASE("terms cancel and are pruned") {
  FieldExpr a = FieldExpr::mode(kA, kHere, 1.0);
  FieldExpr z = linear_combine(1.0, a, -1.0, a);
  CHECK(z.empty());
}

TEST_CASE("conjugation is an involution and flips coefficients") {
  FieldExpr a = FieldExpr::mode(kA, kHere, 1.0).scaled({0.0, 2.0});
  FieldExpr c = conj(a);
  CHECK(c.coefficient({{kA, true}, Origin::Vacuum, 0.0}) == Complex(0.0, -2.0));
  CHECK(conj(c) == a);
}

TEST_CASE("linear_combine rejects mixed carriers and size mismatch") {
  FieldExpr a = FieldExpr::mode(kA, kHere, 1.0);
  FieldExpr b = FieldExpr::mode(kB, kHere, 2.0);
  CHECK_THROWS_AS(linear_combine(1.0, a, 1.0, b), FrequencyMismatch);
  const Complex cs[] = {1.0};
  const FieldExpr xs[] = {a, a};
  CHECK_THROWS_AS(linear_combine(cs, xs, kHere), InvalidArgument);
}

TEST_CASE("events must have non-negative path length") {
  CHECK_THROWS_AS(FieldExpr(SpaceTimeEvent{"x", -1.0, 0.0}, 1.0), InvalidArgument);
  FieldExpr a = FieldExpr::mode(kA, kHere, 1.0);
  CHECK_THROWS_AS(a.with_event({"x", -0.5, 0.0}), InvalidArgument);
  CHECK(a.with_time(3.0).event().time_s == 3.0);
}

TEST_CASE("vacuum part drops amplified terms") {
  FieldExpr a = FieldExpr::mode(kA, kHere, 1.0);
  a.add({{kB, true}, Origin::Amplified, 0.0}, 0.1);
  CHECK(a.size() == 2);
  CHECK(a.vacuum_part().size() == 1);
}

TEST_CASE("beam wavevector of an amplified term is the partner's") {
  TermKey vac{{kB, true}, Origin::Vacuum, 0.0};
  TermKey amp{{kB, true}, Origin::Amplified, 0.0};
  CHECK(vac.beam_wavevector() == Wavevector::k2);
  CHECK(amp.beam_wavevector() == Wavevector::k1);
}

TEST_CASE("unit phasor is exact on quarter turns") {
  CHECK(unit_phasor(0.0) == Complex(1.0, 0.0));
  CHECK(unit_phasor(std::numbers::pi / 2) == Complex(0.0, 1.0));
  CHECK(unit_phasor(std::numbers::pi) == Complex(-1.0, 0.0));
  CHECK(unit_phasor(-std::numbers::pi / 2) == Complex(0.0, -1.0));
  CHECK(unit_phasor(4 * std::numbers::pi) == Complex(1.0, 0.0));
  const Complex z = unit_phasor(0.3);
  CHECK(z.real() == doctest::Approx(std::cos(0.3)));
  CHECK(z.imag() == doctest::Approx(std::sin(0.3)));
}
