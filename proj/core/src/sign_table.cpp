#include "wigswap/sign_table.hpp"

#include <cmath>
#include <string_view>

#include "wigswap/correlation.hpp"

namespace wigswap {

std::string to_string(Sector s) { return s == Sector::PsiPlus ? "psi+" : "psi-"; }

namespace {

using P = PortName;

struct SourcePair {
  std::string_view first;
  P first_at;
  std::string_view second;
  P second_at;
};

Complex source_pair(const SwappingScenario& sc, const SourcePair& sp) {
  return pair_correlation(sc.source_component(sp.first, sp.first_at),
                          sc.source_component(sp.second, sp.second_at), sc.model());
}

Complex ratio(Complex value, Complex reference) {
  return std::abs(reference) < 1e-300 ? Complex{} : value / reference;
}

std::string pattern_label(const std::vector<P>& ports, const char* sep) {
  std::string s;
  for (P p : ports) s += (s.empty() ? "" : sep) + to_string(p);
  return s;
}

TableRow make_row(const SwappingScenario& sc, std::vector<P> ports, Complex value,
                  const SourcePair& x, const SourcePair& y) {
  TableRow r;
  r.label = pattern_label(ports, ".");
  r.ports = std::move(ports);
  r.value = value;
  r.reference = source_pair(sc, x) * source_pair(sc, y);
  r.prefactor = ratio(r.value, r.reference);
  return r;
}

Complex four(const SwappingScenario& sc, P a, P b, P c, P d) {
  return isserlis_quadruple(sc.port(a).signal(), sc.port(b).signal(), sc.port(c).signal(),
                            sc.port(d).signal(), sc.model());
}

}  // namespace

std::vector<TableRow> pair_table(const SwappingScenario& sc) {
  struct Spec {
    P bsm, outer;
    SourcePair ref;
  };
  const Spec specs[] = {
      {P::DH2, P::DV1, {"q'", P::DH2, "p'", P::DV1}}, {P::DH2, P::DV4, {"s", P::DH2, "r", P::DV4}},
      {P::DV2, P::DH1, {"r'", P::DV2, "s'", P::DH1}}, {P::DV2, P::DH4, {"p", P::DV2, "q", P::DH4}},
      {P::DH3, P::DV1, {"q'", P::DH3, "p'", P::DV1}}, {P::DH3, P::DV4, {"s", P::DH3, "r", P::DV4}},
      {P::DV3, P::DH1, {"r'", P::DV3, "s'", P::DH1}}, {P::DV3, P::DH4, {"p", P::DV3, "q", P::DH4}},
  };
  std::vector<TableRow> rows;
  for (const auto& s : specs) {
    TableRow r;
    r.ports = {s.bsm, s.outer};
    r.label = pattern_label(r.ports, "-");
    r.value = pair_correlation(sc.port(s.bsm).signal(), sc.port(s.outer).signal(), sc.model());
    r.reference = source_pair(sc, s.ref);
    r.prefactor = ratio(r.value, r.reference);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<SignRow> sign_table(const SwappingScenario& sc) {
  std::vector<SignRow> rows;
  auto push = [&](Sector sector, P a, P b, P c, P d, const SourcePair& x, const SourcePair& y) {
    SignRow r;
    static_cast<TableRow&>(r) = make_row(sc, {a, b, c, d}, four(sc, a, b, c, d), x, y);
    r.sector = sector;
    r.outer = a == P::DH1 ? OuterPair::H1V4 : OuterPair::V1H4;
    r.bsm = {b, c};
    rows.push_back(std::move(r));
  };

  // H1/V4 rows reduce to <s' r'><s r>, V1/H4 rows to <p' q'><p q>.
  for (auto [dh, dv] : {std::pair{P::DH2, P::DV2}, std::pair{P::DH3, P::DV3}}) {
    push(Sector::PsiPlus, P::DH1, dh, dv, P::DV4, {"s'", P::DH1, "r'", dv}, {"s", dh, "r", P::DV4});
    push(Sector::PsiPlus, P::DV1, dh, dv, P::DH4, {"p'", P::DV1, "q'", dh}, {"p", dv, "q", P::DH4});
  }
  push(Sector::PsiMinus, P::DH1, P::DH2, P::DV3, P::DV4, {"s'", P::DH1, "r'", P::DV3},
       {"s", P::DH2, "r", P::DV4});
  push(Sector::PsiMinus, P::DH1, P::DV2, P::DH3, P::DV4, {"s'", P::DH1, "r'", P::DV2},
       {"s", P::DH3, "r", P::DV4});
  push(Sector::PsiMinus, P::DV1, P::DH2, P::DV3, P::DH4, {"p'", P::DV1, "q'", P::DH2},
       {"p", P::DV3, "q", P::DH4});
  push(Sector::PsiMinus, P::DV1, P::DV2, P::DH3, P::DH4, {"p'", P::DV1, "q'", P::DH3},
       {"p", P::DV2, "q", P::DH4});
  return rows;
}

std::vector<TableRow> same_polarization_table(const SwappingScenario& sc) {
  std::vector<TableRow> rows;
  for (const std::vector<P>& ports : {std::vector<P>{P::DH1, P::DV2, P::DV3, P::DH4},
                                      std::vector<P>{P::DV1, P::DH2, P::DH3, P::DV4}}) {
    TableRow r;
    r.ports = ports;
    r.label = pattern_label(ports, ".");
    r.value = four(sc, ports[0], ports[1], ports[2], ports[3]);
    rows.push_back(std::move(r));
  }
  return rows;
}

std::vector<TableRow> double_detection_table(const SwappingScenario& sc) {
  std::vector<TableRow> rows;
  auto push = [&](P a, P b, P c, const SourcePair& x, const SourcePair& y) {
    const Complex v = double_detection_correlation(sc.port(a), sc.port(b), sc.port(c), sc.model());
    rows.push_back(make_row(sc, {a, b, b, c}, v, x, y));
  };
  push(P::DV1, P::DH2, P::DV4, {"p'", P::DV1, "q'", P::DH2}, {"s", P::DH2, "r", P::DV4});
  push(P::DH1, P::DV2, P::DH4, {"s'", P::DH1, "r'", P::DV2}, {"p", P::DV2, "q", P::DH4});
  push(P::DV1, P::DH3, P::DV4, {"p'", P::DV1, "q'", P::DH3}, {"s", P::DH3, "r", P::DV4});
  push(P::DH1, P::DV3, P::DH4, {"s'", P::DH1, "r'", P::DV3}, {"p", P::DV3, "q", P::DH4});
  return rows;
}

}  // namespace wigswap
