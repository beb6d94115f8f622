#include <doctest.h>

#include "krl/bridge.hpp"
#include "krl/enumerate.hpp"
#include "krl/errors.hpp"
#include "krl/interior.hpp"
#include "oracles.hpp"
#include "samples.hpp"

using namespace krl;

namespace {

AlgebraPtr diamond() { return samples::algebra("diamond.krl", "diamond"); }
AlgebraPtr aks3_A() { return samples::algebra("aks3-A.krl", "A(aks3)"); }
InteriorOperator hat() { return samples::interior("aks3-hat.kop", "hat"); }

constexpr ElementId kBot = 0, kX = 1, kY = 2, kTop = 3;  // diamond ids

std::vector<std::vector<ElementId>> tables(const std::vector<InteriorOperator>& ops) {
  std::vector<std::vector<ElementId>> out;
  for (const auto& o : ops) out.push_back(o.table);
  return out;
}

ElementSet opens_of(const InteriorOperator& i) {
  auto s = i.lattice->empty_set();
  for (ElementId a = 0; a < i.table.size(); ++a)
    if (i(a) == a) s.set(a);
  return s;
}

// Interior operator P |-> bar(P) on the reverse-inclusion powerset of a polarity.
InteriorOperator bar_operator(const AksPtr& K) {
  std::vector<std::string> base = K->names();
  auto L = std::make_shared<const FiniteLattice>(FiniteLattice::powerset(base));
  return make_interior("bar", L, [&](ElementId P) { return static_cast<ElementId>(bar_closure(*K, P)); });
}

AksPtr polarity_from_mask(std::size_t n, std::uint32_t mask) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.emplace_back(1, static_cast<char>('a' + i));
  std::vector<PiSet> rows(n, 0);
  for (std::size_t t = 0; t < n; ++t)
    for (std::size_t p = 0; p < n; ++p)
      if (mask >> (t * n + p) & 1) rows[t] |= pi_bit(ElementId(p));
  return std::make_shared<const Aks>("pol", std::move(names), std::move(rows), std::vector<ElementId>(n * n, 0),
                                     std::vector<ElementId>(n * n, 0), pi_full(n), 0, 0);
}

}  // namespace

TEST_CASE("identity operator") {
  auto L = diamond()->lattice_ptr();
  auto id = identity_interior(L);
  auto r = validate_interior(id);
  CHECK(r.ok());
  CHECK(r.flag_value("alexandroff"));
  CHECK(r.flag_value("topological"));
  CHECK(classify(id) == InteriorClass::alexandroff);
  CHECK(closure_from_interior(id) == id.table);
  auto B = theta(id);
  CHECK(B.members.count() == L->size());
  CHECK(theta_inv(B) == id);
  CHECK(al_approx(id) == id);
}

TEST_CASE("constant bottom operator") {
  auto L = diamond()->lattice_ptr();
  auto c = make_interior("bottom", L, [&](ElementId) { return L->bottom(); });
  auto r = validate_interior(c);
  CHECK(r.ok());
  CHECK(r.flag_value("alexandroff") == oracle::alexandroff_all_families(*L, c.table));
  CHECK_FALSE(r.flag_value("alexandroff"));  // the empty meet is top, sent to bottom
  CHECK(classify(c) == InteriorClass::plain);
}

TEST_CASE("a map that is not deflationary is rejected") {
  auto L = diamond()->lattice_ptr();
  InteriorOperator up{"up", L, {kX, kX, kTop, kTop}};
  auto r = validate_interior(up);
  CHECK_FALSE(r.passed("interior.deflationary"));
  CHECK(classify(up) == InteriorClass::invalid);
}

TEST_CASE("bar closure on the three-point polarity is not Alexandroff") {
  auto ws = samples::load("polarity-bar.kop");
  auto bar = ws.interior("bar");
  auto r = validate_interior(bar);
  CHECK(r.ok());
  CHECK_FALSE(r.flag_value("alexandroff"));
  const auto* f = r.find_flag("alexandroff");
  REQUIRE(f);
  CHECK(f->detail.find("{a}") != std::string::npos);
  CHECK(f->detail.find("{b}") != std::string::npos);
  CHECK_FALSE(oracle::alexandroff_all_families(*bar.lattice, bar.table));
  CHECK_THROWS_AS(closure_from_interior(bar), NotAlexandroff);
}

TEST_CASE("closure of the diamond operator with opens bot, x, top") {
  auto op = samples::interior("diamond-open-x.kop", "open-x");
  auto c = closure_from_interior(op);
  CHECK(c[kY] == kTop);
  CHECK(c[kX] == kX);
  CHECK(c[kBot] == kBot);
  const auto& L = *op.lattice;
  for (ElementId a = 0; a < L.size(); ++a) {
    oracle::Ids above;
    for (ElementId b = 0; b < L.size(); ++b)
      if (op(b) == b && L.leq(a, b)) above.push_back(b);
    CHECK(c[a] == *oracle::glb(L, above));
  }
}

TEST_CASE("closure of hat") {
  auto h = hat();
  auto c = closure_from_interior(h);
  const auto Kp = samples::aks("aks3.krl", "aks3");
  const auto& K = *Kp;
  const auto& L = *h.lattice;
  for (ElementId x = 0; x < 3; ++x) {
    const ElementId single = ElementId{1} << x;
    // hat and bar agree on singletons.
    CHECK(h(single) == bar_closure(K, single));
  }
  for (ElementId a = 0; a < L.size(); ++a) {
    // the least open element above a
    CHECK(h(c[a]) == c[a]);
    CHECK(L.leq(a, c[a]));
    for (ElementId b = 0; b < L.size(); ++b)
      if (h(b) == b && L.leq(a, b)) CHECK(L.leq(c[a], b));
  }
}

TEST_CASE("theta on the diamond") {
  auto L = diamond()->lattice_ptr();
  auto members = L->empty_set();
  members.set(kBot).set(kX).set(kTop);
  auto i = theta_inv(ClosedPart{L, members, ClosedPart::Flavor::sup_closed});
  CHECK(i.table == std::vector<ElementId>{kBot, kX, kBot, kTop});
  auto no_bottom = L->empty_set();
  no_bottom.set(kX).set(kTop);
  CHECK_THROWS_AS(theta_inv(ClosedPart{L, no_bottom, ClosedPart::Flavor::sup_closed}), InvalidClosedPart);
  auto no_top = L->empty_set();
  no_top.set(kBot).set(kX);
  CHECK_THROWS_AS(theta_inv(ClosedPart{L, no_top, ClosedPart::Flavor::sup_and_meet_closed}), InvalidClosedPart);
}

TEST_CASE("theta round trips on every operator of every lattice up to five elements") {
  std::size_t operators = 0;
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& L : enumerate_lattices(n)) {
      const auto ops = enumerate_interiors(L);
      for (const auto& i : ops) {
        ++operators;
        REQUIRE(oracle::is_interior(*L, i.table));
        const bool alex = oracle::alexandroff_all_families(*L, i.table);
        REQUIRE(validate_interior(i).flag_value("alexandroff") == alex);
        auto B = theta(i);
        REQUIRE(B.members == opens_of(i));
        REQUIRE((B.flavor == ClosedPart::Flavor::sup_and_meet_closed) == alex);
        REQUIRE(theta_inv(B) == i);
        if (alex) {
          // meets of open families are open
          for (const auto& fam : oracle::all_subsets(n)) {
            bool all_open = true;
            for (auto a : fam) all_open = all_open && i(a) == a;
            if (all_open) REQUIRE(i(*oracle::glb(*L, fam)) == *oracle::glb(*L, fam));
          }
        }
      }
      // every sup-closed family containing bottom arises
      std::size_t sup_closed = 0;
      for (const auto& fam : oracle::all_subsets(n)) {
        auto members = L->empty_set();
        for (auto a : fam) members.set(a);
        try {
          auto i = theta_inv(ClosedPart{L, members, ClosedPart::Flavor::sup_closed});
          REQUIRE(theta(i).members == members);
          ++sup_closed;
        } catch (const InvalidClosedPart&) {
        }
      }
      REQUIRE(sup_closed == ops.size());
    }
  CHECK(operators == 91);
}

TEST_CASE("al_approx is the least Alexandroff majorant") {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& L : enumerate_lattices(n)) {
      const auto ops = enumerate_interiors(L);
      const auto all = tables(ops);
      for (const auto& i : ops) {
        auto k = al_approx(i);
        REQUIRE(k.table == oracle::least_alexandroff_majorant(*L, i.table, all));
        REQUIRE(operator_leq(i, k));
        for (const auto& t : ops) {
          if (!oracle::alexandroff_all_families(*L, t.table)) continue;
          // left adjoint to the inclusion of Alexandroff operators
          REQUIRE(operator_leq(k, t) == operator_leq(i, t));
        }
      }
      // opens grow along the operator order
      for (const auto& i : ops)
        for (const auto& j : ops)
          if (operator_leq(i, j)) REQUIRE(opens_of(i).is_subset_of(opens_of(j)));
    }
}

TEST_CASE("approximation of bar is hat") {
  auto ws = samples::load("polarity-bar.kop");
  auto bar = ws.interior("bar");
  auto k = al_approx(bar);
  constexpr ElementId ab = 0b011, abc = 0b111;
  CHECK(k(ab) == ab);
  CHECK(bar(ab) == abc);
  auto K = polarity_from_mask(3, 0b000010001);  // (a,a), (b,b)
  for (ElementId P = 0; P < 8; ++P) CHECK(k(P) == hat_closure(*K, P));
  CHECK(al_approx_general(bar) == al_approx_powerset(bar));
}

TEST_CASE("approximation of the coarse diamond operator") {
  auto coarse = samples::interior("diamond-coarse.kop", "coarse");
  auto k = al_approx(coarse);
  CHECK(k.table == oracle::least_alexandroff_majorant(*coarse.lattice, coarse.table,
                                                      tables(enumerate_interiors(coarse.lattice))));
  CHECK(validate_interior(k).flag_value("alexandroff"));
}

TEST_CASE("powerset and general approximation agree on every polarity of up to three points") {
  for (std::size_t n = 1; n <= 3; ++n)
    for (std::uint32_t mask = 0; mask < (1u << (n * n)); ++mask) {
      auto K = polarity_from_mask(n, mask);
      auto bar = bar_operator(K);
      REQUIRE(validate_interior(bar).ok());
      auto fast = al_approx_powerset(bar);
      auto general = al_approx_general(bar);
      REQUIRE(fast == general);
      for (ElementId P = 0; P < bar.table.size(); ++P) REQUIRE(fast(P) == hat_closure(*K, P));
    }
}

TEST_CASE("approximation on powerset operators matches brute force for base two") {
  auto L = std::make_shared<const FiniteLattice>(FiniteLattice::powerset({"a", "b"}));
  const auto ops = enumerate_interiors(L);
  const auto all = tables(ops);
  for (const auto& i : ops) {
    REQUIRE(al_approx_powerset(i) == al_approx_general(i));
    REQUIRE(al_approx(i).table == oracle::least_alexandroff_majorant(*L, i.table, all));
  }
}

TEST_CASE("changing the implication along the identity changes nothing") {
  for (const auto& A : {samples::algebra("h3.krl", "H3"), diamond(), aks3_A()}) {
    auto C = change_implication(A, identity_interior(A->lattice_ptr()));
    CHECK(C.report.ok());
    CHECK(C.changed->size() == A->size());
    CHECK(C.changed->structure->imp_table() == A->structure->imp_table());
    CHECK(C.changed->separator == A->separator);
    const auto nu_i = A->app(C.nu, combinator_i(*A->structure));
    CHECK(C.k_iota == A->app(nu_i, A->k));
    CHECK(A->lattice().leq(C.k_iota, oracle::comb_k(*A->structure)));
    auto certs = density_certificates(C);
    CHECK(certs.report.ok());
    const auto i = combinator_i(*A->structure);
    CHECK(certs.inclusion_certificate.t == i);
    CHECK(certs.inclusion_certificate.r == i);
  }
}

TEST_CASE("the diamond operator fails the hypothesis at y") {
  auto op = samples::interior("diamond-open-x.kop", "open-x");
  try {
    change_implication(diamond(), op);
    FAIL("expected HypothesisFailed");
  } catch (const HypothesisFailed& e) {
    CHECK(e.clause == "change.i-below-interior");
    CHECK(e.witness == "y");
    CHECK(std::string(e.what()) == "HypothesisFailed: 𝗂·y ≤ ι(y) violated");
  }
  // In a Boolean algebra i.a = a.
  auto D = diamond();
  for (ElementId a = 0; a < 4; ++a) CHECK(D->app(combinator_i(*D->structure), a) == a);
}

TEST_CASE("other failed hypotheses") {
  auto H = samples::algebra("h3.krl", "H3");
  auto L = H->lattice_ptr();
  auto mid_up = L->empty_set();
  mid_up.set(1).set(2);
  auto A = make_algebra("H3-mid", H->structure, mid_up);
  REQUIRE(validate_algebra(*A).ok());
  InteriorOperator drop{"drop-mid", L, {0, 0, 2}};
  try {
    change_implication(A, drop);
    FAIL("expected HypothesisFailed");
  } catch (const HypothesisFailed& e) {
    CHECK(e.clause == "change.compatible");
    CHECK(e.witness == "mid");
  }
  InteriorOperator to_bottom{"to-bottom", L, {0, 0, 0}};
  try {
    change_implication(H, to_bottom);
    FAIL("expected HypothesisFailed");
  } catch (const HypothesisFailed& e) {
    CHECK(e.clause == "change.alexandroff");
  }
}

TEST_CASE("changing A(aks3) along hat") {
  auto A = aks3_A();
  auto h = hat();
  auto C = change_implication(A, h);
  INFO(C.report.to_text());
  REQUIRE(C.report.ok());
  CHECK(C.iota_imp_invariant);
  const auto& B = *C.changed;
  CHECK(validate_algebra(B).ok());
  CHECK(B.size() == 5);
  // opens are the fixed points
  CHECK(C.opens == opens_of(h));
  const auto& L = A->lattice();
  // implication, separator, meet-commutation over open families
  for (ElementId x = 0; x < B.size(); ++x)
    for (ElementId y = 0; y < B.size(); ++y) {
      const auto a = C.open_ids[x], b = C.open_ids[y];
      CHECK(C.open_ids[B.imp(x, y)] == h(A->imp(a, b)));
      // application of the changed structure is the closure of the old one
      CHECK(C.open_ids[B.app(x, y)] == C.closure[A->app(a, b)]);
      CHECK(C.open_ids[B.app(x, y)] == C.open_ids[oracle::app_by_definition(*B.structure, x, y)]);
    }
  CHECK(oracle::meet_commutation(*B.structure));
  for (ElementId x = 0; x < B.size(); ++x)
    CHECK(B.in_separator(x) == (A->in_separator(C.open_ids[x]) && h(C.open_ids[x]) == C.open_ids[x]));
  // combinator bounds, by the tuple formulas
  CHECK(L.leq(C.open_ids[B.k], C.open_ids[oracle::comb_k(*B.structure)]));
  CHECK(L.leq(C.open_ids[B.s], C.open_ids[oracle::comb_s(*B.structure)]));
  CHECK(B.k == C.to_changed(C.k_iota));
  CHECK(B.s == C.to_changed(C.s_iota));
  // consequences of the invariant
  const auto i = combinator_i(*A->structure);
  for (ElementId a = 0; a < A->size(); ++a) {
    CHECK(L.leq(A->app(i, a), h(a)));
    CHECK(L.leq(h(a), a));
    for (ElementId b = 0; b < A->size(); ++b) {
      CHECK(A->imp(h(a), b) == A->imp(a, b));
      CHECK(A->app(a, h(b)) == A->app(a, b));
    }
  }
}

TEST_CASE("density certificates of the hat change") {
  auto A = aks3_A();
  auto C = change_implication(A, hat());
  auto certs = density_certificates(C);
  INFO(certs.report.to_text());
  CHECK(certs.report.ok());
  const auto i = combinator_i(*A->structure);
  CHECK(certs.inclusion_certificate.t == i);
  CHECK(certs.inclusion_certificate.r == i);
  CHECK(verify_ia_certificate(certs.inclusion, certs.inclusion_certificate).ok());
  CHECK(verify_ia_certificate(certs.restriction, certs.restriction_certificate).ok());
  CHECK(certs.restriction_certificate.t == C.to_changed(C.iota(i)));
  // independent checks of both morphisms
  auto inc = check_applicative_ia(certs.inclusion);
  CHECK(inc.ok());
  CHECK(inc.uniform_realizer.has_value());
  CHECK(check_condition2_equiv(certs.restriction).ok());
  CHECK(check_comp_dense_ia(certs.inclusion).certificate.has_value());
  CHECK(check_comp_dense_ia(certs.restriction).certificate.has_value());

  // restriction after inclusion is the identity of the changed algebra
  auto [id, cid] = compose(certs.inclusion, certs.restriction, certs.inclusion_certificate,
                           certs.restriction_certificate);
  for (ElementId x = 0; x < C.changed->size(); ++x) CHECK(id(x) == x);
  REQUIRE(cid);
  CHECK(verify_ia_certificate(id, *cid).ok());

  // the K-image of the restriction is dense as an AKS morphism
  auto img = functor_K_mor(certs.restriction, certs.restriction_certificate);
  INFO(img.report.to_text());
  CHECK(img.report.ok());
  REQUIRE(img.certificate);
  CHECK(verify_aks_certificate(img.morphism, *img.certificate).ok());
}

TEST_CASE("certificates need the invariant") {
  // H3 with the operator whose opens are bot and top: Alexandroff,
  // compatible with {top}, i.a = a <= iota(a) fails at mid.
  auto H = samples::algebra("h3.krl", "H3");
  InteriorOperator coarse{"coarse", H->lattice_ptr(), {0, 0, 2}};
  CHECK_THROWS_AS(change_implication(H, coarse), HypothesisFailed);
}
