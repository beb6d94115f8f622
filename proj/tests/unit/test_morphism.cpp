#include <doctest.h>

#include <algorithm>
#include <random>

#include "krl/enumerate.hpp"
#include "krl/errors.hpp"
#include "krl/morphism.hpp"
#include "oracles.hpp"
#include "samples.hpp"

using namespace krl;

namespace {

AlgebraPtr l2() { return samples::algebra("l2.krl", "L2-classical"); }
AlgebraPtr h3() { return samples::algebra("h3.krl", "H3"); }

IaMorphism ia_map(const std::string& file, const std::string& name) {
  auto ws = samples::load(file);
  return std::get<IaMorphism>(ws.morphism(name).morphism);
}

// Every carrier map A -> B.
std::vector<IaMorphism> all_maps(const AlgebraPtr& A, const AlgebraPtr& B) {
  std::vector<IaMorphism> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < A->size(); ++i) total *= B->size();
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<ElementId> map(A->size());
    std::size_t c = code;
    for (auto& x : map) {
      x = static_cast<ElementId>(c % B->size());
      c /= B->size();
    }
    out.push_back(IaMorphism{"f" + std::to_string(code), A, B, std::move(map)});
  }
  return out;
}

std::vector<AlgebraPtr> small_algebras(std::size_t max_size) {
  std::vector<AlgebraPtr> v{samples::algebra("one.krl", "one"), l2(),
                            samples::algebra("l2-inconsistent.krl", "L2-total"), h3()};
  if (max_size >= 4) v.push_back(samples::algebra("diamond.krl", "diamond"));
  std::mt19937 rng(77);
  for (const auto& A : samples::random_algebras(max_size >= 4 ? 3 : max_size, 1, rng)) v.push_back(A);
  return v;
}

bool applicative_by_oracle(const IaMorphism& f) {
  return oracle::separator_preserving(f) && oracle::meet_preserving_all_subsets(f) &&
         oracle::uniform_realizer(f).has_value() && oracle::application_realizer(f).has_value();
}

AksPtr full_polarity(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.emplace_back(1, static_cast<char>('x' + i));
  return std::make_shared<const Aks>("full", std::move(names), std::vector<PiSet>(n, pi_full(n)),
                                     std::vector<ElementId>(n * n, 0), std::vector<ElementId>(n * n, 0), pi_full(n),
                                     0, 0);
}

}  // namespace

TEST_CASE("identity is applicative and dense") {
  auto f = identity_morphism(l2());
  auto app = check_applicative_ia(f);
  CHECK(app.ok());
  CHECK(app.uniform_realizer == 1u);
  auto d = check_comp_dense_ia(f);
  REQUIRE(d.certificate);
  CHECK(d.certificate->t == combinator_i(*l2()->structure));
  CHECK(d.certificate->h[1] == 1u);
  CHECK(check_condition2_equiv(f).ok());
}

TEST_CASE("constant top on the two-chain") {
  // f(0) = f(1) = 1 preserves every meet, including the empty one, and
  // maps the separator into the separator; it is applicative and dense.
  auto f = ia_map("l2-const-top.kmap", "const-top");
  CHECK(oracle::meet_preserving_all_subsets(f));
  CHECK(oracle::separator_preserving(f));
  auto app = check_applicative_ia(f);
  CHECK(app.ok());
  CHECK(app.report.passed("morphism.meet-preservation"));
  CHECK(check_comp_dense_ia(f).certificate.has_value() == oracle::dense_exists(f));
}

TEST_CASE("a map that breaks a binary meet is reported with its witness") {
  auto H = h3();
  // bot -> bot, mid -> top, top -> mid is not even monotone.
  IaMorphism f{"twist", H, H, {0, 2, 1}};
  auto app = check_applicative_ia(f);
  CHECK_FALSE(app.ok());
  CHECK_FALSE(app.report.passed("morphism.meet-preservation"));
  CHECK_FALSE(app.report.find("morphism.meet-preservation")->witness.empty());
  CHECK_FALSE(oracle::meet_preserving_all_subsets(f));
}

TEST_CASE("realizer conditions agree on every map between small algebras") {
  std::size_t considered = 0, with_both = 0;
  const auto algebras = small_algebras(3);
  for (const auto& A : algebras)
    for (const auto& B : algebras)
      for (const auto& f : all_maps(A, B)) {
        if (!oracle::separator_preserving(f) || !oracle::meet_preserving_all_subsets(f)) continue;
        ++considered;
        const bool two = oracle::uniform_realizer(f).has_value();
        const bool two_prime = oracle::application_realizer(f).has_value();
        REQUIRE(two == two_prime);
        with_both += two;
        auto r = check_condition2_equiv(f);
        REQUIRE(r.passed("morphism.realizer-conditions-agree"));
        REQUIRE(r.flag_value("uniform-realizer-exists") == two);
        REQUIRE(r.flag_value("application-realizer-exists") == two_prime);
      }
  CHECK(considered > 50);
  CHECK(with_both > 0);
}

TEST_CASE("density search agrees with brute force over all (h, t)") {
  std::size_t dense = 0, not_dense = 0;
  auto algebras = small_algebras(4);
  std::mt19937 rng(5150);
  for (const auto& A : samples::random_algebras(4, 3, rng))
    if (A->size() >= 3) algebras.push_back(A);
  for (const auto& A : algebras)
    for (const auto& B : algebras) {
      if (A->size() > 4 || B->size() > 4) continue;
      for (const auto& f : all_maps(A, B)) {
        const bool applicative = check_applicative_ia(f).ok();
        REQUIRE(applicative == applicative_by_oracle(f));
        auto d = check_comp_dense_ia(f);
        const bool expected = oracle::dense_exists(f);
        INFO(A->name, " -> ", B->name, " ", f.name);
        REQUIRE(d.certificate.has_value() == expected);
        if (d.certificate) {
          REQUIRE(verify_ia_certificate(f, *d.certificate).ok());
          ++dense;
        } else if (applicative) {
          ++not_dense;
        }
      }
    }
  CHECK(dense > 0);
  MESSAGE("dense maps: ", dense, ", applicative but not dense: ", not_dense);
}

TEST_CASE("monotone selection is complete against brute force") {
  // Random candidate lists over lattice-shaped domains and value orders.
  std::mt19937 rng(606);
  std::size_t solvable = 0, unsolvable = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const auto doms = enumerate_lattices(1 + trial % 5);
    const auto vals = enumerate_lattices(1 + trial / 5 % 5);
    const auto& D = samples::pick(doms, rng);
    const auto& V = samples::pick(vals, rng);
    SelectionProblem p;
    p.domain_size = D->size();
    p.domain_leq = [&](std::size_t i, std::size_t j) { return D->leq(ElementId(i), ElementId(j)); };
    p.value_leq = [&](ElementId x, ElementId y) { return V->leq(x, y); };
    std::bernoulli_distribution keep(0.45);
    for (std::size_t i = 0; i < D->size(); ++i) {
      std::vector<ElementId> c;
      for (auto v : V->linear_extension())
        if (keep(rng)) c.push_back(v);
      p.candidates.push_back(std::move(c));
    }
    bool exists = false;
    std::size_t total = 1;
    for (const auto& c : p.candidates) total *= c.size();
    for (std::size_t code = 0; code < total && !exists; ++code) {
      std::vector<ElementId> pick(D->size());
      std::size_t c = code;
      for (std::size_t i = 0; i < D->size(); ++i) {
        pick[i] = p.candidates[i][c % p.candidates[i].size()];
        c /= p.candidates[i].size();
      }
      bool ok = true;
      for (std::size_t i = 0; i < D->size(); ++i)
        for (std::size_t j = 0; j < D->size(); ++j)
          if (p.domain_leq(i, j) && !p.value_leq(pick[i], pick[j])) ok = false;
      exists = ok;
    }
    SearchBudget budget(1'000'000);
    auto sel = monotone_selection(p, budget);
    REQUIRE(sel.has_value() == exists);
    if (sel) {
      ++solvable;
      for (std::size_t i = 0; i < D->size(); ++i) {
        REQUIRE(std::find(p.candidates[i].begin(), p.candidates[i].end(), (*sel)[i]) != p.candidates[i].end());
        for (std::size_t j = 0; j < D->size(); ++j)
          if (p.domain_leq(i, j)) REQUIRE(p.value_leq((*sel)[i], (*sel)[j]));
      }
    } else {
      ++unsolvable;
    }
  }
  CHECK(solvable > 20);
  CHECK(unsolvable > 20);
}

TEST_CASE("certificate validator rejects tampered certificates") {
  auto f = ia_map("h3-to-l2.kmap", "collapse");
  auto d = check_comp_dense_ia(f);
  REQUIRE(d.certificate);
  CHECK(verify_ia_certificate(f, *d.certificate).ok());
  auto bad = *d.certificate;
  bad.t = 0;  // bottom of L2 is outside the separator
  CHECK_FALSE(verify_ia_certificate(f, bad).ok());
  auto bad_h = *d.certificate;
  bad_h.h[1] = 1;  // mid is not in the separator of H3
  CHECK_FALSE(verify_ia_certificate(f, bad_h).ok());
}

TEST_CASE("hints are verified, not trusted") {
  auto f = ia_map("l2-id.kmap", "id");
  CertificateHint good;
  good.h = std::vector<ElementId>{kNoElement, 1};
  good.t = 1;
  CHECK(check_comp_dense_ia(f, good).certificate.has_value());
  CertificateHint bad;
  bad.t = 0;
  auto d = check_comp_dense_ia(f, bad);
  CHECK_FALSE(d.certificate.has_value());
}

TEST_CASE("search budget exhaustion is distinct from a negative answer") {
  auto D = samples::algebra("diamond.krl", "diamond");
  auto full = make_algebra("diamond-full", D->structure, D->lattice().full_set());
  auto f = identity_morphism(full);
  SearchOptions tiny;
  tiny.budget = 1;
  CHECK_THROWS_AS(check_comp_dense_ia(f, {}, tiny), SearchBudgetExceeded);
  CHECK(check_comp_dense_ia(f).certificate.has_value());
}

TEST_CASE("composition") {
  auto collapse = ia_map("h3-to-l2.kmap", "collapse");
  auto id = identity_morphism(l2());
  auto c1 = check_comp_dense_ia(collapse).certificate;
  auto c2 = check_comp_dense_ia(id).certificate;
  REQUIRE(c1);
  REQUIRE(c2);
  auto [same, cert] = compose(collapse, id, c1, c2);
  CHECK(same.map == collapse.map);
  REQUIRE(cert);
  CHECK(cert->h == c1->h);
  CHECK(verify_ia_certificate(same, *cert).ok());

  auto top = ia_map("l2-const-top.kmap", "const-top");
  auto c3 = check_comp_dense_ia(top).certificate;
  REQUIRE(c3);
  auto [gf, cgf] = compose(collapse, top, c1, c3);
  REQUIRE(cgf);
  CHECK(verify_ia_certificate(gf, *cgf).ok());
  CHECK(check_comp_dense_ia(gf).certificate.has_value());

  CHECK_THROWS_AS(compose(id, collapse), ComposabilityError);
}

TEST_CASE("composites of enumerated dense maps pass a fresh check") {
  const std::vector<AlgebraPtr> algebras{l2(), h3(), samples::algebra("one.krl", "one")};
  std::vector<std::pair<IaMorphism, DensityCertificate>> dense;
  for (const auto& A : algebras)
    for (const auto& B : algebras)
      for (const auto& f : all_maps(A, B))
        if (auto d = check_comp_dense_ia(f); d.certificate) dense.emplace_back(f, *d.certificate);
  std::size_t pairs = 0;
  for (const auto& [f, cf] : dense)
    for (const auto& [g, cg] : dense) {
      if (f.target != g.source) continue;
      auto [gf, c] = compose(f, g, cf, cg);
      REQUIRE(c);
      REQUIRE(verify_ia_certificate(gf, *c).ok());
      REQUIRE(check_comp_dense_ia(gf).certificate.has_value());
      ++pairs;
    }
  CHECK(pairs > 10);
}

TEST_CASE("two-cells") {
  auto L = l2();
  IaMorphism c0{"c0", L, L, {0, 0}}, c1{"c1", L, L, {1, 1}};
  CHECK(two_cell_leq(c0, c0));
  CHECK(two_cell_leq(c0, c1));
  CHECK_FALSE(two_cell_leq(c1, c0));
  auto maps = all_maps(h3(), h3());
  for (const auto& f : maps) {
    REQUIRE(two_cell_leq(f, f));
    for (const auto& g : maps)
      for (const auto& h : maps)
        if (two_cell_leq(f, g) && two_cell_leq(g, h)) REQUIRE(two_cell_leq(f, h));
  }
  auto F = full_polarity(2);
  AksMorphism a{"a", F, F, {0, 0}}, b{"b", F, F, {1, 0}};
  CHECK(two_cell_leq(a, b));
  CHECK(two_cell_leq(b, a));
}

TEST_CASE("AKS two-cells follow the specialization preorder") {
  auto K = samples::aks("aks3.krl", "aks3");
  auto pol = oracle::Polarity::of(*K);
  std::vector<AksMorphism> maps;
  for (ElementId code = 0; code < 27; ++code)
    maps.push_back(AksMorphism{"m", K, K, {code % 3, code / 3 % 3, code / 9}});
  for (const auto& f : maps)
    for (const auto& g : maps) {
      bool expected = true;
      for (ElementId p = 0; p < 3; ++p) expected = expected && oracle::bar(pol, {int(f(p))}).count(int(g(p)));
      REQUIRE(two_cell_leq(f, g) == expected);
    }
}

TEST_CASE("AKS morphisms") {
  auto K = samples::aks("aks3.krl", "aks3");
  auto id = identity_morphism(K);
  CHECK(check_applicative_aks(id).ok());
  auto d = check_comp_dense_aks(id);
  REQUIRE(d.certificate);
  CHECK(verify_aks_certificate(id, *d.certificate).ok());
  auto [idid, c] = compose(id, id, d.certificate, d.certificate);
  REQUIRE(c);
  CHECK(verify_aks_certificate(idid, *c).ok());

  // Into the full polarity every perp holds.
  auto F = full_polarity(2);
  for (ElementId code = 0; code < 8; ++code) {
    AksMorphism f{"into-full", K, F, {code & 1, code >> 1 & 1, code >> 2 & 1}};
    auto r = check_applicative_aks(f);
    CHECK(r.report.passed("aks-morphism.clause-a"));
    CHECK(r.report.passed("aks-morphism.clause-b"));
  }
}

TEST_CASE("every AKS certificate found re-verifies") {
  auto K = samples::aks("aks3.krl", "aks3");
  auto F = full_polarity(2);
  std::size_t found = 0;
  for (const auto& [S, T] : std::vector<std::pair<AksPtr, AksPtr>>{{K, K}, {K, F}, {F, K}}) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < S->size(); ++i) total *= T->size();
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<ElementId> map(S->size());
      std::size_t c = code;
      for (auto& x : map) x = static_cast<ElementId>(c % T->size()), c /= T->size();
      AksMorphism f{"m", S, T, map};
      auto d = check_comp_dense_aks(f);
      if (!d.certificate) continue;
      ++found;
      REQUIRE(verify_aks_certificate(f, *d.certificate).ok());
    }
  }
  CHECK(found > 0);
}
