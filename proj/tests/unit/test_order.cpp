#include <doctest.h>

#include <random>

#include "krl/enumerate.hpp"
#include "krl/errors.hpp"
#include "krl/order.hpp"
#include "oracles.hpp"

using namespace krl;

namespace {

ElementSet set_of(const FiniteLattice& L, std::initializer_list<ElementId> ids) {
  auto s = L.empty_set();
  for (auto i : ids) s.set(i);
  return s;
}

ElementSet set_of(const FiniteLattice& L, const std::vector<ElementId>& ids) {
  auto s = L.empty_set();
  for (auto i : ids) s.set(i);
  return s;
}

// Explicit lattice carrying the reverse-inclusion order on subsets of n points.
FiniteLattice explicit_powerset(std::size_t n) {
  const std::size_t size = std::size_t{1} << n;
  std::vector<std::string> names;
  std::vector<bool> leq(size * size);
  for (std::size_t a = 0; a < size; ++a) {
    names.push_back("s" + std::to_string(a));
    for (std::size_t b = 0; b < size; ++b) leq[a * size + b] = (b & ~a) == 0;
  }
  return FiniteLattice::from_relation(names, leq);
}

}  // namespace

TEST_CASE("two-chain meets and joins") {
  auto L = FiniteLattice::chain({"0", "1"});
  CHECK(L.meet(L.empty_set()) == 1);
  CHECK(L.meet(set_of(L, {0, 1})) == 0);
  CHECK(L.join(set_of(L, {0, 1})) == 1);
  CHECK(L.join(L.empty_set()) == 0);
  CHECK(L.top() == 1);
  CHECK(L.bottom() == 0);
  CHECK(validate_lattice(L).ok());
}

TEST_CASE("powerset backend is ordered by reverse inclusion") {
  auto L = FiniteLattice::powerset({"a", "b"});
  const ElementId a = 0b01, b = 0b10, ab = 0b11, none = 0;
  CHECK(L.leq(ab, a));
  CHECK_FALSE(L.leq(a, ab));
  CHECK(L.meet(set_of(L, {a, b})) == ab);
  CHECK(L.join(set_of(L, {a, b})) == none);
  CHECK(L.top() == none);
  CHECK(L.bottom() == ab);
  CHECK(L.join(set_of(L, {a, b})) == *oracle::lub(L, {a, b}));
  CHECK(L.name(ab) == "{a b}");
  CHECK(L.name(none) == "{}");
}

TEST_CASE("antisymmetry failure is reported with its pair") {
  auto L = FiniteLattice::from_pairs({"0", "1"}, {{0, 1}, {1, 0}});
  auto r = validate_lattice(L);
  CHECK_FALSE(r.ok());
  REQUIRE(r.find("lattice.antisymmetric"));
  CHECK_FALSE(r.find("lattice.antisymmetric")->passed);
  CHECK(r.find("lattice.antisymmetric")->witness == "(0, 1)");
  CHECK_FALSE(L.is_lattice());
}

TEST_CASE("fence poset is not complete") {
  // a, b below both c and d; c and d have no meet and there is no top.
  auto L = FiniteLattice::from_pairs({"a", "b", "c", "d"}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  auto r = validate_lattice(L);
  CHECK(r.passed("lattice.reflexive"));
  CHECK(r.passed("lattice.antisymmetric"));
  CHECK(r.passed("lattice.transitive"));
  CHECK_FALSE(r.passed("lattice.complete"));
  CHECK_FALSE(r.find("lattice.complete")->witness.empty());
  // The oracle agrees: some subset has no greatest lower bound, c and d among them.
  CHECK_FALSE(oracle::glb(L, {2, 3}).has_value());
  CHECK_FALSE(L.is_lattice());
}

TEST_CASE("fence with a top still lacks the meet of its middle pair") {
  auto L = FiniteLattice::from_pairs({"a", "b", "c", "d", "t"},
                                     {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 4}, {3, 4}});
  auto r = validate_lattice(L);
  CHECK_FALSE(r.passed("lattice.complete"));
  // No bottom either, so the first pair without a meet is {a, b}.
  CHECK(r.find("lattice.complete")->witness == "{a, b}");
  CHECK_FALSE(oracle::glb(L, {0, 1}).has_value());
  CHECK_FALSE(oracle::glb(L, {2, 3}).has_value());
}

TEST_CASE("upward closure") {
  auto C3 = FiniteLattice::chain({"0", "m", "1"});
  CHECK(upward_closure(C3, set_of(C3, {1})) == set_of(C3, {1, 2}));
  CHECK(upward_closure(C3, C3.empty_set()) == C3.empty_set());
  auto D = FiniteLattice::from_pairs({"bot", "x", "y", "top"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  CHECK(upward_closure(D, set_of(D, {1})) == set_of(D, {1, 3}));
}

TEST_CASE("meets and joins agree with the brute-force oracle on every lattice up to 6 elements") {
  for (std::size_t n = 1; n <= 6; ++n)
    for (const auto& L : enumerate_lattices(n)) {
      CHECK(validate_lattice(*L).ok());
      for (const auto& S : oracle::all_subsets(n)) {
        const auto s = set_of(*L, S);
        const auto m = L->meet(s);
        REQUIRE(m == *oracle::glb(*L, S));
        REQUIRE(L->join(s) == *oracle::lub(*L, S));
        // lower bound and greatest
        for (auto c : S) REQUIRE(L->leq(m, c));
        for (ElementId d = 0; d < n; ++d) {
          bool lower = true;
          for (auto c : S) lower = lower && L->leq(d, c);
          if (lower) REQUIRE(L->leq(d, m));
        }
        REQUIRE(L->meet(set_of(*L, {m})) == m);
      }
    }
}

TEST_CASE("lattice counts up to isomorphism") {
  const std::size_t expected[] = {1, 1, 1, 2, 5, 15, 53};
  for (std::size_t n = 1; n <= 7; ++n) CHECK(enumerate_lattices(n).size() == expected[n - 1]);
}

TEST_CASE("powerset backend agrees with the explicit backend on bases up to 4") {
  for (std::size_t n = 0; n <= 4; ++n) {
    std::vector<std::string> base;
    for (std::size_t i = 0; i < n; ++i) base.emplace_back(1, static_cast<char>('a' + i));
    auto P = FiniteLattice::powerset(base);
    auto E = explicit_powerset(n);
    REQUIRE(P.size() == E.size());
    CHECK(P.top() == E.top());
    CHECK(P.bottom() == E.bottom());
    for (ElementId a = 0; a < P.size(); ++a)
      for (ElementId b = 0; b < P.size(); ++b) {
        REQUIRE(P.leq(a, b) == E.leq(a, b));
        REQUIRE(P.meet(a, b) == E.meet(a, b));
        REQUIRE(P.join(a, b) == E.join(a, b));
      }
  }
}

TEST_CASE("random subset meets on a powerset of 10 points") {
  std::mt19937 rng(7);
  std::vector<std::string> base;
  for (int i = 0; i < 10; ++i) base.push_back("p" + std::to_string(i));
  auto P = FiniteLattice::powerset(base);
  std::uniform_int_distribution<ElementId> any(0, static_cast<ElementId>(P.size() - 1));
  for (int trial = 0; trial < 200; ++trial) {
    auto s = P.empty_set();
    ElementId uni = 0, inter = static_cast<ElementId>(P.size() - 1);
    for (int k = 0; k < 4; ++k) {
      auto x = any(rng);
      s.set(x);
      uni |= x;
      inter &= x;
    }
    CHECK(P.meet(s) == uni);
    CHECK(P.join(s) == inter);
  }
}

TEST_CASE("monotone map violation") {
  auto C = std::make_shared<const FiniteLattice>(FiniteLattice::chain({"0", "1"}));
  MonotoneMap up{C, C, {0, 1}}, swap{C, C, {1, 0}};
  CHECK_FALSE(up.monotonicity_violation().has_value());
  REQUIRE(swap.monotonicity_violation().has_value());
  CHECK(*swap.monotonicity_violation() == std::pair<ElementId, ElementId>{0, 1});
}

TEST_CASE("brace sets") {
  const std::vector<std::string> base{"a", "b", "c"};
  CHECK(parse_brace_set("{a c}", base) == 0b101u);
  CHECK(parse_brace_set("{}", base) == 0u);
  CHECK_FALSE(parse_brace_set("{a z}", base).has_value());
  CHECK(brace_set_name(0b110, base) == "{b c}");
}

TEST_CASE("unknown names throw") {
  auto L = FiniteLattice::chain({"0", "1"});
  CHECK(L.find("1") == 1u);
  CHECK_FALSE(L.find("2").has_value());
  CHECK_THROWS_AS(L.id_of("2"), UnknownElement);
}
