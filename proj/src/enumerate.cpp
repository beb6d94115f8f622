#include "krl/enumerate.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace krl {

namespace {

std::vector<std::string> generic_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(fmt::format("e{}", i));
  return names;
}

// Smallest relation matrix over all relabellings that keep the labelling
// a linear extension. Plain permutations are fine at this size.
std::vector<bool> canonical_form(const std::vector<bool>& leq, std::size_t n) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<bool> best;
  do {
    std::vector<bool> m(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) m[perm[a] * n + perm[b]] = leq[a * n + b];
    if (best.empty() || m < best) best = std::move(m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::vector<LatticePtr> enumerate_lattices(std::size_t n) {
  if (n == 0 || n > 7) throw std::invalid_argument("lattice enumeration supports 1..7 elements");
  std::vector<LatticePtr> out;
  if (n == 1) {
    out.push_back(std::make_shared<const FiniteLattice>(FiniteLattice::chain(generic_names(1))));
    return out;
  }
  // Strict pairs a < b among the middle elements 1..n-2 with a < b as labels.
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t a = 1; a + 1 < n; ++a)
    for (std::size_t b = a + 1; b + 1 < n; ++b) slots.emplace_back(a, b);

  std::set<std::vector<bool>> seen;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << slots.size()); ++bits) {
    std::vector<bool> leq(n * n, false);
    for (std::size_t a = 0; a < n; ++a) {
      leq[a * n + a] = true;
      leq[0 * n + a] = true;
      leq[a * n + n - 1] = true;
    }
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (bits >> k & 1) leq[slots[k].first * n + slots[k].second] = true;
    bool transitive = true;
    for (std::size_t a = 0; a < n && transitive; ++a)
      for (std::size_t b = 0; b < n && transitive; ++b)
        if (leq[a * n + b])
          for (std::size_t c = 0; c < n; ++c)
            if (leq[b * n + c] && !leq[a * n + c]) {
              transitive = false;
              break;
            }
    if (!transitive) continue;
    auto L = FiniteLattice::from_relation(generic_names(n), leq);
    if (!L.is_lattice()) continue;
    if (!seen.insert(canonical_form(leq, n)).second) continue;
    out.push_back(std::make_shared<const FiniteLattice>(std::move(L)));
  }
  return out;
}

void for_each_imp_table(const FiniteLattice& L, const std::function<bool(const std::vector<ElementId>&)>& visit) {
  const std::size_t n = L.size();
  std::vector<ElementId> t(n * n, 0);
  // Cells filled in row-major order; each cell is checked against the
  // already filled cells to its left (monotone) and above (antitone).
  std::function<bool(std::size_t)> fill = [&](std::size_t cell) -> bool {
    if (cell == n * n) return visit(t);
    const ElementId a = static_cast<ElementId>(cell / n), b = static_cast<ElementId>(cell % n);
    for (ElementId v = 0; v < n; ++v) {
      bool ok = true;
      for (ElementId b2 = 0; b2 < b && ok; ++b2) {
        if (L.leq(b2, b) && !L.leq(t[a * n + b2], v)) ok = false;
        if (L.leq(b, b2) && !L.leq(v, t[a * n + b2])) ok = false;
      }
      for (ElementId a2 = 0; a2 < a && ok; ++a2) {
        if (L.leq(a2, a) && !L.leq(v, t[a2 * n + b])) ok = false;
        if (L.leq(a, a2) && !L.leq(t[a2 * n + b], v)) ok = false;
      }
      if (!ok) continue;
      t[cell] = v;
      if (!fill(cell + 1)) return false;
    }
    return true;
  };
  fill(0);
}

std::vector<InteriorOperator> enumerate_interiors(const LatticePtr& L) {
  const std::size_t n = L->size();
  if (n > 7) throw std::invalid_argument("interior enumeration supports at most 7 elements");
  std::vector<InteriorOperator> out;
  std::vector<ElementId> t(n, 0);
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= n;
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    bool deflationary = true;
    for (std::size_t i = 0; i < n; ++i) {
      t[i] = static_cast<ElementId>(c % n);
      c /= n;
      if (!L->leq(t[i], static_cast<ElementId>(i))) deflationary = false;
    }
    if (!deflationary) continue;
    InteriorOperator op{fmt::format("i{}", out.size()), L, t};
    if (validate_interior(op).ok()) out.push_back(std::move(op));
  }
  return out;
}

}  // namespace krl
