#include "krl/order.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "krl/errors.hpp"

namespace krl {

std::vector<ElementId> members(const ElementSet& s) {
  std::vector<ElementId> out;
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) out.push_back(static_cast<ElementId>(i));
  return out;
}

FiniteLattice FiniteLattice::from_relation(std::vector<std::string> names, std::vector<bool> leq) {
  if (names.empty()) throw std::invalid_argument("lattice needs at least one element");
  if (names.size() > kMaxExplicitSize)
    throw SizeLimitExceeded(fmt::format("explicit lattice of {} elements exceeds {}", names.size(), kMaxExplicitSize));
  if (leq.size() != names.size() * names.size()) throw std::invalid_argument("order relation has wrong size");
  FiniteLattice L;
  L.size_ = names.size();
  L.names_ = std::move(names);
  for (ElementId i = 0; i < L.size_; ++i)
    if (!L.index_.emplace(L.names_[i], i).second)
      throw std::invalid_argument(fmt::format("duplicate element name '{}'", L.names_[i]));
  L.leq_ = std::move(leq);
  L.finish_explicit();
  return L;
}

FiniteLattice FiniteLattice::from_pairs(std::vector<std::string> names,
                                        const std::vector<std::pair<ElementId, ElementId>>& pairs) {
  const std::size_t n = names.size();
  std::vector<bool> leq(n * n, false);
  for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = true;
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw std::out_of_range("order pair out of range");
    leq[a * n + b] = true;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq[k * n + j]) leq[i * n + j] = true;
  return from_relation(std::move(names), std::move(leq));
}

FiniteLattice FiniteLattice::chain(std::vector<std::string> names) {
  std::vector<std::pair<ElementId, ElementId>> pairs;
  for (ElementId i = 0; i + 1 < names.size(); ++i) pairs.emplace_back(i, i + 1);
  return from_pairs(std::move(names), pairs);
}

FiniteLattice FiniteLattice::powerset(std::vector<std::string> base_names) {
  if (base_names.size() > kMaxPowersetBase)
    throw SizeLimitExceeded(fmt::format("powerset base of {} exceeds {}", base_names.size(), kMaxPowersetBase));
  FiniteLattice L;
  L.powerset_ = true;
  L.lattice_ = true;
  L.base_names_ = std::move(base_names);
  L.size_ = std::size_t{1} << L.base_names_.size();
  L.top_ = 0;
  L.bottom_ = static_cast<ElementId>(L.size_ - 1);
  // Larger subsets are lower; sort by descending cardinality.
  L.linear_.resize(L.size_);
  std::iota(L.linear_.begin(), L.linear_.end(), 0);
  std::stable_sort(L.linear_.begin(), L.linear_.end(), [](ElementId a, ElementId b) {
    return __builtin_popcount(a) > __builtin_popcount(b);
  });
  return L;
}

void FiniteLattice::finish_explicit() {
  const std::size_t n = size_;
  auto le = [&](std::size_t a, std::size_t b) { return static_cast<bool>(leq_[a * n + b]); };
  bool order = true;
  for (std::size_t a = 0; a < n && order; ++a) {
    if (!le(a, a)) order = false;
    for (std::size_t b = 0; b < n && order; ++b) {
      if (a != b && le(a, b) && le(b, a)) order = false;
      if (le(a, b))
        for (std::size_t c = 0; c < n; ++c)
          if (le(b, c) && !le(a, c)) {
            order = false;
            break;
          }
    }
  }
  std::vector<ElementSet> down(n, ElementSet(n)), up(n, ElementSet(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (le(a, b)) {
        down[b].set(a);
        up[a].set(b);
      }
  linear_.resize(n);
  std::iota(linear_.begin(), linear_.end(), 0);
  if (!order) return;
  std::stable_sort(linear_.begin(), linear_.end(),
                   [&](ElementId a, ElementId b) { return down[a].count() < down[b].count(); });

  for (ElementId a = 0; a < n; ++a)
    if (up[a].count() == n) bottom_ = a;
    else if (down[a].count() == n) top_ = a;
  if (n == 1) top_ = bottom_ = 0;
  if (top_ == kNoElement || bottom_ == kNoElement) return;

  meet_table_.assign(n * n, kNoElement);
  join_table_.assign(n * n, kNoElement);
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = a; b < n; ++b) {
      ElementSet lb = down[a] & down[b];
      ElementId m = kNoElement;
      for (auto it = linear_.rbegin(); it != linear_.rend(); ++it)
        if (lb.test(*it)) {
          m = *it;
          break;
        }
      if (m == kNoElement || down[m] != lb) return;
      ElementSet ub = up[a] & up[b];
      ElementId j = kNoElement;
      for (ElementId x : linear_)
        if (ub.test(x)) {
          j = x;
          break;
        }
      if (j == kNoElement || up[j] != ub) return;
      meet_table_[a * n + b] = meet_table_[b * n + a] = m;
      join_table_[a * n + b] = join_table_[b * n + a] = j;
    }
  lattice_ = true;
}

void FiniteLattice::require_lattice() const {
  if (!lattice_) throw std::logic_error("order relation is not a complete lattice");
}

ElementId FiniteLattice::top() const {
  require_lattice();
  return top_;
}

ElementId FiniteLattice::bottom() const {
  require_lattice();
  return bottom_;
}

ElementId FiniteLattice::meet(ElementId a, ElementId b) const {
  if (powerset_) return a | b;
  require_lattice();
  return meet_table_[static_cast<std::size_t>(a) * size_ + b];
}

ElementId FiniteLattice::join(ElementId a, ElementId b) const {
  if (powerset_) return a & b;
  require_lattice();
  return join_table_[static_cast<std::size_t>(a) * size_ + b];
}

ElementId FiniteLattice::meet(const ElementSet& s) const {
  ElementId m = top();
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) m = meet(m, static_cast<ElementId>(i));
  return m;
}

ElementId FiniteLattice::join(const ElementSet& s) const {
  ElementId m = bottom();
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i)) m = join(m, static_cast<ElementId>(i));
  return m;
}

std::string FiniteLattice::name(ElementId a) const {
  if (powerset_) return brace_set_name(a, base_names_);
  return names_.at(a);
}

std::optional<ElementId> FiniteLattice::find(std::string_view name) const {
  if (powerset_) {
    auto m = parse_brace_set(name, base_names_);
    if (!m) return std::nullopt;
    return static_cast<ElementId>(*m);
  }
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

ElementId FiniteLattice::id_of(std::string_view name) const {
  auto id = find(name);
  if (!id) throw UnknownElement(fmt::format("unknown element '{}'", name));
  return *id;
}

std::string FiniteLattice::format(const ElementSet& s) const {
  std::string out = "{";
  bool first = true;
  for (ElementId a : members(s)) {
    if (!first) out += ", ";
    out += name(a);
    first = false;
  }
  return out + "}";
}

bool FiniteLattice::same_carrier(const FiniteLattice& other) const {
  if (powerset_ != other.powerset_ || size_ != other.size_) return false;
  if (powerset_) return base_names_ == other.base_names_;
  return names_ == other.names_ && leq_ == other.leq_;
}

ValidationReport validate_lattice(const FiniteLattice& L) {
  ValidationReport r("lattice");
  if (L.is_powerset()) {
    for (const char* id : {"lattice.reflexive", "lattice.antisymmetric", "lattice.transitive", "lattice.complete"})
      r.pass(id, "powerset backend");
    return r;
  }
  const auto n = static_cast<ElementId>(L.size());
  auto nm = [&](ElementId a) { return L.name(a); };

  std::string w;
  for (ElementId a = 0; a < n && w.empty(); ++a)
    if (!L.leq(a, a)) w = fmt::format("({})", nm(a));
  r.check("lattice.reflexive", w.empty(), w);

  w.clear();
  for (ElementId a = 0; a < n && w.empty(); ++a)
    for (ElementId b = a + 1; b < n && w.empty(); ++b)
      if (L.leq(a, b) && L.leq(b, a)) w = fmt::format("({}, {})", nm(a), nm(b));
  r.check("lattice.antisymmetric", w.empty(), w);

  w.clear();
  for (ElementId a = 0; a < n && w.empty(); ++a)
    for (ElementId b = 0; b < n && w.empty(); ++b)
      if (L.leq(a, b))
        for (ElementId c = 0; c < n; ++c)
          if (L.leq(b, c) && !L.leq(a, c)) {
            w = fmt::format("({}, {}, {})", nm(a), nm(b), nm(c));
            break;
          }
  r.check("lattice.transitive", w.empty(), w);

  // A greatest lower bound of a set X: a lower bound above every lower bound.
  auto has_glb = [&](const std::vector<ElementId>& xs) {
    std::vector<ElementId> lbs;
    for (ElementId d = 0; d < n; ++d)
      if (std::all_of(xs.begin(), xs.end(), [&](ElementId x) { return L.leq(d, x); })) lbs.push_back(d);
    return std::any_of(lbs.begin(), lbs.end(), [&](ElementId m) {
      return std::all_of(lbs.begin(), lbs.end(), [&](ElementId d) { return L.leq(d, m); });
    });
  };
  w.clear();
  for (ElementId a = 0; a < n && w.empty(); ++a)
    for (ElementId b = a + 1; b < n && w.empty(); ++b)
      if (!has_glb({a, b})) w = fmt::format("{{{}, {}}}", nm(a), nm(b));
  if (w.empty() && !has_glb({})) w = "{}";
  r.check("lattice.complete", w.empty(), w);
  return r;
}

ElementSet upward_closure(const FiniteLattice& L, const ElementSet& s) {
  ElementSet out(L.size());
  const auto ms = members(s);
  for (ElementId b = 0; b < L.size(); ++b)
    for (ElementId a : ms)
      if (L.leq(a, b)) {
        out.set(b);
        break;
      }
  return out;
}

std::optional<std::pair<ElementId, ElementId>> MonotoneMap::monotonicity_violation() const {
  const auto n = static_cast<ElementId>(source->size());
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b)
      if (source->leq(a, b) && !target->leq(table[a], table[b])) return std::make_pair(a, b);
  return std::nullopt;
}

std::optional<std::uint64_t> parse_brace_set(std::string_view text, const std::vector<std::string>& base) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}') return std::nullopt;
  text = text.substr(1, text.size() - 2);
  std::uint64_t mask = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == ',' || text[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < text.size() && text[j] != ' ' && text[j] != ',' && text[j] != '\t') ++j;
    if (j == i) break;
    auto tok = text.substr(i, j - i);
    auto it = std::find(base.begin(), base.end(), tok);
    if (it == base.end()) return std::nullopt;
    mask |= std::uint64_t{1} << (it - base.begin());
    i = j;
  }
  return mask;
}

std::string brace_set_name(std::uint64_t mask, const std::vector<std::string>& base) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < base.size(); ++i)
    if (mask >> i & 1) {
      if (!first) out += ' ';
      out += base[i];
      first = false;
    }
  return out + "}";
}

}  // namespace krl
