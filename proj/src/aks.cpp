#include "krl/aks.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <stdexcept>

#include "krl/errors.hpp"

namespace krl {

AbstractKrivineStructure::AbstractKrivineStructure(std::string name, std::vector<std::string> names,
                                                   std::vector<PiSet> perp_rows, std::vector<ElementId> push,
                                                   std::vector<ElementId> app, PiSet qp, ElementId K, ElementId S)
    : name_(std::move(name)),
      names_(std::move(names)),
      rows_(std::move(perp_rows)),
      push_(std::move(push)),
      app_(std::move(app)),
      qp_(qp),
      K_(K),
      S_(S) {
  const std::size_t n = names_.size();
  if (n == 0) throw std::invalid_argument("AKS needs a nonempty carrier");
  if (n > kMaxSize) throw SizeLimitExceeded(fmt::format("AKS carrier of {} exceeds {}", n, kMaxSize));
  if (rows_.size() != n || push_.size() != n * n || app_.size() != n * n)
    throw std::invalid_argument("AKS tables have wrong size");
  const PiSet all = pi_full(n);
  for (PiSet r : rows_)
    if (r & ~all) throw std::out_of_range("perp row out of range");
  for (ElementId x : push_)
    if (x >= n) throw std::out_of_range("push entry out of range");
  for (ElementId x : app_)
    if (x >= n) throw std::out_of_range("app entry out of range");
  if ((qp_ & ~all) || K_ >= n || S_ >= n) throw std::out_of_range("QP, K or S out of range");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (names_[i] == names_[j]) throw std::invalid_argument(fmt::format("duplicate element name '{}'", names_[i]));
  cols_.assign(n, 0);
  for (ElementId t = 0; t < n; ++t)
    for (ElementId p = 0; p < n; ++p)
      if (rows_[t] >> p & 1) cols_[p] |= pi_bit(t);
}

AbstractKrivineStructure AbstractKrivineStructure::polarity(std::string name, std::vector<std::string> names,
                                                            std::vector<PiSet> perp_rows) {
  const std::size_t n = names.size();
  return AbstractKrivineStructure(std::move(name), std::move(names), std::move(perp_rows),
                                  std::vector<ElementId>(n * n, 0), std::vector<ElementId>(n * n, 0), 0, 0, 0);
}

std::optional<ElementId> AbstractKrivineStructure::find(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<ElementId>(it - names_.begin());
}

ElementId AbstractKrivineStructure::id_of(std::string_view name) const {
  auto id = find(name);
  if (!id) throw UnknownElement(fmt::format("unknown element '{}' in '{}'", name, name_));
  return *id;
}

bool AbstractKrivineStructure::same_carrier(const AbstractKrivineStructure& other) const {
  return this == &other || (names_ == other.names_ && rows_ == other.rows_);
}

PiSet perp_left(const Aks& K, PiSet P) {
  PiSet out = K.full();
  for (PiSet rest = P; rest; rest &= rest - 1) out &= K.column(static_cast<ElementId>(__builtin_ctzll(rest)));
  return out;
}

PiSet perp_right(const Aks& K, PiSet L) {
  PiSet out = K.full();
  for (PiSet rest = L; rest; rest &= rest - 1) out &= K.row(static_cast<ElementId>(__builtin_ctzll(rest)));
  return out;
}

PiSet bar_closure(const Aks& K, PiSet P) { return perp_right(K, perp_left(K, P)); }

PiSet hat_closure(const Aks& K, PiSet P) {
  PiSet out = 0;
  for (PiSet rest = P; rest; rest &= rest - 1) out |= bar_closure(K, rest & -rest);
  return out;
}

bool spec_preorder(const Aks& K, ElementId sigma, ElementId pi) {
  return bar_closure(K, pi_bit(sigma)) >> pi & 1;
}

PiSet imp_sets(const Aks& K, PiSet P, PiSet Q) {
  PiSet out = 0;
  const PiSet left = perp_left(K, P);
  for (PiSet ts = left; ts; ts &= ts - 1) {
    const auto t = static_cast<ElementId>(__builtin_ctzll(ts));
    for (PiSet qs = Q; qs; qs &= qs - 1) out |= pi_bit(K.push(t, static_cast<ElementId>(__builtin_ctzll(qs))));
  }
  return out;
}

PiSet app_sets(const Aks& K, PiSet P, PiSet Q) {
  PiSet out = 0;
  const PiSet left = perp_left(K, Q);
  for (ElementId p = 0; p < K.size(); ++p) {
    bool all = true;
    for (PiSet ts = left; ts && all; ts &= ts - 1)
      all = P >> K.push(static_cast<ElementId>(__builtin_ctzll(ts)), p) & 1;
    if (all) out |= pi_bit(p);
  }
  return out;
}

ValidationReport validate_aks(const Aks& K) {
  ValidationReport r("aks " + K.name());
  const auto n = static_cast<ElementId>(K.size());
  auto nm = [&](ElementId x) { return K.element_name(x); };

  std::string w;
  bool strong = true;
  for (ElementId t = 0; t < n; ++t)
    for (ElementId s = 0; s < n; ++s)
      for (ElementId p = 0; p < n; ++p) {
        const bool lhs = K.perp(t, K.push(s, p));
        const bool rhs = K.perp(K.app(t, s), p);
        if (lhs && !rhs && w.empty()) w = fmt::format("(t={}, s={}, pi={})", nm(t), nm(s), nm(p));
        if (lhs != rhs) strong = false;
      }
  r.check("aks.compatibility", w.empty(), w, "t perp s.pi implies ts perp pi");
  r.flag("strongly-compatible", strong, "t perp s.pi iff ts perp pi");

  w.clear();
  for (ElementId t = 0; t < n && w.empty(); ++t)
    if (K.qp() >> t & 1)
      for (ElementId s = 0; s < n; ++s)
        if ((K.qp() >> s & 1) && !(K.qp() >> K.app(t, s) & 1)) {
          w = fmt::format("(t={}, s={})", nm(t), nm(s));
          break;
        }
  r.check("aks.qp-app-closed", w.empty(), w);
  r.check("aks.qp-contains-K", K.qp() >> K.K() & 1, nm(K.K()));
  r.check("aks.qp-contains-S", K.qp() >> K.S() & 1, nm(K.S()));

  w.clear();
  for (ElementId t = 0; t < n && w.empty(); ++t)
    for (ElementId p = 0; p < n && w.empty(); ++p) {
      if (!K.perp(t, p)) continue;
      for (ElementId s = 0; s < n; ++s)
        if (!K.perp(K.K(), push_chain(K, t, s, p))) {
          w = fmt::format("(t={}, s={}, pi={})", nm(t), nm(s), nm(p));
          break;
        }
    }
  r.check("aks.k-axiom", w.empty(), w, "t perp pi implies K perp t.s.pi");

  w.clear();
  for (ElementId t = 0; t < n && w.empty(); ++t)
    for (ElementId s = 0; s < n && w.empty(); ++s)
      for (ElementId u = 0; u < n && w.empty(); ++u) {
        const ElementId lhs = K.app(K.app(t, u), K.app(s, u));
        for (ElementId p = 0; p < n; ++p)
          if (K.perp(lhs, p) && !K.perp(K.S(), push_chain(K, t, s, u, p))) {
            w = fmt::format("(t={}, s={}, u={}, pi={})", nm(t), nm(s), nm(u), nm(p));
            break;
          }
      }
  r.check("aks.s-axiom", w.empty(), w, "tu(su) perp pi implies S perp t.s.u.pi");
  return r;
}

}  // namespace krl
