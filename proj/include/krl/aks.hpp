#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "krl/order.hpp"
#include "krl/report.hpp"

namespace krl {

// Subset of an AKS carrier as a bitmask.
using PiSet = std::uint64_t;

inline int pi_count(PiSet s) { return __builtin_popcountll(s); }
inline PiSet pi_bit(ElementId i) { return PiSet{1} << i; }
inline PiSet pi_full(std::size_t n) { return n >= 64 ? ~PiSet{0} : (PiSet{1} << n) - 1; }

class AbstractKrivineStructure {
 public:
  static constexpr std::size_t kMaxSize = 64;

  // perp_rows[t] is the set of pi with t perp pi. push[t * n + p] = t.p,
  // app[t * n + s] = ts.
  AbstractKrivineStructure(std::string name, std::vector<std::string> names, std::vector<PiSet> perp_rows,
                           std::vector<ElementId> push, std::vector<ElementId> app, PiSet qp, ElementId K,
                           ElementId S);

  // Carrier with a polarity only; push and app are constant and QP is empty.
  // Used where only the closure operators matter.
  static AbstractKrivineStructure polarity(std::string name, std::vector<std::string> names,
                                           std::vector<PiSet> perp_rows);

  const std::string& name() const { return name_; }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& element_name(ElementId i) const { return names_.at(i); }
  std::optional<ElementId> find(std::string_view name) const;
  ElementId id_of(std::string_view name) const;  // throws UnknownElement
  std::string format(PiSet s) const { return brace_set_name(s, names_); }

  bool perp(ElementId t, ElementId p) const { return rows_[t] >> p & 1; }
  PiSet row(ElementId t) const { return rows_[t]; }
  PiSet column(ElementId p) const { return cols_[p]; }
  ElementId push(ElementId t, ElementId p) const { return push_[t * size() + p]; }
  ElementId app(ElementId t, ElementId s) const { return app_[t * size() + s]; }
  PiSet qp() const { return qp_; }
  ElementId K() const { return K_; }
  ElementId S() const { return S_; }
  PiSet full() const { return pi_full(size()); }

  const std::vector<PiSet>& perp_rows() const { return rows_; }
  const std::vector<ElementId>& push_table() const { return push_; }
  const std::vector<ElementId>& app_table() const { return app_; }

  bool same_carrier(const AbstractKrivineStructure& other) const;

 private:
  std::string name_;
  std::vector<std::string> names_;
  std::vector<PiSet> rows_;
  std::vector<PiSet> cols_;
  std::vector<ElementId> push_;
  std::vector<ElementId> app_;
  PiSet qp_;
  ElementId K_;
  ElementId S_;
};

using Aks = AbstractKrivineStructure;
using AksPtr = std::shared_ptr<const AbstractKrivineStructure>;

// {t : t perp every element of P}; the whole carrier for P empty.
PiSet perp_left(const Aks& K, PiSet P);
// {pi : every element of L is perp pi}; the whole carrier for L empty.
PiSet perp_right(const Aks& K, PiSet L);
PiSet bar_closure(const Aks& K, PiSet P);
PiSet hat_closure(const Aks& K, PiSet P);
// sigma below pi in the specialization preorder: pi lies in bar({sigma}).
bool spec_preorder(const Aks& K, ElementId sigma, ElementId pi);

// {t.pi : t in perp_left(P), pi in Q}
PiSet imp_sets(const Aks& K, PiSet P, PiSet Q);
// {pi : t.pi in P for every t in perp_left(Q)}
PiSet app_sets(const Aks& K, PiSet P, PiSet Q);

// Terms of a push chain: t.s.pi = push(t, push(s, pi)).
inline ElementId push_chain(const Aks& K, ElementId t, ElementId p) { return K.push(t, p); }
template <class... Rest>
ElementId push_chain(const Aks& K, ElementId t, ElementId s, Rest... rest) {
  return K.push(t, push_chain(K, s, rest...));
}

ValidationReport validate_aks(const Aks& K);

}  // namespace krl
