#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "krl/report.hpp"

namespace krl {

using ElementId = std::uint32_t;
inline constexpr ElementId kNoElement = 0xffffffffu;

// Set of elements of one carrier, indexed by ElementId.
using ElementSet = boost::dynamic_bitset<>;

std::vector<ElementId> members(const ElementSet& s);

// Finite complete lattice. Two backends:
//  - explicit: an arbitrary order relation given as a table; meets and joins
//    are tabulated once the relation is known to be a complete lattice;
//  - powerset: subsets of a base set ordered by reverse inclusion, the
//    ElementId being the subset's bitmask. Meet is union, join intersection.
class FiniteLattice {
 public:
  static constexpr std::size_t kMaxExplicitSize = 1024;
  static constexpr std::size_t kMaxPowersetBase = 16;

  // `leq` is row-major: leq[a * n + b] says a <= b. Not validated here;
  // see validate_lattice and is_lattice.
  static FiniteLattice from_relation(std::vector<std::string> names, std::vector<bool> leq);
  // Reflexive-transitive closure of the given pairs (a, b) meaning a <= b.
  static FiniteLattice from_pairs(std::vector<std::string> names,
                                  const std::vector<std::pair<ElementId, ElementId>>& pairs);
  static FiniteLattice chain(std::vector<std::string> names);
  static FiniteLattice powerset(std::vector<std::string> base_names);

  std::size_t size() const { return size_; }
  bool is_powerset() const { return powerset_; }
  std::size_t base_size() const { return base_names_.size(); }
  const std::vector<std::string>& base_names() const { return base_names_; }

  // True when the relation is a partial order in which every subset has a meet.
  // Always true for the powerset backend.
  bool is_lattice() const { return lattice_; }

  bool leq(ElementId a, ElementId b) const {
    if (powerset_) return (b & ~a) == 0;
    return leq_[static_cast<std::size_t>(a) * size_ + b];
  }

  // The lattice operations below throw std::logic_error unless is_lattice().
  ElementId top() const;
  ElementId bottom() const;
  ElementId meet(ElementId a, ElementId b) const;
  ElementId join(ElementId a, ElementId b) const;
  ElementId meet(const ElementSet& s) const;
  ElementId join(const ElementSet& s) const;
  template <class Range>
  ElementId meet_of(const Range& r) const {
    ElementId m = top();
    for (ElementId x : r) m = meet(m, x);
    return m;
  }
  template <class Range>
  ElementId join_of(const Range& r) const {
    ElementId m = bottom();
    for (ElementId x : r) m = join(m, x);
    return m;
  }

  ElementSet empty_set() const { return ElementSet(size_); }
  ElementSet full_set() const {
    ElementSet s(size_);
    s.set();
    return s;
  }

  std::string name(ElementId a) const;
  std::optional<ElementId> find(std::string_view name) const;
  ElementId id_of(std::string_view name) const;  // throws UnknownElement
  std::string format(const ElementSet& s) const;

  // Elements sorted so that a < b implies a comes first.
  const std::vector<ElementId>& linear_extension() const { return linear_; }

  // Same size, same element names in the same order, same relation.
  bool same_carrier(const FiniteLattice& other) const;

 private:
  FiniteLattice() = default;
  void finish_explicit();
  void require_lattice() const;

  std::size_t size_ = 0;
  bool powerset_ = false;
  bool lattice_ = false;
  std::vector<std::string> names_;       // explicit backend
  std::unordered_map<std::string, ElementId> index_;
  std::vector<std::string> base_names_;  // powerset backend
  std::vector<bool> leq_;
  std::vector<ElementId> meet_table_;
  std::vector<ElementId> join_table_;
  ElementId top_ = kNoElement;
  ElementId bottom_ = kNoElement;
  std::vector<ElementId> linear_;
};

using LatticePtr = std::shared_ptr<const FiniteLattice>;

ValidationReport validate_lattice(const FiniteLattice& L);

ElementSet upward_closure(const FiniteLattice& L, const ElementSet& s);

struct MonotoneMap {
  LatticePtr source;
  LatticePtr target;
  std::vector<ElementId> table;

  ElementId operator()(ElementId a) const { return table[a]; }
  // First pair (a, b) with a <= b but table(a) not <= table(b).
  std::optional<std::pair<ElementId, ElementId>> monotonicity_violation() const;
};

// Parses a brace-set name such as "{a b}" against a base, returning the mask.
std::optional<std::uint64_t> parse_brace_set(std::string_view text, const std::vector<std::string>& base);
std::string brace_set_name(std::uint64_t mask, const std::vector<std::string>& base);

}  // namespace krl
