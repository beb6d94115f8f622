#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "krl/order.hpp"
#include "krl/report.hpp"

namespace krl {

// A complete lattice with an implication. Both the implication and the
// application tables are materialized at construction.
class ImplicativeStructure {
 public:
  using Rule = std::function<ElementId(ElementId, ElementId)>;
  static constexpr std::size_t kMaxSize = 1024;

  // Explicit implication table, row-major: imp[a * n + b] = a -> b.
  // Application is computed from its defining set.
  ImplicativeStructure(LatticePtr lattice, std::vector<ElementId> imp);
  // Both operations given as closed formulas (used for powerset backends).
  ImplicativeStructure(LatticePtr lattice, const Rule& imp, const Rule& app);

  const FiniteLattice& lattice() const { return *lattice_; }
  const LatticePtr& lattice_ptr() const { return lattice_; }
  std::size_t size() const { return n_; }

  ElementId imp(ElementId a, ElementId b) const { return imp_[a * n_ + b]; }
  ElementId app(ElementId a, ElementId b) const { return app_[a * n_ + b]; }
  const std::vector<ElementId>& imp_table() const { return imp_; }
  const std::vector<ElementId>& app_table() const { return app_; }
  bool app_from_rule() const { return app_from_rule_; }

 private:
  LatticePtr lattice_;
  std::size_t n_;
  std::vector<ElementId> imp_;
  std::vector<ElementId> app_;
  bool app_from_rule_ = false;
};

using StructurePtr = std::shared_ptr<const ImplicativeStructure>;

// inf { c : a <= b -> c }, by enumeration of c.
ElementId application_by_definition(const ImplicativeStructure& A, ElementId a, ElementId b);
inline ElementId application(const ImplicativeStructure& A, ElementId a, ElementId b) { return A.app(a, b); }

// Implication axioms: antitone/monotone and meet-commutation (nonempty and
// empty families reported separately; flag quasi-implicative).
ValidationReport check_structure(const ImplicativeStructure& A);
// Half and full adjunction plus the unit/counit inequalities.
ValidationReport check_adjunction(const ImplicativeStructure& A);

ElementId combinator_i(const ImplicativeStructure& A);
ElementId combinator_k(const ImplicativeStructure& A);
ElementId combinator_s(const ImplicativeStructure& A);
ElementId combinator_cc(const ImplicativeStructure& A);

struct ImplicativeAlgebra {
  std::string name;
  StructurePtr structure;
  ElementSet separator;
  ElementId k = kNoElement;
  ElementId s = kNoElement;

  const FiniteLattice& lattice() const { return structure->lattice(); }
  const LatticePtr& lattice_ptr() const { return structure->lattice_ptr(); }
  std::size_t size() const { return structure->size(); }
  ElementId imp(ElementId a, ElementId b) const { return structure->imp(a, b); }
  ElementId app(ElementId a, ElementId b) const { return structure->app(a, b); }
  bool in_separator(ElementId a) const { return separator.test(a); }
  std::string element_name(ElementId a) const { return lattice().name(a); }
};

using AlgebraPtr = std::shared_ptr<const ImplicativeAlgebra>;

// k and s default to the canonical combinators.
AlgebraPtr make_algebra(std::string name, StructurePtr structure, ElementSet separator,
                        std::optional<ElementId> k = std::nullopt, std::optional<ElementId> s = std::nullopt);

// The composition combinator (s (k s)) k; checked to lie in the separator and
// to satisfy nu a b c <= a (b c). Throws VerificationFailed otherwise.
ElementId combinator_nu(const ImplicativeAlgebra& A);

// Least separator containing the generators (with the canonical k and s).
ElementSet separator_closure(const ImplicativeStructure& A, const ElementSet& generators);

ValidationReport validate_algebra(const ImplicativeAlgebra& A);

struct EntailmentWitness {
  ElementId realizer;
  ElementId lhs;
  ElementId rhs;
};

std::optional<EntailmentWitness> entails(const ImplicativeAlgebra& A, ElementId a, ElementId b);
std::optional<ElementId> uniform_entails(const ImplicativeAlgebra& A,
                                         const std::vector<std::pair<ElementId, ElementId>>& pairs);

// Same carrier (names and order) in both algebras.
bool same_carrier(const ImplicativeAlgebra& a, const ImplicativeAlgebra& b);

}  // namespace krl
