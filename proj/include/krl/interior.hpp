#pragma once

#include <functional>
#include <string>
#include <vector>

#include "krl/implicative.hpp"
#include "krl/morphism.hpp"
#include "krl/order.hpp"
#include "krl/report.hpp"

namespace krl {

struct InteriorOperator {
  std::string name;
  LatticePtr lattice;
  std::vector<ElementId> table;

  ElementId operator()(ElementId a) const { return table[a]; }
  bool operator==(const InteriorOperator& o) const { return table == o.table; }
};

InteriorOperator make_interior(std::string name, LatticePtr lattice, const std::function<ElementId(ElementId)>& fn);
InteriorOperator identity_interior(LatticePtr lattice);

enum class InteriorClass { invalid, plain, topological, alexandroff };

// Deflationary, idempotent, monotone; flags topological and alexandroff.
// Meet preservation is checked on the empty family and on pairs, which
// covers every finite family.
ValidationReport validate_interior(const InteriorOperator& i);
InteriorClass classify(const InteriorOperator& i);

// Pointwise order: i <= j when i(a) <= j(a) for every a.
bool operator_leq(const InteriorOperator& i, const InteriorOperator& j);

// c(a) = inf of the open elements above a. Throws NotAlexandroff.
std::vector<ElementId> closure_from_interior(const InteriorOperator& i);

struct ClosedPart {
  enum class Flavor { sup_closed, sup_and_meet_closed };
  LatticePtr lattice;
  ElementSet members;
  Flavor flavor = Flavor::sup_closed;
};

// Open elements of i; flavor sup_and_meet_closed exactly when i is Alexandroff.
ClosedPart theta(const InteriorOperator& i);
// x |-> sup of the members below x. Throws InvalidClosedPart when the
// members violate the flavor (bottom and pairwise joins; additionally top
// and pairwise meets for sup_and_meet_closed).
InteriorOperator theta_inv(const ClosedPart& B);

// Least Alexandroff operator above i.
InteriorOperator al_approx(const InteriorOperator& i);
// Closes the open elements under ambient joins and meets, then theta_inv.
InteriorOperator al_approx_general(const InteriorOperator& i);
// Powerset lattices only: P |-> union of i({x}) over x in P.
InteriorOperator al_approx_powerset(const InteriorOperator& i);

struct ChangedAlgebra {
  AlgebraPtr base;
  InteriorOperator iota;
  ElementSet opens;                  // over the base carrier
  std::vector<ElementId> open_ids;   // base id of each element of `changed`
  std::vector<ElementId> closure;    // closure operator table over the base
  AlgebraPtr changed;                // opens, implication iota(a->b), separator iota(S)
  ElementId nu = kNoElement;         // base ids below
  ElementId k_iota = kNoElement;
  ElementId s_iota = kNoElement;
  bool iota_imp_invariant = false;   // iota(a)->b = a->b for all a, b
  ValidationReport report;

  // Index in `changed` of an open base element; kNoElement otherwise.
  ElementId to_changed(ElementId base_id) const;
};

// Throws HypothesisFailed when i is not Alexandroff, not compatible with
// the separator, or some i.a is not below iota(a).
ChangedAlgebra change_implication(const AlgebraPtr& A, const InteriorOperator& iota);

struct ChangeCertificates {
  IaMorphism inclusion;          // A_iota -> A
  DensityCertificate inclusion_certificate;
  IaMorphism restriction;        // A -> A_iota, a |-> iota(a)
  DensityCertificate restriction_certificate;
  ValidationReport report;
};

// Throws HypothesisFailed unless iota(a)->b = a->b for all a, b.
ChangeCertificates density_certificates(const ChangedAlgebra& C);

}  // namespace krl
