#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "krl/aks.hpp"
#include "krl/implicative.hpp"
#include "krl/report.hpp"

namespace krl {

struct IaMorphism {
  std::string name;
  AlgebraPtr source;
  AlgebraPtr target;
  std::vector<ElementId> map;

  ElementId operator()(ElementId a) const { return map[a]; }
};

struct AksMorphism {
  std::string name;
  AksPtr source;
  AksPtr target;
  std::vector<ElementId> map;

  ElementId operator()(ElementId p) const { return map[p]; }
  PiSet image(PiSet P) const;
};

using MorphismSpec = std::variant<IaMorphism, AksMorphism>;

IaMorphism identity_morphism(const AlgebraPtr& A);
AksMorphism identity_morphism(const AksPtr& K);

// Witnesses for applicativity and computational density.
// IA: t, r are target elements and h is indexed by target element.
// AKS: t, r are elements of the target carrier and h is indexed by subset
// mask of the target carrier, with subset masks of the source as values.
// h holds kNoElement outside its domain (the target separator).
struct DensityCertificate {
  ElementId t = kNoElement;
  ElementId r = kNoElement;
  std::vector<ElementId> h;
};

struct CertificateHint {
  std::optional<std::vector<ElementId>> h;
  std::optional<ElementId> t;
  std::optional<ElementId> r;
};

struct SearchOptions {
  // Backtracking nodes allowed per density search.
  std::uint64_t budget = default_search_budget();
  // KRL_SEARCH_BUDGET if set, else one million.
  static std::uint64_t default_search_budget();
};

// Node counter shared by a search; throws SearchBudgetExceeded when spent.
class SearchBudget {
 public:
  explicit SearchBudget(std::uint64_t limit) : remaining_(limit) {}
  void tick();
  std::uint64_t used() const { return used_; }

 private:
  std::uint64_t remaining_;
  std::uint64_t used_ = 0;
};

// Monotone choice function: pick value[i] from candidates[i] so that
// domain_leq(i, j) implies value_leq(value[i], value[j]). The domain is
// expected in linear-extension order (smaller elements first) and each
// candidate list least-first. Complete: backtracks over every choice.
struct SelectionProblem {
  std::size_t domain_size = 0;
  std::function<bool(std::size_t, std::size_t)> domain_leq;
  std::vector<std::vector<ElementId>> candidates;
  std::function<bool(ElementId, ElementId)> value_leq;
};

std::optional<std::vector<ElementId>> monotone_selection(const SelectionProblem& problem, SearchBudget& budget);

struct ApplicativeResult {
  ValidationReport report;
  // Realizer of the uniform condition on f(a->a') vs f(a)->f(a').
  std::optional<ElementId> uniform_realizer;
  // Realizer r with r f(s) f(a) <= f(sa); the certificate's r.
  std::optional<ElementId> realizer;
  bool ok() const { return report.ok(); }
};

ApplicativeResult check_applicative_ia(const IaMorphism& f);

// Decides the two realizer conditions by scanning every candidate of the
// target separator independently and reports whether they agree.
ValidationReport check_condition2_equiv(const IaMorphism& f);

struct DensityResult {
  ValidationReport report;
  std::optional<DensityCertificate> certificate;
};

DensityResult check_comp_dense_ia(const IaMorphism& f, const CertificateHint& hint = {},
                                  const SearchOptions& options = {});

// Search-free validation of a complete certificate.
ValidationReport verify_ia_certificate(const IaMorphism& f, const DensityCertificate& c);

// Largest carriers accepted by the AKS morphism checks (they enumerate
// pairs of subsets).
inline constexpr std::size_t kMaxAksMorphismCarrier = 10;

// Separator of A(K): {R : QP meets perp_left(R)}, as a membership table over masks.
std::vector<bool> aks_separator_table(const Aks& K);

ApplicativeResult check_applicative_aks(const AksMorphism& f);
DensityResult check_comp_dense_aks(const AksMorphism& f, const CertificateHint& hint = {},
                                   const SearchOptions& options = {});
ValidationReport verify_aks_certificate(const AksMorphism& f, const DensityCertificate& c);

// g after f. Throws ComposabilityError unless target(f) and source(g) share
// their carrier. With both certificates, h = h_f . h_g and fresh t and r.
std::pair<IaMorphism, std::optional<DensityCertificate>> compose(const IaMorphism& f, const IaMorphism& g,
                                                                 const std::optional<DensityCertificate>& cf = {},
                                                                 const std::optional<DensityCertificate>& cg = {});
std::pair<AksMorphism, std::optional<DensityCertificate>> compose(const AksMorphism& f, const AksMorphism& g,
                                                                  const std::optional<DensityCertificate>& cf = {},
                                                                  const std::optional<DensityCertificate>& cg = {});

bool two_cell_leq(const IaMorphism& f, const IaMorphism& g);
bool two_cell_leq(const AksMorphism& f, const AksMorphism& g);

}  // namespace krl
