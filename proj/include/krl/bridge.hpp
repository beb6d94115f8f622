#pragma once

#include <optional>
#include <vector>

#include "krl/aks.hpp"
#include "krl/implicative.hpp"
#include "krl/morphism.hpp"

namespace krl {

struct FunctorImageIA {
  AlgebraPtr algebra;
  AksPtr provenance;
};

struct FunctorImageAKS {
  AksPtr aks;
  AlgebraPtr provenance;
};

// Powerset algebra of an AKS. The result has 2^|Pi| elements, so |Pi| is
// limited by ImplicativeStructure::kMaxSize. Throws InvalidSource if the AKS
// fails validation.
FunctorImageIA functor_A_obj(const AksPtr& K);
// The AKS whose carrier is the algebra, with perp the order, push the
// implication and app the application. Throws InvalidSource.
FunctorImageAKS functor_K_obj(const AlgebraPtr& A);

// Same as above without validating the source first.
AlgebraPtr powerset_algebra(const AksPtr& K);
AksPtr order_aks(const AlgebraPtr& A);

struct MappedMorphismIA {
  IaMorphism morphism;
  ValidationReport report;
  std::optional<DensityCertificate> certificate;
};

struct MappedMorphismAKS {
  AksMorphism morphism;
  ValidationReport report;
  std::optional<DensityCertificate> certificate;
};

// Carrier parts of the functors on morphisms, without any checks.
IaMorphism direct_image(const AksMorphism& f, AlgebraPtr source_image = nullptr, AlgebraPtr target_image = nullptr);
AksMorphism same_function(const IaMorphism& f, AksPtr source_image = nullptr, AksPtr target_image = nullptr);

// Direct image map between the powerset algebras. With a certificate for f,
// the image certificate reuses h, takes t = {tau}^perp and searches r.
// Optional source/target images let callers share carriers.
MappedMorphismIA functor_A_mor(const AksMorphism& f, const std::optional<DensityCertificate>& cert = {},
                               AlgebraPtr source_image = nullptr, AlgebraPtr target_image = nullptr);
// Same carrier function between K(A) and K(B). With a certificate for f the
// image certificate uses h(R) = {h(b) : b in R} and the same t.
MappedMorphismAKS functor_K_mor(const IaMorphism& f, const std::optional<DensityCertificate>& cert = {},
                                AksPtr source_image = nullptr, AksPtr target_image = nullptr);

// Counit at A: A(K(A)) -> A, C |-> inf C. `aka` may supply A(K(A)).
IaMorphism counit_at(const AlgebraPtr& A, AlgebraPtr aka = nullptr);
// Unit at K: K -> K(A(K)), pi |-> {pi}. `kak` may supply K(A(K)).
AksMorphism unit_at(const AksPtr& K, AksPtr kak = nullptr);

// Explicit witnesses: h(a) = up-set of a, t = i.
CertificateHint counit_hint(const IaMorphism& counit);
// Explicit witnesses: h = union, t = r = {SKK}^perp.
CertificateHint unit_hint(const AksMorphism& unit);

ValidationReport composite_AK_check(const AlgebraPtr& A);
ValidationReport composite_KA_check(const AksPtr& K);

// Unit, counit, both triangles and naturality for the supplied morphisms.
// K may be null, which skips the unit side.
ValidationReport check_adjunction_instance(const AlgebraPtr& A, const AksPtr& K,
                                           const std::vector<IaMorphism>& ia_tests = {},
                                           const std::vector<AksMorphism>& aks_tests = {});

}  // namespace krl
