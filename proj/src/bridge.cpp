#include "krl/bridge.hpp"

#include <fmt/format.h>

#include "krl/errors.hpp"

namespace krl {

namespace {

std::size_t max_powerset_base() {
  std::size_t b = 0;
  while ((std::size_t{2} << b) <= ImplicativeStructure::kMaxSize) ++b;
  return b;
}

ElementId meet_of_mask(const FiniteLattice& L, std::uint64_t mask) {
  ElementId m = L.top();
  for (std::uint64_t rest = mask; rest; rest &= rest - 1) m = L.meet(m, static_cast<ElementId>(__builtin_ctzll(rest)));
  return m;
}

std::uint64_t up_set_mask(const FiniteLattice& L, ElementId a) {
  std::uint64_t m = 0;
  for (ElementId b = 0; b < L.size(); ++b)
    if (L.leq(a, b)) m |= std::uint64_t{1} << b;
  return m;
}

}  // namespace

AlgebraPtr powerset_algebra(const AksPtr& K) {
  if (K->size() > max_powerset_base())
    throw SizeLimitExceeded(fmt::format("A({}) would have 2^{} elements; at most {} base elements are supported",
                                        K->name(), K->size(), max_powerset_base()));
  auto L = std::make_shared<const FiniteLattice>(FiniteLattice::powerset(K->names()));
  const Aks* k = K.get();
  auto structure = std::make_shared<const ImplicativeStructure>(
      L, [k](ElementId P, ElementId Q) { return static_cast<ElementId>(imp_sets(*k, P, Q)); },
      [k](ElementId P, ElementId Q) { return static_cast<ElementId>(app_sets(*k, P, Q)); });
  ElementSet phi(L->size());
  for (ElementId R = 0; R < L->size(); ++R)
    if (K->qp() & perp_left(*K, R)) phi.set(R);
  return make_algebra("A(" + K->name() + ")", structure, std::move(phi), static_cast<ElementId>(K->row(K->K())),
                      static_cast<ElementId>(K->row(K->S())));
}

FunctorImageIA functor_A_obj(const AksPtr& K) {
  auto report = validate_aks(*K);
  if (!report.ok()) throw InvalidSource(fmt::format("AKS '{}' is not valid:\n{}", K->name(), report.to_text()));
  return {powerset_algebra(K), K};
}

AksPtr order_aks(const AlgebraPtr& A) {
  const std::size_t n = A->size();
  if (n > Aks::kMaxSize)
    throw SizeLimitExceeded(fmt::format("K({}) needs at most {} elements, got {}", A->name, Aks::kMaxSize, n));
  const auto& L = A->lattice();
  std::vector<std::string> names(n);
  std::vector<PiSet> rows(n, 0);
  std::vector<ElementId> push(n * n), app(n * n);
  PiSet qp = 0;
  for (ElementId a = 0; a < n; ++a) {
    names[a] = L.name(a);
    if (A->in_separator(a)) qp |= pi_bit(a);
    for (ElementId b = 0; b < n; ++b) {
      if (L.leq(a, b)) rows[a] |= pi_bit(b);
      push[a * n + b] = A->imp(a, b);
      app[a * n + b] = A->app(a, b);
    }
  }
  return std::make_shared<const Aks>("K(" + A->name + ")", std::move(names), std::move(rows), std::move(push),
                                     std::move(app), qp, A->k, A->s);
}

FunctorImageAKS functor_K_obj(const AlgebraPtr& A) {
  auto report = validate_algebra(*A);
  if (!report.ok()) throw InvalidSource(fmt::format("algebra '{}' is not valid:\n{}", A->name, report.to_text()));
  return {order_aks(A), A};
}

IaMorphism direct_image(const AksMorphism& f, AlgebraPtr source_image, AlgebraPtr target_image) {
  if (!source_image) source_image = powerset_algebra(f.source);
  if (!target_image) target_image = powerset_algebra(f.target);
  IaMorphism out{"A(" + f.name + ")", source_image, target_image, std::vector<ElementId>(source_image->size())};
  for (ElementId P = 0; P < source_image->size(); ++P) out.map[P] = static_cast<ElementId>(f.image(P));
  return out;
}

AksMorphism same_function(const IaMorphism& f, AksPtr source_image, AksPtr target_image) {
  if (!source_image) source_image = order_aks(f.source);
  if (!target_image) target_image = order_aks(f.target);
  return AksMorphism{"K(" + f.name + ")", source_image, target_image, f.map};
}

MappedMorphismIA functor_A_mor(const AksMorphism& f, const std::optional<DensityCertificate>& cert,
                               AlgebraPtr source_image, AlgebraPtr target_image) {
  auto src = check_applicative_aks(f);
  if (!src.ok()) throw InvalidSource(fmt::format("'{}' is not applicative:\n{}", f.name, src.report.to_text()));
  MappedMorphismIA out;
  out.morphism = direct_image(f, std::move(source_image), std::move(target_image));
  if (!cert) {
    auto app = check_applicative_ia(out.morphism);
    out.report = std::move(app.report);
    return out;
  }
  CertificateHint hint;
  hint.h = cert->h;
  hint.t = static_cast<ElementId>(f.target->row(cert->t));
  auto dense = check_comp_dense_ia(out.morphism, hint);
  out.report = std::move(dense.report);
  out.certificate = std::move(dense.certificate);
  return out;
}

MappedMorphismAKS functor_K_mor(const IaMorphism& f, const std::optional<DensityCertificate>& cert,
                                AksPtr source_image, AksPtr target_image) {
  auto src = check_applicative_ia(f);
  if (!src.ok()) throw InvalidSource(fmt::format("'{}' is not applicative:\n{}", f.name, src.report.to_text()));
  MappedMorphismAKS out;
  out.morphism = same_function(f, std::move(source_image), std::move(target_image));
  const AksPtr& target = out.morphism.target;
  if (!cert) {
    auto app = check_applicative_aks(out.morphism);
    out.report = std::move(app.report);
    return out;
  }
  const auto SB = aks_separator_table(*target);
  CertificateHint hint;
  hint.h = std::vector<ElementId>(SB.size(), kNoElement);
  for (ElementId R = 0; R < SB.size(); ++R) {
    if (!SB[R]) continue;
    PiSet img = 0;
    for (PiSet rest = R; rest; rest &= rest - 1) img |= pi_bit(cert->h.at(__builtin_ctzll(rest)));
    (*hint.h)[R] = static_cast<ElementId>(img);
  }
  hint.t = cert->t;
  auto dense = check_comp_dense_aks(out.morphism, hint);
  out.report = std::move(dense.report);
  out.certificate = std::move(dense.certificate);
  return out;
}

IaMorphism counit_at(const AlgebraPtr& A, AlgebraPtr aka) {
  if (!aka) aka = powerset_algebra(order_aks(A));
  IaMorphism e{"eps_" + A->name, aka, A, std::vector<ElementId>(aka->size())};
  for (ElementId C = 0; C < aka->size(); ++C) e.map[C] = meet_of_mask(A->lattice(), C);
  return e;
}

AksMorphism unit_at(const AksPtr& K, AksPtr kak) {
  if (!kak) kak = order_aks(powerset_algebra(K));
  AksMorphism e{"eta_" + K->name(), K, kak, std::vector<ElementId>(K->size())};
  for (ElementId p = 0; p < K->size(); ++p) e.map[p] = static_cast<ElementId>(pi_bit(p));
  return e;
}

CertificateHint counit_hint(const IaMorphism& counit) {
  const auto& A = *counit.target;
  CertificateHint hint;
  hint.h = std::vector<ElementId>(A.size(), kNoElement);
  for (ElementId a = 0; a < A.size(); ++a)
    if (A.in_separator(a)) (*hint.h)[a] = static_cast<ElementId>(up_set_mask(A.lattice(), a));
  hint.t = combinator_i(*A.structure);
  return hint;
}

CertificateHint unit_hint(const AksMorphism& unit) {
  const Aks& K = *unit.source;
  const auto SB = aks_separator_table(*unit.target);
  CertificateHint hint;
  hint.h = std::vector<ElementId>(SB.size(), kNoElement);
  for (ElementId H = 0; H < SB.size(); ++H) {
    if (!SB[H]) continue;
    PiSet u = 0;
    for (PiSet rest = H; rest; rest &= rest - 1) u |= static_cast<PiSet>(__builtin_ctzll(rest));
    (*hint.h)[H] = static_cast<ElementId>(u);
  }
  const ElementId skk = K.app(K.app(K.S(), K.K()), K.K());
  const auto I = static_cast<ElementId>(K.row(skk));
  hint.t = I;
  hint.r = I;
  return hint;
}

ValidationReport composite_AK_check(const AlgebraPtr& A) {
  ValidationReport r("composite A(K(" + A->name + "))");
  auto KA = functor_K_obj(A).aks;
  auto AKA = functor_A_obj(KA).algebra;
  const auto& L = A->lattice();
  const auto n = static_cast<ElementId>(A->size());
  const ElementId count = ElementId{1} << n;

  std::string w;
  for (ElementId C = 0; C < count && w.empty(); ++C) {
    const ElementId infC = meet_of_mask(L, C);
    for (ElementId D = 0; D < count; ++D) {
      std::uint64_t expect = 0;
      for (ElementId c = 0; c < n; ++c)
        if (L.leq(c, infC))
          for (ElementId d = 0; d < n; ++d)
            if (D >> d & 1) expect |= std::uint64_t{1} << A->imp(c, d);
      if (AKA->imp(C, D) != expect) {
        w = fmt::format("(C={}, D={})", AKA->element_name(C), AKA->element_name(D));
        break;
      }
    }
  }
  r.check("composite-AK.implication", w.empty(), w, "C ~> D = {c->d : c <= inf C, d in D}");
  r.check("composite-AK.k", AKA->k == up_set_mask(L, A->k), AKA->element_name(AKA->k), "k is the up-set of k");
  r.check("composite-AK.s", AKA->s == up_set_mask(L, A->s), AKA->element_name(AKA->s), "s is the up-set of s");
  w.clear();
  for (ElementId C = 0; C < count; ++C)
    if (AKA->in_separator(C) != A->in_separator(meet_of_mask(L, C))) {
      w = AKA->element_name(C);
      break;
    }
  r.check("composite-AK.separator", w.empty(), w, "C in separator iff inf C in S");
  return r;
}

ValidationReport composite_KA_check(const AksPtr& K) {
  ValidationReport r("composite K(A(" + K->name() + "))");
  auto AK = functor_A_obj(K).algebra;
  auto KAK = functor_K_obj(AK).aks;
  const auto count = static_cast<ElementId>(AK->size());
  std::string wp, wpush, wapp;
  for (ElementId P = 0; P < count; ++P)
    for (ElementId Q = 0; Q < count; ++Q) {
      auto wit = [&] { return fmt::format("(P={}, Q={})", K->format(P), K->format(Q)); };
      const bool superset = (Q & ~P) == 0;
      if (wp.empty() && KAK->perp(P, Q) != superset) wp = wit();
      if (wpush.empty() && KAK->push(P, Q) != imp_sets(*K, P, Q)) wpush = wit();
      if (wapp.empty() && KAK->app(P, Q) != app_sets(*K, P, Q)) wapp = wit();
    }
  r.check("composite-KA.perp", wp.empty(), wp, "P perp Q iff P contains Q");
  r.check("composite-KA.push", wpush.empty(), wpush, "push is the set implication");
  r.check("composite-KA.app", wapp.empty(), wapp, "app is the set application");
  std::string wq;
  for (ElementId P = 0; P < count; ++P)
    if (static_cast<bool>(KAK->qp() >> P & 1) != static_cast<bool>(K->qp() & perp_left(*K, P))) {
      wq = K->format(P);
      break;
    }
  r.check("composite-KA.qp", wq.empty(), wq, "QP is the separator of A(K)");
  r.check("composite-KA.K", KAK->K() == K->row(K->K()), K->format(KAK->K()), "K is {K}^perp");
  r.check("composite-KA.S", KAK->S() == K->row(K->S()), K->format(KAK->S()), "S is {S}^perp");
  return r;
}

ValidationReport check_adjunction_instance(const AlgebraPtr& A, const AksPtr& K,
                                           const std::vector<IaMorphism>& ia_tests,
                                           const std::vector<AksMorphism>& aks_tests) {
  ValidationReport r(fmt::format("adjunction at {} / {}", A->name, K ? K->name() : "(no AKS)"));

  // Counit at A with h = up-set, t = i.
  const AksPtr KA = order_aks(A);
  const AlgebraPtr AKA = powerset_algebra(KA);
  const IaMorphism eps = counit_at(A, AKA);
  {
    auto dense = check_comp_dense_ia(eps, counit_hint(eps));
    const ElementId i = combinator_i(*A->structure);
    auto app = check_applicative_ia(eps);
    r.check("counit.uniform-realizer-is-i", app.uniform_realizer == i,
            app.uniform_realizer ? A->element_name(*app.uniform_realizer) : "(none)");
    r.check("counit.dense", dense.certificate.has_value(), "(up-set witness rejected)", "h(a) = up-set of a, t = i");
    r.add_child(std::move(dense.report));
  }

  // Unit at K with h = union, t = r = {SKK}^perp.
  if (K) {
    const AlgebraPtr AK = powerset_algebra(K);
    const AksPtr KAK = order_aks(AK);
    const AksMorphism eta = unit_at(K, KAK);
    {
      auto dense = check_comp_dense_aks(eta, unit_hint(eta));
      r.check("unit.dense", dense.certificate.has_value(), "(union witness rejected)", "h = union, t = r = {SKK}^perp");
      r.add_child(std::move(dense.report));
    }

    // Triangle at K: eps_{A(K)} after A(eta_K) is the identity of A(K).
    {
      const AlgebraPtr AKAK = powerset_algebra(KAK);
      const IaMorphism Aeta = direct_image(eta, AK, AKAK);
      const IaMorphism epsAK = counit_at(AK, AKAK);
      auto [comp, cert] = compose(Aeta, epsAK);
      std::string w;
      for (ElementId P = 0; P < AK->size(); ++P)
        if (comp(P) != P) {
          w = AK->element_name(P);
          break;
        }
      r.check("triangle.counit-after-A-unit", w.empty(), w, "eps_A(K) . A(eta_K) = id");
    }
  }
  // Triangle at A: K(eps_A) after eta_{K(A)} is the identity of K(A).
  {
    const AksPtr KAKA = order_aks(AKA);
    const AksMorphism etaKA = unit_at(KA, KAKA);
    const AksMorphism Keps = same_function(eps, KAKA, KA);
    auto [comp, cert] = compose(etaKA, Keps);
    std::string w;
    for (ElementId a = 0; a < KA->size(); ++a)
      if (comp(a) != a) {
        w = KA->element_name(a);
        break;
      }
    r.check("triangle.K-counit-after-unit", w.empty(), w, "K(eps_A) . eta_K(A) = id");
  }

  for (const auto& f : ia_tests) {
    const IaMorphism eA = counit_at(f.source);
    const IaMorphism eB = counit_at(f.target);
    const IaMorphism AKf = direct_image(same_function(f), eA.source, eB.source);
    std::string w;
    for (ElementId C = 0; C < eA.source->size(); ++C)
      if (f(eA(C)) != eB(AKf(C))) {
        w = eA.source->element_name(C);
        break;
      }
    r.check("naturality.counit", w.empty(), w, f.name);
  }
  for (const auto& g : aks_tests) {
    const AksMorphism e1 = unit_at(g.source);
    const AksMorphism e2 = unit_at(g.target);
    const AksMorphism KAg = same_function(direct_image(g), e1.target, e2.target);
    std::string w;
    for (ElementId p = 0; p < g.source->size(); ++p)
      if (e2(g(p)) != KAg(e1(p))) {
        w = g.source->element_name(p);
        break;
      }
    r.check("naturality.unit", w.empty(), w, g.name);
  }
  return r;
}

}  // namespace krl
