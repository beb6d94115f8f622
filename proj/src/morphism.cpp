#include "krl/morphism.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

#include "krl/errors.hpp"

namespace krl {

namespace {

void check_ia_shape(const IaMorphism& f) {
  if (!f.source || !f.target) throw std::invalid_argument("morphism without source or target");
  if (f.map.size() != f.source->size()) throw std::invalid_argument("morphism map has wrong size");
  for (ElementId x : f.map)
    if (x >= f.target->size()) throw std::out_of_range("morphism map entry out of range");
}

void check_aks_shape(const AksMorphism& f) {
  if (!f.source || !f.target) throw std::invalid_argument("morphism without source or target");
  if (f.map.size() != f.source->size()) throw std::invalid_argument("morphism map has wrong size");
  for (ElementId x : f.map)
    if (x >= f.target->size()) throw std::out_of_range("morphism map entry out of range");
  for (const auto* K : {f.source.get(), f.target.get()})
    if (K->size() > kMaxAksMorphismCarrier)
      throw SizeLimitExceeded(fmt::format("AKS morphism checks need carriers of at most {} elements, '{}' has {}",
                                          kMaxAksMorphismCarrier, K->name(), K->size()));
}

// Elements of the separator, smaller first.
std::vector<ElementId> separator_in_order(const ImplicativeAlgebra& A) {
  std::vector<ElementId> out;
  for (ElementId x : A.lattice().linear_extension())
    if (A.in_separator(x)) out.push_back(x);
  return out;
}

// r f(s) f(a) <= f(sa) for every s in S_A and a in A.
std::optional<std::pair<ElementId, ElementId>> application_realizer_violation(const IaMorphism& f, ElementId r) {
  const auto& A = *f.source;
  const auto& B = *f.target;
  for (ElementId s = 0; s < A.size(); ++s) {
    if (!A.in_separator(s)) continue;
    const ElementId rs = B.app(r, f(s));
    for (ElementId a = 0; a < A.size(); ++a)
      if (!B.lattice().leq(B.app(rs, f(a)), f(A.app(s, a)))) return std::make_pair(s, a);
  }
  return std::nullopt;
}

// r <= f(a->a') -> (f(a) -> f(a')) whenever a->a' in S_A.
std::optional<std::pair<ElementId, ElementId>> uniform_realizer_violation(const IaMorphism& f, ElementId r) {
  const auto& A = *f.source;
  const auto& B = *f.target;
  for (ElementId a = 0; a < A.size(); ++a)
    for (ElementId a2 = 0; a2 < A.size(); ++a2) {
      const ElementId aa = A.imp(a, a2);
      if (!A.in_separator(aa)) continue;
      if (!B.lattice().leq(r, B.imp(f(aa), B.imp(f(a), f(a2))))) return std::make_pair(a, a2);
    }
  return std::nullopt;
}

void check_separator_and_meets(const IaMorphism& f, ValidationReport& r) {
  const auto& A = *f.source;
  const auto& B = *f.target;
  const auto& LA = A.lattice();
  const auto& LB = B.lattice();
  std::string w;
  for (ElementId a = 0; a < A.size(); ++a)
    if (A.in_separator(a) && !B.in_separator(f(a))) {
      w = fmt::format("({})", A.element_name(a));
      break;
    }
  r.check("morphism.separator-preservation", w.empty(), w, "f(S_A) in S_B");

  w.clear();
  if (f(LA.top()) != LB.top()) w = "{}";
  for (ElementId a = 0; a < A.size() && w.empty(); ++a)
    for (ElementId b = a + 1; b < A.size(); ++b)
      if (f(LA.meet(a, b)) != LB.meet(f(a), f(b))) {
        w = fmt::format("{{{}, {}}}", A.element_name(a), A.element_name(b));
        break;
      }
  r.check("morphism.meet-preservation", w.empty(), w, "f(inf P) = inf f(P)");
}

}  // namespace

PiSet AksMorphism::image(PiSet P) const {
  PiSet out = 0;
  for (PiSet rest = P; rest; rest &= rest - 1) out |= pi_bit(map[static_cast<ElementId>(__builtin_ctzll(rest))]);
  return out;
}

IaMorphism identity_morphism(const AlgebraPtr& A) {
  IaMorphism f{"id_" + A->name, A, A, std::vector<ElementId>(A->size())};
  for (ElementId a = 0; a < A->size(); ++a) f.map[a] = a;
  return f;
}

AksMorphism identity_morphism(const AksPtr& K) {
  AksMorphism f{"id_" + K->name(), K, K, std::vector<ElementId>(K->size())};
  for (ElementId p = 0; p < K->size(); ++p) f.map[p] = p;
  return f;
}

std::uint64_t SearchOptions::default_search_budget() {
  if (const char* env = std::getenv("KRL_SEARCH_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 1'000'000;
}

void SearchBudget::tick() {
  if (remaining_ == 0) throw SearchBudgetExceeded(fmt::format("search budget of {} nodes exhausted", used_));
  --remaining_;
  ++used_;
}

std::optional<std::vector<ElementId>> monotone_selection(const SelectionProblem& p, SearchBudget& budget) {
  const std::size_t m = p.domain_size;
  std::vector<std::vector<std::size_t>> below(m), above(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (i == j || !p.domain_leq(j, i)) continue;
      if (j < i)
        below[i].push_back(j);
      else
        throw std::invalid_argument("selection domain is not in linear-extension order");
    }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j : below[i]) above[j].push_back(i);

  std::vector<ElementId> value(m, kNoElement);
  auto admissible = [&](std::size_t i, ElementId v) {
    for (std::size_t j : below[i])
      if (!p.value_leq(value[j], v)) return false;
    for (std::size_t k : above[i]) {
      const auto& ck = p.candidates[k];
      if (std::none_of(ck.begin(), ck.end(), [&](ElementId w) { return p.value_leq(v, w); })) return false;
    }
    return true;
  };
  std::function<bool(std::size_t)> go = [&](std::size_t i) {
    if (i == m) return true;
    for (ElementId v : p.candidates[i]) {
      budget.tick();
      if (!admissible(i, v)) continue;
      value[i] = v;
      if (go(i + 1)) return true;
    }
    return false;
  };
  if (!go(0)) return std::nullopt;
  return value;
}

// ---------------------------------------------------------------- IA side

ApplicativeResult check_applicative_ia(const IaMorphism& f) {
  check_ia_shape(f);
  const auto& A = *f.source;
  const auto& B = *f.target;
  const auto& LB = B.lattice();
  ApplicativeResult res;
  res.report.set_subject(fmt::format("applicative {} : {} -> {}", f.name, A.name, B.name));
  check_separator_and_meets(f, res.report);

  ElementId m2 = LB.top();
  for (ElementId a = 0; a < A.size(); ++a)
    for (ElementId a2 = 0; a2 < A.size(); ++a2) {
      const ElementId aa = A.imp(a, a2);
      if (A.in_separator(aa)) m2 = LB.meet(m2, B.imp(f(aa), B.imp(f(a), f(a2))));
    }
  const ElementId iB = combinator_i(*B.structure);
  if (B.in_separator(iB) && LB.leq(iB, m2))
    res.uniform_realizer = iB;
  else if (B.in_separator(m2))
    res.uniform_realizer = m2;
  res.report.check("morphism.uniform-realizer", res.uniform_realizer.has_value(),
                   fmt::format("(inf = {} not in S_B)", B.element_name(m2)),
                   res.uniform_realizer ? "r = " + B.element_name(*res.uniform_realizer) : "");

  ElementId mp = LB.top();
  for (ElementId s = 0; s < A.size(); ++s) {
    if (!A.in_separator(s)) continue;
    for (ElementId a = 0; a < A.size(); ++a) mp = LB.meet(mp, B.imp(f(s), B.imp(f(a), f(A.app(s, a)))));
  }
  std::vector<ElementId> order{iB, mp};
  for (ElementId x : separator_in_order(B)) order.push_back(x);
  for (ElementId cand : order)
    if (B.in_separator(cand) && !application_realizer_violation(f, cand)) {
      res.realizer = cand;
      break;
    }
  res.report.check("morphism.application-realizer", res.realizer.has_value(), "(no r in S_B)",
                   res.realizer ? "r = " + B.element_name(*res.realizer) : "");
  return res;
}

ValidationReport check_condition2_equiv(const IaMorphism& f) {
  check_ia_shape(f);
  const auto& A = *f.source;
  const auto& B = *f.target;
  ValidationReport r(fmt::format("realizer conditions {} : {} -> {}", f.name, A.name, B.name));
  ValidationReport pre;
  check_separator_and_meets(f, pre);
  const bool preconditions = pre.ok();
  r.flag("preconditions", preconditions, "separator and meet preservation");

  std::optional<ElementId> w2, w2p;
  for (ElementId b = 0; b < B.size(); ++b) {
    if (!B.in_separator(b)) continue;
    if (!w2 && !uniform_realizer_violation(f, b)) w2 = b;
    if (!w2p && !application_realizer_violation(f, b)) w2p = b;
  }
  r.flag("uniform-realizer-exists", w2.has_value(), w2 ? "r = " + B.element_name(*w2) : "");
  r.flag("application-realizer-exists", w2p.has_value(), w2p ? "r = " + B.element_name(*w2p) : "");
  if (preconditions)
    r.check("morphism.realizer-conditions-agree", w2.has_value() == w2p.has_value(),
            fmt::format("(uniform={}, application={})", w2.has_value(), w2p.has_value()));
  return r;
}

ValidationReport verify_ia_certificate(const IaMorphism& f, const DensityCertificate& c) {
  check_ia_shape(f);
  const auto& A = *f.source;
  const auto& B = *f.target;
  const auto& LA = A.lattice();
  const auto& LB = B.lattice();
  ValidationReport r(fmt::format("certificate {} : {} -> {}", f.name, A.name, B.name));
  check_separator_and_meets(f, r);

  const bool r_ok = c.r < B.size() && B.in_separator(c.r);
  r.check("certificate.r-in-separator", r_ok, c.r < B.size() ? B.element_name(c.r) : "(none)");
  if (r_ok) {
    auto v = application_realizer_violation(f, c.r);
    r.check("certificate.r-realizes", !v, v ? fmt::format("(s={}, a={})", A.element_name(v->first),
                                                          A.element_name(v->second))
                                            : "",
            "r f(s) f(a) <= f(sa)");
  } else {
    r.fail("certificate.r-realizes", "(r invalid)");
  }

  std::string w;
  bool h_ok = c.h.size() == B.size();
  if (!h_ok) w = "(wrong size)";
  for (ElementId b = 0; b < B.size() && h_ok; ++b)
    if (B.in_separator(b) && (c.h[b] >= A.size() || !A.in_separator(c.h[b]))) {
      h_ok = false;
      w = fmt::format("(b={})", B.element_name(b));
    }
  r.check("certificate.h-into-separator", h_ok, w, "h : S_B -> S_A");
  w.clear();
  for (ElementId b = 0; b < B.size() && h_ok && w.empty(); ++b)
    for (ElementId b2 = 0; b2 < B.size(); ++b2)
      if (B.in_separator(b) && B.in_separator(b2) && LB.leq(b, b2) && !LA.leq(c.h[b], c.h[b2])) {
        w = fmt::format("(b={}, b'={})", B.element_name(b), B.element_name(b2));
        break;
      }
  r.check("certificate.h-monotone", h_ok && w.empty(), h_ok ? w : "(h invalid)");

  const bool t_ok = c.t < B.size() && B.in_separator(c.t);
  r.check("certificate.t-in-separator", t_ok, c.t < B.size() ? B.element_name(c.t) : "(none)");
  w.clear();
  for (ElementId b = 0; b < B.size() && t_ok && h_ok; ++b)
    if (B.in_separator(b) && !LB.leq(B.app(c.t, f(c.h[b])), b)) {
      w = fmt::format("(b={})", B.element_name(b));
      break;
    }
  r.check("certificate.t-realizes", t_ok && h_ok && w.empty(), t_ok && h_ok ? w : "(t or h invalid)",
          "t f(h(b)) <= b");
  return r;
}

DensityResult check_comp_dense_ia(const IaMorphism& f, const CertificateHint& hint, const SearchOptions& options) {
  DensityResult res;
  res.report.set_subject(fmt::format("density {} : {} -> {}", f.name, f.source->name, f.target->name));
  auto app = check_applicative_ia(f);
  const bool applicative = app.ok();
  res.report.add_child(std::move(app.report));
  if (!applicative) {
    res.report.fail("density.applicative", "(see applicative report)");
    return res;
  }
  const auto& A = *f.source;
  const auto& B = *f.target;
  const auto& LA = A.lattice();
  const auto& LB = B.lattice();

  DensityCertificate cert;
  cert.r = *app.realizer;
  if (hint.r) {
    const bool ok = *hint.r < B.size() && B.in_separator(*hint.r) && !application_realizer_violation(f, *hint.r);
    res.report.check("density.hint-r", ok, *hint.r < B.size() ? B.element_name(*hint.r) : "(out of range)");
    if (!ok) return res;
    cert.r = *hint.r;
  }

  const std::vector<ElementId> SB = separator_in_order(B);
  const std::vector<ElementId> SA = separator_in_order(A);

  auto t_works = [&](ElementId t, const std::vector<ElementId>& h) {
    for (ElementId b : SB)
      if (!LB.leq(B.app(t, f(h[b])), b)) return false;
    return true;
  };
  std::vector<ElementId> t_order;
  if (hint.t) {
    t_order.push_back(*hint.t);
  } else {
    const ElementId iB = combinator_i(*B.structure);
    if (B.in_separator(iB)) t_order.push_back(iB);
    for (ElementId x = 0; x < B.size(); ++x)
      if (B.in_separator(x) && x != iB) t_order.push_back(x);
  }

  if (hint.h) {
    cert.h = *hint.h;
    cert.t = kNoElement;
    bool h_ok = cert.h.size() == B.size();
    for (ElementId b : SB)
      if (h_ok && (cert.h[b] >= A.size() || !A.in_separator(cert.h[b]))) h_ok = false;
    for (ElementId b : SB)
      for (ElementId b2 : SB)
        if (h_ok && LB.leq(b, b2) && !LA.leq(cert.h[b], cert.h[b2])) h_ok = false;
    res.report.check("density.hint-h", h_ok, "(not a monotone map S_B -> S_A)");
    if (!h_ok) return res;
    for (ElementId t : t_order)
      if (t < B.size() && B.in_separator(t) && t_works(t, cert.h)) {
        cert.t = t;
        break;
      }
    res.report.check("density.uniform-realizer", cert.t != kNoElement, "(no t in S_B for the given h)");
    if (cert.t == kNoElement) return res;
  } else {
    SearchBudget budget(options.budget);
    bool found = false;
    for (ElementId t : t_order) {
      if (t >= B.size() || !B.in_separator(t)) continue;
      SelectionProblem p;
      p.domain_size = SB.size();
      p.domain_leq = [&](std::size_t i, std::size_t j) { return LB.leq(SB[i], SB[j]); };
      p.value_leq = [&](ElementId x, ElementId y) { return LA.leq(x, y); };
      bool empty = false;
      for (ElementId b : SB) {
        std::vector<ElementId> cb;
        for (ElementId s : SA)
          if (LB.leq(B.app(t, f(s)), b)) cb.push_back(s);
        empty = empty || cb.empty();
        p.candidates.push_back(std::move(cb));
      }
      if (empty) continue;
      auto sel = monotone_selection(p, budget);
      if (!sel) continue;
      cert.t = t;
      cert.h.assign(B.size(), kNoElement);
      for (std::size_t i = 0; i < SB.size(); ++i) cert.h[SB[i]] = (*sel)[i];
      found = true;
      break;
    }
    res.report.check("density.search", found, "(no monotone h and t exist)",
                     fmt::format("{} nodes", budget.used()));
    if (!found) return res;
  }

  auto verified = verify_ia_certificate(f, cert);
  const bool ok = verified.ok();
  res.report.add_child(std::move(verified));
  if (ok) res.certificate = std::move(cert);
  return res;
}

// ---------------------------------------------------------------- AKS side

std::vector<bool> aks_separator_table(const Aks& K) {
  const std::size_t count = std::size_t{1} << K.size();
  std::vector<bool> out(count);
  for (std::size_t R = 0; R < count; ++R) out[R] = (K.qp() & perp_left(K, R)) != 0;
  return out;
}

namespace {

// Intersection over the clause-b family; sets `empty_family` when no pair qualifies.
PiSet clause_b_intersection(const AksMorphism& f, bool& empty_family) {
  const Aks& K = *f.source;
  const Aks& K2 = *f.target;
  const PiSet count = PiSet{1} << K.size();
  PiSet acc = K2.full();
  empty_family = true;
  for (PiSet P = 0; P < count; ++P)
    for (PiSet P2 = 0; P2 < count; ++P2) {
      const PiSet X = imp_sets(K, P2, P);
      if (!(K.qp() & perp_left(K, X))) continue;
      empty_family = false;
      const PiSet Y = imp_sets(K2, f.image(X), imp_sets(K2, f.image(P2), f.image(P)));
      acc &= perp_left(K2, Y);
    }
  return acc;
}

// Subset masks in linear-extension order of reverse inclusion (bigger first).
std::vector<ElementId> masks_in_order(const std::vector<bool>& table) {
  std::vector<ElementId> out;
  for (ElementId R = 0; R < table.size(); ++R)
    if (table[R]) out.push_back(R);
  std::stable_sort(out.begin(), out.end(),
                   [](ElementId a, ElementId b) { return __builtin_popcount(a) > __builtin_popcount(b); });
  return out;
}

bool subset(PiSet a, PiSet b) { return (a & ~b) == 0; }

}  // namespace

ApplicativeResult check_applicative_aks(const AksMorphism& f) {
  check_aks_shape(f);
  const Aks& K = *f.source;
  const Aks& K2 = *f.target;
  ApplicativeResult res;
  res.report.set_subject(fmt::format("applicative {} : {} -> {}", f.name, K.name(), K2.name()));

  std::string w;
  const PiSet count = PiSet{1} << K.size();
  for (PiSet P = 0; P < count; ++P)
    if ((K.qp() & perp_left(K, P)) && !(K2.qp() & perp_left(K2, f.image(P)))) {
      w = K.format(P);
      break;
    }
  res.report.check("aks-morphism.clause-a", w.empty(), w, "QP meets perp(P) implies QP' meets perp(f(P))");

  bool empty_family = false;
  const PiSet I = clause_b_intersection(f, empty_family) & K2.qp();
  if (I) res.realizer = static_cast<ElementId>(__builtin_ctzll(I));
  res.report.check("aks-morphism.clause-b", I != 0, "(QP' misses the intersection)",
                   res.realizer ? "r = " + K2.element_name(*res.realizer) : "");
  res.report.flag("aks-morphism.clause-b-empty-family", empty_family,
                  empty_family ? "empty intersection read as the whole carrier" : "");
  return res;
}

ValidationReport verify_aks_certificate(const AksMorphism& f, const DensityCertificate& c) {
  check_aks_shape(f);
  const Aks& K = *f.source;
  const Aks& K2 = *f.target;
  ValidationReport r(fmt::format("certificate {} : {} -> {}", f.name, K.name(), K2.name()));

  std::string w;
  const PiSet count = PiSet{1} << K.size();
  for (PiSet P = 0; P < count; ++P)
    if ((K.qp() & perp_left(K, P)) && !(K2.qp() & perp_left(K2, f.image(P)))) {
      w = K.format(P);
      break;
    }
  r.check("aks-morphism.clause-a", w.empty(), w);

  const bool r_ok = c.r < K2.size() && (K2.qp() >> c.r & 1);
  r.check("certificate.r-in-qp", r_ok, c.r < K2.size() ? K2.element_name(c.r) : "(none)");
  bool empty_family = false;
  const PiSet I = clause_b_intersection(f, empty_family);
  r.check("certificate.r-realizes", r_ok && (I >> c.r & 1), "(r not perp to every clause-b term)");

  const auto SA = aks_separator_table(K);
  const auto SB = aks_separator_table(K2);
  const auto SBm = masks_in_order(SB);
  bool h_ok = c.h.size() == SB.size();
  w = h_ok ? "" : "(wrong size)";
  for (ElementId R : SBm)
    if (h_ok && (c.h[R] >= SA.size() || !SA[c.h[R]])) {
      h_ok = false;
      w = K2.format(R);
    }
  r.check("certificate.h-into-separator", h_ok, w);
  w.clear();
  for (ElementId R1 : SBm)
    for (ElementId R2 : SBm)
      if (h_ok && w.empty() && subset(R2, R1) && !subset(c.h[R2], c.h[R1]))
        w = fmt::format("({}, {})", K2.format(R1), K2.format(R2));
  r.check("certificate.h-monotone", h_ok && w.empty(), h_ok ? w : "(h invalid)");

  const bool t_ok = c.t < K2.size() && (K2.qp() >> c.t & 1);
  r.check("certificate.t-in-qp", t_ok, c.t < K2.size() ? K2.element_name(c.t) : "(none)");
  w.clear();
  for (ElementId R : SBm)
    if (t_ok && h_ok && !subset(imp_sets(K2, f.image(c.h[R]), R), K2.row(c.t))) {
      w = K2.format(R);
      break;
    }
  r.check("certificate.t-realizes", t_ok && h_ok && w.empty(), t_ok && h_ok ? w : "(t or h invalid)",
          "t perp f(h(R)) -> R");
  return r;
}

DensityResult check_comp_dense_aks(const AksMorphism& f, const CertificateHint& hint, const SearchOptions& options) {
  DensityResult res;
  res.report.set_subject(fmt::format("density {} : {} -> {}", f.name, f.source->name(), f.target->name()));
  auto app = check_applicative_aks(f);
  const bool applicative = app.ok();
  res.report.add_child(std::move(app.report));
  if (!applicative) {
    res.report.fail("density.applicative", "(see applicative report)");
    return res;
  }
  const Aks& K = *f.source;
  const Aks& K2 = *f.target;
  DensityCertificate cert;
  cert.r = *app.realizer;
  if (hint.r) {
    bool empty_family = false;
    const bool ok = *hint.r < K2.size() && (K2.qp() >> *hint.r & 1) &&
                    (clause_b_intersection(f, empty_family) >> *hint.r & 1);
    res.report.check("density.hint-r", ok, *hint.r < K2.size() ? K2.element_name(*hint.r) : "(out of range)");
    if (!ok) return res;
    cert.r = *hint.r;
  }

  const auto SAt = aks_separator_table(K);
  const auto SBt = aks_separator_table(K2);
  const auto SA = masks_in_order(SAt);
  const auto SB = masks_in_order(SBt);
  auto realizes = [&](ElementId t, PiSet S, PiSet R) { return subset(imp_sets(K2, f.image(S), R), K2.row(t)); };

  std::vector<ElementId> t_order;
  if (hint.t)
    t_order.push_back(*hint.t);
  else
    for (ElementId x = 0; x < K2.size(); ++x)
      if (K2.qp() >> x & 1) t_order.push_back(x);

  if (hint.h) {
    cert.h = *hint.h;
    bool h_ok = cert.h.size() == SBt.size();
    for (ElementId R : SB)
      if (h_ok && (cert.h[R] >= SAt.size() || !SAt[cert.h[R]])) h_ok = false;
    for (ElementId R1 : SB)
      for (ElementId R2 : SB)
        if (h_ok && subset(R2, R1) && !subset(cert.h[R2], cert.h[R1])) h_ok = false;
    res.report.check("density.hint-h", h_ok, "(not a monotone map between the separators)");
    if (!h_ok) return res;
    for (ElementId t : t_order) {
      if (t >= K2.size() || !(K2.qp() >> t & 1)) continue;
      if (std::all_of(SB.begin(), SB.end(), [&](ElementId R) { return realizes(t, cert.h[R], R); })) {
        cert.t = t;
        break;
      }
    }
    res.report.check("density.uniform-realizer", cert.t != kNoElement, "(no t in QP' for the given h)");
    if (cert.t == kNoElement) return res;
  } else {
    SearchBudget budget(options.budget);
    bool found = false;
    for (ElementId t : t_order) {
      if (t >= K2.size() || !(K2.qp() >> t & 1)) continue;
      SelectionProblem p;
      p.domain_size = SB.size();
      p.domain_leq = [&](std::size_t i, std::size_t j) { return subset(SB[j], SB[i]); };
      p.value_leq = [](ElementId x, ElementId y) { return subset(y, x); };
      bool empty = false;
      for (ElementId R : SB) {
        std::vector<ElementId> cr;
        for (ElementId S : SA)
          if (realizes(t, S, R)) cr.push_back(S);
        empty = empty || cr.empty();
        p.candidates.push_back(std::move(cr));
      }
      if (empty) continue;
      auto sel = monotone_selection(p, budget);
      if (!sel) continue;
      cert.t = t;
      cert.h.assign(SBt.size(), kNoElement);
      for (std::size_t i = 0; i < SB.size(); ++i) cert.h[SB[i]] = (*sel)[i];
      found = true;
      break;
    }
    res.report.check("density.search", found, "(no monotone h and t exist)",
                     fmt::format("{} nodes", budget.used()));
    if (!found) return res;
  }

  auto verified = verify_aks_certificate(f, cert);
  const bool ok = verified.ok();
  res.report.add_child(std::move(verified));
  if (ok) res.certificate = std::move(cert);
  return res;
}

// ---------------------------------------------------------------- composition

std::pair<IaMorphism, std::optional<DensityCertificate>> compose(const IaMorphism& f, const IaMorphism& g,
                                                                 const std::optional<DensityCertificate>& cf,
                                                                 const std::optional<DensityCertificate>& cg) {
  check_ia_shape(f);
  check_ia_shape(g);
  if (!same_carrier(*f.target, *g.source))
    throw ComposabilityError(fmt::format("cannot compose {} (into {}) with {} (from {})", f.name, f.target->name,
                                         g.name, g.source->name));
  IaMorphism gf{g.name + "." + f.name, f.source, g.target, std::vector<ElementId>(f.map.size())};
  for (ElementId a = 0; a < f.map.size(); ++a) gf.map[a] = g(f(a));
  if (!cf || !cg) return {std::move(gf), std::nullopt};
  CertificateHint hint;
  hint.h = std::vector<ElementId>(g.target->size(), kNoElement);
  for (ElementId c = 0; c < g.target->size(); ++c)
    if (g.target->in_separator(c)) (*hint.h)[c] = cf->h.at(cg->h.at(c));
  auto dense = check_comp_dense_ia(gf, hint);
  return {std::move(gf), std::move(dense.certificate)};
}

std::pair<AksMorphism, std::optional<DensityCertificate>> compose(const AksMorphism& f, const AksMorphism& g,
                                                                  const std::optional<DensityCertificate>& cf,
                                                                  const std::optional<DensityCertificate>& cg) {
  if (!f.target->same_carrier(*g.source))
    throw ComposabilityError(fmt::format("cannot compose {} (into {}) with {} (from {})", f.name, f.target->name(),
                                         g.name, g.source->name()));
  AksMorphism gf{g.name + "." + f.name, f.source, g.target, std::vector<ElementId>(f.map.size())};
  for (ElementId p = 0; p < f.map.size(); ++p) gf.map[p] = g(f(p));
  if (!cf || !cg) return {std::move(gf), std::nullopt};
  const auto SC = aks_separator_table(*g.target);
  CertificateHint hint;
  hint.h = std::vector<ElementId>(SC.size(), kNoElement);
  for (ElementId R = 0; R < SC.size(); ++R)
    if (SC[R]) (*hint.h)[R] = cf->h.at(cg->h.at(R));
  auto dense = check_comp_dense_aks(gf, hint);
  return {std::move(gf), std::move(dense.certificate)};
}

bool two_cell_leq(const IaMorphism& f, const IaMorphism& g) {
  if (f.map.size() != g.map.size()) throw ComposabilityError("2-cell between morphisms with different sources");
  for (ElementId a = 0; a < f.map.size(); ++a)
    if (!f.target->lattice().leq(f(a), g(a))) return false;
  return true;
}

bool two_cell_leq(const AksMorphism& f, const AksMorphism& g) {
  if (f.map.size() != g.map.size()) throw ComposabilityError("2-cell between morphisms with different sources");
  for (ElementId p = 0; p < f.map.size(); ++p)
    if (!spec_preorder(*f.target, f(p), g(p))) return false;
  return true;
}

}  // namespace krl
