#include "krl/interior.hpp"

#include <fmt/format.h>

#include <stdexcept>

#include "krl/errors.hpp"

namespace krl {

namespace {

// First pair (or the empty family) whose meet is not preserved.
std::optional<std::string> meet_violation(const InteriorOperator& i) {
  const auto& L = *i.lattice;
  if (i(L.top()) != L.top()) return std::string("{}");
  for (ElementId a = 0; a < L.size(); ++a)
    for (ElementId b = a + 1; b < L.size(); ++b)
      if (i(L.meet(a, b)) != L.meet(i(a), i(b))) return fmt::format("{{{}, {}}}", L.name(a), L.name(b));
  return std::nullopt;
}

}  // namespace

InteriorOperator make_interior(std::string name, LatticePtr lattice, const std::function<ElementId(ElementId)>& fn) {
  InteriorOperator i{std::move(name), std::move(lattice), {}};
  i.table.resize(i.lattice->size());
  for (ElementId a = 0; a < i.table.size(); ++a) i.table[a] = fn(a);
  return i;
}

InteriorOperator identity_interior(LatticePtr lattice) {
  return make_interior("id", std::move(lattice), [](ElementId a) { return a; });
}

ValidationReport validate_interior(const InteriorOperator& i) {
  const auto& L = *i.lattice;
  ValidationReport r("interior " + i.name);
  if (i.table.size() != L.size()) {
    r.fail("interior.table", fmt::format("(size {} for {} elements)", i.table.size(), L.size()));
    return r;
  }
  std::string w;
  for (ElementId a = 0; a < L.size(); ++a)
    if (i(a) >= L.size()) {
      w = fmt::format("({})", L.name(a));
      break;
    }
  r.check("interior.table", w.empty(), w);
  if (!w.empty()) return r;

  for (ElementId a = 0; a < L.size(); ++a)
    if (!L.leq(i(a), a)) {
      w = fmt::format("({})", L.name(a));
      break;
    }
  r.check("interior.deflationary", w.empty(), w, "i(a) <= a");
  w.clear();
  for (ElementId a = 0; a < L.size(); ++a)
    if (i(i(a)) != i(a)) {
      w = fmt::format("({})", L.name(a));
      break;
    }
  r.check("interior.idempotent", w.empty(), w, "i(i(a)) = i(a)");
  w.clear();
  for (ElementId a = 0; a < L.size() && w.empty(); ++a)
    for (ElementId b = 0; b < L.size(); ++b)
      if (L.leq(a, b) && !L.leq(i(a), i(b))) {
        w = fmt::format("({}, {})", L.name(a), L.name(b));
        break;
      }
  r.check("interior.monotone", w.empty(), w, "a <= b implies i(a) <= i(b)");

  bool binary = true;
  for (ElementId a = 0; a < L.size() && binary; ++a)
    for (ElementId b = a + 1; b < L.size(); ++b)
      if (i(L.meet(a, b)) != L.meet(i(a), i(b))) {
        binary = false;
        break;
      }
  const bool topological = binary && i(L.top()) == L.top();
  r.flag("topological", topological);
  auto mv = meet_violation(i);
  r.flag("alexandroff", !mv, mv ? "family " + *mv : "");
  return r;
}

InteriorClass classify(const InteriorOperator& i) {
  auto r = validate_interior(i);
  if (!r.ok()) return InteriorClass::invalid;
  if (r.flag_value("alexandroff")) return InteriorClass::alexandroff;
  if (r.flag_value("topological")) return InteriorClass::topological;
  return InteriorClass::plain;
}

bool operator_leq(const InteriorOperator& i, const InteriorOperator& j) {
  for (ElementId a = 0; a < i.table.size(); ++a)
    if (!i.lattice->leq(i(a), j(a))) return false;
  return true;
}

std::vector<ElementId> closure_from_interior(const InteriorOperator& i) {
  if (auto mv = meet_violation(i)) throw NotAlexandroff(fmt::format("'{}' does not preserve the meet of {}", i.name, *mv));
  const auto& L = *i.lattice;
  std::vector<ElementId> c(L.size());
  for (ElementId a = 0; a < L.size(); ++a) {
    ElementId m = L.top();
    for (ElementId b = 0; b < L.size(); ++b)
      if (i(b) == b && L.leq(a, b)) m = L.meet(m, b);
    c[a] = m;
  }
  for (ElementId a = 0; a < L.size(); ++a)
    if ((c[a] == a) != (i(a) == a))
      throw VerificationFailed(fmt::format("closure fixed points differ from opens at {}", L.name(a)));
  return c;
}

ClosedPart theta(const InteriorOperator& i) {
  ClosedPart B{i.lattice, i.lattice->empty_set(), ClosedPart::Flavor::sup_closed};
  for (ElementId a = 0; a < i.table.size(); ++a)
    if (i(a) == a) B.members.set(a);
  if (!meet_violation(i)) B.flavor = ClosedPart::Flavor::sup_and_meet_closed;
  return B;
}

InteriorOperator theta_inv(const ClosedPart& B) {
  const auto& L = *B.lattice;
  const auto ms = members(B.members);
  if (!B.members.test(L.bottom())) throw InvalidClosedPart("closed part misses the bottom element");
  for (ElementId a : ms)
    for (ElementId b : ms)
      if (!B.members.test(L.join(a, b)))
        throw InvalidClosedPart(fmt::format("join of {} and {} is not a member", L.name(a), L.name(b)));
  if (B.flavor == ClosedPart::Flavor::sup_and_meet_closed) {
    if (!B.members.test(L.top())) throw InvalidClosedPart("closed part misses the top element");
    for (ElementId a : ms)
      for (ElementId b : ms)
        if (!B.members.test(L.meet(a, b)))
          throw InvalidClosedPart(fmt::format("meet of {} and {} is not a member", L.name(a), L.name(b)));
  }
  return make_interior("theta_inv", B.lattice, [&](ElementId x) {
    ElementId j = L.bottom();
    for (ElementId b : ms)
      if (L.leq(b, x)) j = L.join(j, b);
    return j;
  });
}

InteriorOperator al_approx_general(const InteriorOperator& i) {
  const auto& L = *i.lattice;
  ElementSet X = theta(i).members;
  X.set(L.bottom());
  X.set(L.top());
  for (bool changed = true; changed;) {
    changed = false;
    const auto ms = members(X);
    for (ElementId a : ms)
      for (ElementId b : ms)
        for (ElementId c : {L.join(a, b), L.meet(a, b)})
          if (!X.test(c)) {
            X.set(c);
            changed = true;
          }
  }
  auto out = theta_inv({i.lattice, X, ClosedPart::Flavor::sup_and_meet_closed});
  out.name = i.name + "_al";
  return out;
}

InteriorOperator al_approx_powerset(const InteriorOperator& i) {
  if (!i.lattice->is_powerset()) throw std::invalid_argument("powerset approximation needs a powerset lattice");
  return make_interior(i.name + "_al", i.lattice, [&](ElementId P) {
    ElementId out = 0;
    for (ElementId rest = P; rest; rest &= rest - 1) out |= i(rest & -rest);
    return out;
  });
}

InteriorOperator al_approx(const InteriorOperator& i) {
  return i.lattice->is_powerset() ? al_approx_powerset(i) : al_approx_general(i);
}

// ---------------------------------------------------------------- change

ElementId ChangedAlgebra::to_changed(ElementId base_id) const {
  for (ElementId k = 0; k < open_ids.size(); ++k)
    if (open_ids[k] == base_id) return k;
  return kNoElement;
}

ChangedAlgebra change_implication(const AlgebraPtr& A, const InteriorOperator& iota) {
  const auto& L = A->lattice();
  if (!iota.lattice->same_carrier(L)) throw std::invalid_argument("interior operator lives on another lattice");
  const auto n = static_cast<ElementId>(A->size());
  auto nm = [&](ElementId x) { return L.name(x); };

  auto vi = validate_interior(iota);
  if (!vi.ok()) throw InvalidSource("'" + iota.name + "' is not an interior operator:\n" + vi.to_text());
  if (!vi.flag_value("alexandroff"))
    throw HypothesisFailed("change.alexandroff", vi.find_flag("alexandroff")->detail,
                           fmt::format("ι is not Alexandroff ({})", vi.find_flag("alexandroff")->detail));
  for (ElementId a = 0; a < n; ++a)
    if (A->in_separator(a) && !A->in_separator(iota(a)))
      throw HypothesisFailed("change.compatible", nm(a), fmt::format("ι(S) ⊆ S violated at {}", nm(a)));

  ChangedAlgebra C;
  C.base = A;
  C.iota = iota;
  C.iota_imp_invariant = true;
  for (ElementId a = 0; a < n && C.iota_imp_invariant; ++a)
    for (ElementId b = 0; b < n; ++b)
      if (A->imp(iota(a), b) != A->imp(a, b)) {
        C.iota_imp_invariant = false;
        break;
      }
  C.report.flag("change.iota-imp-invariant", C.iota_imp_invariant, "ι(a)->b = a->b for all a, b");

  const ElementId i = combinator_i(*A->structure);
  for (ElementId a = 0; a < n; ++a)
    if (!L.leq(A->app(i, a), iota(a)))
      throw HypothesisFailed("change.i-below-interior", nm(a), fmt::format("𝗂·{0} ≤ ι({0}) violated", nm(a)));
  C.report.pass("change.i-below-interior", "𝗂·a ≤ ι(a)");

  C.opens = L.empty_set();
  for (ElementId a = 0; a < n; ++a)
    if (iota(a) == a) {
      C.opens.set(a);
      C.open_ids.push_back(a);
    }
  C.closure = closure_from_interior(iota);

  const auto m = static_cast<ElementId>(C.open_ids.size());
  std::vector<std::string> names(m);
  std::vector<bool> leq(std::size_t{m} * m);
  for (ElementId x = 0; x < m; ++x) {
    names[x] = nm(C.open_ids[x]);
    for (ElementId y = 0; y < m; ++y) leq[x * m + y] = L.leq(C.open_ids[x], C.open_ids[y]);
  }
  auto Lopen = std::make_shared<const FiniteLattice>(FiniteLattice::from_relation(std::move(names), std::move(leq)));
  std::vector<ElementId> imp(std::size_t{m} * m);
  for (ElementId x = 0; x < m; ++x)
    for (ElementId y = 0; y < m; ++y) imp[x * m + y] = C.to_changed(iota(A->imp(C.open_ids[x], C.open_ids[y])));
  auto structure = std::make_shared<const ImplicativeStructure>(Lopen, std::move(imp));

  ElementSet sep(m);
  for (ElementId a = 0; a < n; ++a)
    if (A->in_separator(a)) sep.set(C.to_changed(iota(a)));

  C.nu = combinator_nu(*A);
  const ElementId nu_i = A->app(C.nu, i);
  C.k_iota = iota(A->app(nu_i, A->k));
  C.s_iota = iota(A->app(A->app(C.nu, A->app(nu_i, nu_i)), A->s));
  C.changed = make_algebra(A->name + "_" + iota.name, structure, std::move(sep), C.to_changed(C.k_iota),
                           C.to_changed(C.s_iota));

  std::string w;
  for (ElementId x = 0; x < m && w.empty(); ++x)
    for (ElementId y = 0; y < m; ++y)
      if (C.open_ids[Lopen->meet(x, y)] != L.meet(C.open_ids[x], C.open_ids[y])) {
        w = fmt::format("({}, {})", Lopen->name(x), Lopen->name(y));
        break;
      }
  C.report.check("change.meets-restricted", w.empty(), w, "meets of opens are ambient meets");
  w.clear();
  for (ElementId x = 0; x < m && w.empty(); ++x)
    for (ElementId y = 0; y < m; ++y)
      if (C.open_ids[C.changed->app(x, y)] != C.closure[A->app(C.open_ids[x], C.open_ids[y])]) {
        w = fmt::format("({}, {})", Lopen->name(x), Lopen->name(y));
        break;
      }
  C.report.check("change.application", w.empty(), w, "application of A_ι is c_ι after application");

  if (C.iota_imp_invariant) {
    w.clear();
    for (ElementId a = 0; a < n && w.empty(); ++a) {
      if (!L.leq(A->app(i, a), iota(a)) || !L.leq(iota(a), a)) w = fmt::format("(a={})", nm(a));
      for (ElementId b = 0; b < n && w.empty(); ++b)
        if (A->app(a, iota(b)) != A->app(a, b)) w = fmt::format("(a={}, b={})", nm(a), nm(b));
    }
    C.report.check("change.iota-imp-consequences", w.empty(), w, "𝗂a <= ι(a) <= a and a ι(b) = ab");
  }
  C.report.add_child(validate_algebra(*C.changed));
  C.report.set_subject(fmt::format("implication change {} by {}", A->name, iota.name));
  return C;
}

ChangeCertificates density_certificates(const ChangedAlgebra& C) {
  if (!C.iota_imp_invariant)
    throw HypothesisFailed("change.iota-imp-invariant", "", "ι(a)→b = a→b fails");
  const AlgebraPtr& A = C.base;
  const AlgebraPtr& B = C.changed;
  const InteriorOperator& iota = C.iota;
  const ElementId i = combinator_i(*A->structure);
  const ElementId nu_i = A->app(C.nu, i);

  ChangeCertificates out;
  out.report.set_subject("change certificates " + B->name);
  out.inclusion = IaMorphism{"incl", B, A, C.open_ids};
  out.inclusion_certificate.t = i;
  out.inclusion_certificate.r = i;
  out.inclusion_certificate.h.assign(A->size(), kNoElement);
  for (ElementId a = 0; a < A->size(); ++a)
    if (A->in_separator(a)) out.inclusion_certificate.h[a] = C.to_changed(iota(a));

  out.restriction = IaMorphism{"iota'", A, B, std::vector<ElementId>(A->size())};
  for (ElementId a = 0; a < A->size(); ++a) out.restriction.map[a] = C.to_changed(iota(a));
  out.restriction_certificate.t = C.to_changed(iota(i));
  out.restriction_certificate.r = C.to_changed(iota(A->app(nu_i, nu_i)));
  out.restriction_certificate.h.assign(B->size(), kNoElement);
  for (ElementId b = 0; b < B->size(); ++b)
    if (B->in_separator(b)) out.restriction_certificate.h[b] = C.open_ids[b];

  out.report.add_child(verify_ia_certificate(out.inclusion, out.inclusion_certificate));
  out.report.add_child(verify_ia_certificate(out.restriction, out.restriction_certificate));
  return out;
}

}  // namespace krl
