#include "krl/implicative.hpp"

#include <fmt/format.h>

#include <stdexcept>

#include "krl/errors.hpp"

namespace krl {

namespace {

void check_size(const LatticePtr& L) {
  if (!L || !L->is_lattice()) throw std::invalid_argument("implicative structure needs a complete lattice");
  if (L->size() > ImplicativeStructure::kMaxSize)
    throw SizeLimitExceeded(
        fmt::format("structure of {} elements exceeds {}", L->size(), ImplicativeStructure::kMaxSize));
}

}  // namespace

ImplicativeStructure::ImplicativeStructure(LatticePtr lattice, std::vector<ElementId> imp)
    : lattice_(std::move(lattice)), imp_(std::move(imp)) {
  check_size(lattice_);
  n_ = lattice_->size();
  if (imp_.size() != n_ * n_) throw std::invalid_argument("implication table has wrong size");
  for (ElementId x : imp_)
    if (x >= n_) throw std::out_of_range("implication table entry out of range");
  app_.resize(n_ * n_);
  for (ElementId a = 0; a < n_; ++a)
    for (ElementId b = 0; b < n_; ++b) app_[a * n_ + b] = application_by_definition(*this, a, b);
}

ImplicativeStructure::ImplicativeStructure(LatticePtr lattice, const Rule& imp, const Rule& app)
    : lattice_(std::move(lattice)), app_from_rule_(true) {
  check_size(lattice_);
  n_ = lattice_->size();
  imp_.resize(n_ * n_);
  app_.resize(n_ * n_);
  for (ElementId a = 0; a < n_; ++a)
    for (ElementId b = 0; b < n_; ++b) {
      imp_[a * n_ + b] = imp(a, b);
      app_[a * n_ + b] = app(a, b);
    }
}

ElementId application_by_definition(const ImplicativeStructure& A, ElementId a, ElementId b) {
  const auto& L = A.lattice();
  ElementId m = L.top();
  for (ElementId c = 0; c < A.size(); ++c)
    if (L.leq(a, A.imp(b, c))) m = L.meet(m, c);
  return m;
}

ValidationReport check_structure(const ImplicativeStructure& A) {
  ValidationReport r("implicative structure");
  const auto& L = A.lattice();
  const auto n = static_cast<ElementId>(A.size());
  auto nm = [&](ElementId x) { return L.name(x); };

  std::string w;
  for (ElementId a = 0; a < n && w.empty(); ++a)
    for (ElementId a2 = 0; a2 < n && w.empty(); ++a2) {
      if (!L.leq(a2, a)) continue;
      for (ElementId b = 0; b < n; ++b)
        if (!L.leq(A.imp(a, b), A.imp(a2, b))) {
          w = fmt::format("(a={}, a'={}, b={})", nm(a), nm(a2), nm(b));
          break;
        }
    }
  for (ElementId b = 0; b < n && w.empty(); ++b)
    for (ElementId b2 = 0; b2 < n && w.empty(); ++b2) {
      if (!L.leq(b, b2)) continue;
      for (ElementId a = 0; a < n; ++a)
        if (!L.leq(A.imp(a, b), A.imp(a, b2))) {
          w = fmt::format("(a={}, b={}, b'={})", nm(a), nm(b), nm(b2));
          break;
        }
    }
  r.check("imp.antitone-monotone", w.empty(), w);

  w.clear();
  for (ElementId a = 0; a < n && w.empty(); ++a)
    for (ElementId b = 0; b < n && w.empty(); ++b)
      for (ElementId c = b + 1; c < n; ++c)
        if (A.imp(a, L.meet(b, c)) != L.meet(A.imp(a, b), A.imp(a, c))) {
          w = fmt::format("(a={}, B={{{}, {}}})", nm(a), nm(b), nm(c));
          break;
        }
  const bool nonempty = w.empty();
  r.check("imp.meet-commutation", nonempty, w);

  w.clear();
  for (ElementId a = 0; a < n; ++a)
    if (A.imp(a, L.top()) != L.top()) {
      w = fmt::format("(a={}, B={{}})", nm(a));
      break;
    }
  const bool empty = w.empty();
  r.check("imp.meet-commutation-empty", empty, w);
  const bool quasi = nonempty && !empty;
  r.flag("quasi-implicative", quasi, quasi ? "meet-commutation holds for nonempty families only" : "");
  return r;
}

ValidationReport check_adjunction(const ImplicativeStructure& A) {
  ValidationReport r("adjunction");
  const auto& L = A.lattice();
  const auto n = static_cast<ElementId>(A.size());
  auto nm = [&](ElementId x) { return L.name(x); };
  std::string half, full;
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b)
      for (ElementId c = 0; c < n; ++c) {
        const bool left = L.leq(A.app(a, b), c);
        const bool right = L.leq(a, A.imp(b, c));
        auto wit = [&] { return fmt::format("(a={}, b={}, c={})", nm(a), nm(b), nm(c)); };
        if (right && !left && half.empty()) half = wit();
        if (left != right && full.empty()) full = wit();
      }
  r.check("adjunction.half", half.empty(), half, "a <= b->c implies ab <= c");
  r.check("adjunction.full", full.empty(), full, "ab <= c iff a <= b->c");

  std::string unit, counit;
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b) {
      if (unit.empty() && !L.leq(a, A.imp(b, A.app(a, b)))) unit = fmt::format("(a={}, b={})", nm(a), nm(b));
      if (counit.empty() && !L.leq(A.app(A.imp(a, b), a), b)) counit = fmt::format("(a={}, b={})", nm(a), nm(b));
    }
  r.check("adjunction.unit", unit.empty(), unit, "a <= b -> ab");
  r.check("adjunction.counit", counit.empty(), counit, "(a->b)a <= b");
  return r;
}

ElementId combinator_i(const ImplicativeStructure& A) {
  const auto& L = A.lattice();
  ElementId m = L.top();
  for (ElementId a = 0; a < A.size(); ++a) m = L.meet(m, A.imp(a, a));
  return m;
}

ElementId combinator_k(const ImplicativeStructure& A) {
  const auto& L = A.lattice();
  ElementId m = L.top();
  for (ElementId a = 0; a < A.size(); ++a)
    for (ElementId b = 0; b < A.size(); ++b) m = L.meet(m, A.imp(a, A.imp(b, a)));
  return m;
}

ElementId combinator_s(const ImplicativeStructure& A) {
  const auto& L = A.lattice();
  const auto n = static_cast<ElementId>(A.size());
  ElementId m = L.top();
  for (ElementId a = 0; a < n; ++a)
    for (ElementId b = 0; b < n; ++b) {
      const ElementId ab = A.imp(a, b);
      for (ElementId c = 0; c < n; ++c)
        m = L.meet(m, A.imp(A.imp(a, A.imp(b, c)), A.imp(ab, A.imp(a, c))));
    }
  return m;
}

ElementId combinator_cc(const ImplicativeStructure& A) {
  const auto& L = A.lattice();
  ElementId m = L.top();
  for (ElementId a = 0; a < A.size(); ++a)
    for (ElementId b = 0; b < A.size(); ++b) m = L.meet(m, A.imp(A.imp(A.imp(a, b), a), a));
  return m;
}

AlgebraPtr make_algebra(std::string name, StructurePtr structure, ElementSet separator, std::optional<ElementId> k,
                        std::optional<ElementId> s) {
  if (separator.size() != structure->size()) throw std::invalid_argument("separator has wrong size");
  auto A = std::make_shared<ImplicativeAlgebra>();
  A->name = std::move(name);
  A->k = k ? *k : combinator_k(*structure);
  A->s = s ? *s : combinator_s(*structure);
  A->structure = std::move(structure);
  A->separator = std::move(separator);
  return A;
}

ElementId combinator_nu(const ImplicativeAlgebra& A) {
  const ElementId nu = A.app(A.app(A.s, A.app(A.k, A.s)), A.k);
  const auto& L = A.lattice();
  if (!A.in_separator(nu))
    throw VerificationFailed(fmt::format("nu = {} is not in the separator", L.name(nu)));
  const auto n = static_cast<ElementId>(A.size());
  for (ElementId a = 0; a < n; ++a) {
    const ElementId na = A.app(nu, a);
    for (ElementId b = 0; b < n; ++b) {
      const ElementId nab = A.app(na, b);
      for (ElementId c = 0; c < n; ++c)
        if (!L.leq(A.app(nab, c), A.app(a, A.app(b, c))))
          throw VerificationFailed(
              fmt::format("nu a b c <= a(bc) fails at (a={}, b={}, c={})", L.name(a), L.name(b), L.name(c)));
    }
  }
  return nu;
}

ElementSet separator_closure(const ImplicativeStructure& A, const ElementSet& generators) {
  const auto& L = A.lattice();
  const auto n = static_cast<ElementId>(A.size());
  ElementSet X = generators;
  X.set(combinator_k(A));
  X.set(combinator_s(A));
  for (bool changed = true; changed;) {
    changed = false;
    ElementSet up = upward_closure(L, X);
    if (up != X) {
      X = up;
      changed = true;
    }
    for (ElementId b = 0; b < n; ++b) {
      if (X.test(b)) continue;
      for (ElementId a = 0; a < n; ++a)
        if (X.test(a) && X.test(A.imp(a, b))) {
          X.set(b);
          changed = true;
          break;
        }
    }
  }
  return X;
}

ValidationReport validate_algebra(const ImplicativeAlgebra& A) {
  ValidationReport r(A.name.empty() ? "implicative algebra" : "ia " + A.name);
  r.add_child(check_structure(*A.structure));
  const auto& L = A.lattice();
  const auto n = static_cast<ElementId>(A.size());
  auto nm = [&](ElementId x) { return L.name(x); };
  const ElementSet& S = A.separator;

  std::string w;
  for (ElementId a = 0; a < n && w.empty(); ++a)
    if (S.test(a))
      for (ElementId b = 0; b < n; ++b)
        if (L.leq(a, b) && !S.test(b)) {
          w = fmt::format("(a={}, b={})", nm(a), nm(b));
          break;
        }
  r.check("separator.upward-closed", w.empty(), w);

  w.clear();
  for (ElementId a = 0; a < n && w.empty(); ++a)
    if (S.test(a))
      for (ElementId b = 0; b < n; ++b)
        if (S.test(A.imp(a, b)) && !S.test(b)) {
          w = fmt::format("(a={}, b={})", nm(a), nm(b));
          break;
        }
  r.check("separator.modus-ponens", w.empty(), w);
  r.check("separator.contains-k", S.test(A.k), nm(A.k));
  r.check("separator.contains-s", S.test(A.s), nm(A.s));

  w.clear();
  for (ElementId a = 0; a < n && w.empty(); ++a)
    for (ElementId b = 0; b < n; ++b)
      if (!L.leq(A.k, A.imp(a, A.imp(b, a)))) {
        w = fmt::format("(a={}, b={})", nm(a), nm(b));
        break;
      }
  r.check("combinator.k-bound", w.empty(), w, "k <= a->b->a");

  w.clear();
  for (ElementId a = 0; a < n && w.empty(); ++a)
    for (ElementId b = 0; b < n && w.empty(); ++b) {
      const ElementId ab = A.imp(a, b);
      for (ElementId c = 0; c < n; ++c)
        if (!L.leq(A.s, A.imp(A.imp(a, A.imp(b, c)), A.imp(ab, A.imp(a, c))))) {
          w = fmt::format("(a={}, b={}, c={})", nm(a), nm(b), nm(c));
          break;
        }
    }
  r.check("combinator.s-bound", w.empty(), w, "s <= (a->b->c)->(a->b)->a->c");

  w.clear();
  for (ElementId a = 0; a < n && w.empty(); ++a)
    for (ElementId b = 0; b < n; ++b)
      if (!L.leq(A.app(A.app(A.k, a), b), a)) {
        w = fmt::format("(a={}, b={})", nm(a), nm(b));
        break;
      }
  r.check("foca.k-law", w.empty(), w, "kab <= a");

  w.clear();
  for (ElementId a = 0; a < n && w.empty(); ++a) {
    const ElementId sa = A.app(A.s, a);
    for (ElementId b = 0; b < n && w.empty(); ++b) {
      const ElementId sab = A.app(sa, b);
      for (ElementId c = 0; c < n; ++c)
        if (!L.leq(A.app(sab, c), A.app(A.app(a, c), A.app(b, c)))) {
          w = fmt::format("(a={}, b={}, c={})", nm(a), nm(b), nm(c));
          break;
        }
    }
  }
  r.check("foca.s-law", w.empty(), w, "sabc <= (ac)(bc)");

  const ElementId cc = combinator_cc(*A.structure);
  r.flag("classical", S.test(cc), "cc = " + nm(cc));
  r.flag("consistent", !S.test(L.bottom()));
  return r;
}

std::optional<EntailmentWitness> entails(const ImplicativeAlgebra& A, ElementId a, ElementId b) {
  const ElementId ab = A.imp(a, b);
  if (!A.in_separator(ab)) return std::nullopt;
  return EntailmentWitness{ab, a, b};
}

std::optional<ElementId> uniform_entails(const ImplicativeAlgebra& A,
                                         const std::vector<std::pair<ElementId, ElementId>>& pairs) {
  const auto& L = A.lattice();
  ElementId m = L.top();
  for (auto [x, y] : pairs) m = L.meet(m, A.imp(x, y));
  if (!A.in_separator(m)) return std::nullopt;
  return m;
}

bool same_carrier(const ImplicativeAlgebra& a, const ImplicativeAlgebra& b) {
  return &a == &b || a.lattice().same_carrier(b.lattice());
}

}  // namespace krl
