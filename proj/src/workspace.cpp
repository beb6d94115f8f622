#include <fmt/format.h>

#include <fstream>
#include <set>
#include <sstream>

#include "krl/bridge.hpp"
#include "krl/errors.hpp"
#include "krl/frontend.hpp"

namespace krl {

namespace {

std::string at(const Row& r) { return fmt::format("{}:{}", r.pos.line, r.pos.column); }

template <class Find>
ElementId resolve(const Row& row, std::size_t k, const std::string& where, Find&& find) {
  auto id = find(row.tokens[k]);
  if (!id) throw UnknownElement(fmt::format("{}: unknown element '{}' in '{}'", at(row), row.tokens[k], where));
  return *id;
}

std::vector<std::string> flat(const Section* s) {
  std::vector<std::string> out;
  if (!s) return out;
  for (const auto& r : s->rows) out.insert(out.end(), r.tokens.begin(), r.tokens.end());
  return out;
}

struct CycleGuard {
  CycleGuard(std::set<std::string>& s, const std::string& n) : set(s), name(n) {
    if (!set.insert(name).second) throw InvalidSource(fmt::format("functor reference cycle through '{}'", name));
  }
  ~CycleGuard() { set.erase(name); }
  std::set<std::string>& set;
  std::string name;
};

std::string first_token(const Section* s) { return s->rows.at(0).tokens.at(0); }

}  // namespace

std::vector<std::string> Workspace::load_file(const std::filesystem::path& path) {
  const auto canon = std::filesystem::weakly_canonical(path);
  std::ifstream in(canon);
  if (!in) throw InvalidSource(fmt::format("cannot read '{}'", path.string()));
  for (const auto& p : loaded_)
    if (p == canon) {
      std::vector<std::string> names;
      // Already loaded: report the documents it defined.
      std::stringstream ss;
      ss << in.rdbuf();
      for (const auto& d : parse_source(ss.str()).documents) names.push_back(d.name);
      return names;
    }
  loaded_.push_back(canon);
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return load_text(ss.str(), canon.parent_path());
  } catch (const ParseError& e) {
    if (!e.file.empty()) throw;
    throw ParseError(e.line, e.column, e.message, path.string());
  } catch (const UnknownElement& e) {
    throw UnknownElement(path.string() + ":" + e.what());
  } catch (const IncompleteTable& e) {
    throw IncompleteTable(path.string() + ": " + e.what());
  }
}

std::vector<std::string> Workspace::load_text(std::string_view text, const std::filesystem::path& base_dir) {
  auto file = parse_source(text);
  for (const auto& inc : file.includes) load_file(base_dir / inc);
  std::vector<std::string> names;
  for (auto& d : file.documents) {
    names.push_back(d.name);
    add(std::move(d));
  }
  return names;
}

void Workspace::add(SpecDocument doc) {
  if (docs_.count(doc.name))
    throw ParseError(doc.pos.line, doc.pos.column, fmt::format("'{}' is already defined", doc.name));
  auto name = doc.name;
  docs_.emplace(std::move(name), std::move(doc));
}

const SpecDocument& Workspace::document(const std::string& name) const {
  auto it = docs_.find(name);
  if (it == docs_.end()) throw InvalidSource(fmt::format("no structure named '{}' is loaded", name));
  return it->second;
}

LatticePtr Workspace::lattice(const std::string& name) {
  if (auto it = lattices_.find(name); it != lattices_.end()) return it->second;
  const auto& d = document(name);
  LatticePtr L;
  if (d.kind == DocKind::ia && d.section("functor")) {
    L = algebra(name)->lattice_ptr();
  } else if (d.kind == DocKind::lattice && d.section("powerset")) {
    L = std::make_shared<const FiniteLattice>(FiniteLattice::powerset(flat(d.section("powerset"))));
  } else if (d.kind == DocKind::lattice || d.kind == DocKind::ia) {
    auto names = flat(d.section("elements"));
    if (names.size() > FiniteLattice::kMaxExplicitSize)
      throw SizeLimitExceeded(fmt::format("'{}' has more than {} elements", name, FiniteLattice::kMaxExplicitSize));
    std::map<std::string, ElementId> idx;
    for (const auto& n : names) idx.emplace(n, static_cast<ElementId>(idx.size()));
    std::vector<std::pair<ElementId, ElementId>> pairs;
    if (auto* o = d.section("order"))
      for (const auto& r : o->rows) pairs.emplace_back(idx.at(r.tokens[0]), idx.at(r.tokens[1]));
    L = std::make_shared<const FiniteLattice>(FiniteLattice::from_pairs(std::move(names), pairs));
  } else if (d.kind == DocKind::aks) {
    throw InvalidSource(fmt::format("'{}' is an AKS, not a lattice", name));
  } else {
    throw InvalidSource(fmt::format("'{}' is not a structure", name));
  }
  lattices_[name] = L;
  return L;
}

AlgebraPtr Workspace::algebra(const std::string& name) {
  if (auto it = algebras_.find(name); it != algebras_.end()) return it->second;
  const auto& d = document(name);
  if (d.kind != DocKind::ia) throw InvalidSource(fmt::format("'{}' is not an implicative algebra", name));
  AlgebraPtr A;
  if (auto* f = d.section("functor")) {
    CycleGuard guard(building_, name);
    auto base = powerset_algebra(aks(f->rows[0].tokens[1]));
    auto copy = std::make_shared<ImplicativeAlgebra>(*base);
    copy->name = name;
    A = copy;
  } else {
    auto L = lattice(name);
    if (!L->is_lattice())
      throw InvalidSource(fmt::format("'{}' is not a complete lattice\n{}", name, validate_lattice(*L).to_text()));
    const auto n = L->size();
    std::vector<ElementId> imp(n * n);
    for (const auto& r : d.section("imp")->rows)
      imp[L->id_of(r.tokens[0]) * n + L->id_of(r.tokens[1])] = L->id_of(r.tokens[2]);
    auto st = std::make_shared<const ImplicativeStructure>(L, std::move(imp));
    ElementSet sep = L->empty_set();
    for (const auto& t : flat(d.section("separator"))) sep.set(L->id_of(t));
    std::optional<ElementId> k, s;
    if (auto* ks = d.section("k")) k = L->id_of(first_token(ks));
    if (auto* ss = d.section("s")) s = L->id_of(first_token(ss));
    A = make_algebra(name, st, std::move(sep), k, s);
  }
  algebras_[name] = A;
  return A;
}

AksPtr Workspace::aks(const std::string& name) {
  if (auto it = akses_.find(name); it != akses_.end()) return it->second;
  const auto& d = document(name);
  if (d.kind != DocKind::aks) throw InvalidSource(fmt::format("'{}' is not an AKS", name));
  AksPtr K;
  if (auto* f = d.section("functor")) {
    CycleGuard guard(building_, name);
    auto base = order_aks(algebra(f->rows[0].tokens[1]));
    K = std::make_shared<const Aks>(name, base->names(), base->perp_rows(), base->push_table(), base->app_table(),
                                    base->qp(), base->K(), base->S());
  } else {
    auto names = flat(d.section("pi"));
    if (names.size() > Aks::kMaxSize)
      throw SizeLimitExceeded(fmt::format("'{}' has more than {} elements", name, Aks::kMaxSize));
    std::map<std::string, ElementId> idx;
    for (const auto& n : names) idx.emplace(n, static_cast<ElementId>(idx.size()));
    const auto n = names.size();
    std::vector<PiSet> rows(n, 0);
    if (auto* p = d.section("perp"))
      for (const auto& r : p->rows) rows[idx.at(r.tokens[0])] |= pi_bit(idx.at(r.tokens[1]));
    std::vector<ElementId> push(n * n), app(n * n);
    for (const auto& r : d.section("push")->rows)
      push[idx.at(r.tokens[0]) * n + idx.at(r.tokens[1])] = idx.at(r.tokens[2]);
    for (const auto& r : d.section("app")->rows)
      app[idx.at(r.tokens[0]) * n + idx.at(r.tokens[1])] = idx.at(r.tokens[2]);
    PiSet qp = 0;
    for (const auto& t : flat(d.section("qp"))) qp |= pi_bit(idx.at(t));
    K = std::make_shared<const Aks>(name, std::move(names), std::move(rows), std::move(push), std::move(app), qp,
                                    idx.at(first_token(d.section("K"))), idx.at(first_token(d.section("S"))));
  }
  akses_[name] = K;
  return K;
}

InteriorOperator Workspace::interior(const std::string& name) {
  const auto& d = document(name);
  if (d.kind != DocKind::interior) throw InvalidSource(fmt::format("'{}' is not an interior operator", name));
  auto L = lattice(d.on);
  auto find = [&](const std::string& t) { return L->find(t); };
  std::vector<ElementId> table(L->size(), kNoElement);
  for (const auto& r : d.section("map")->rows) table[resolve(r, 0, d.on, find)] = resolve(r, 1, d.on, find);
  for (ElementId a = 0; a < table.size(); ++a)
    if (table[a] == kNoElement)
      throw IncompleteTable(fmt::format("map of '{}' misses element {}", name, L->name(a)));
  return InteriorOperator{name, L, std::move(table)};
}

Workspace::LoadedMorphism Workspace::morphism(const std::string& name) {
  const auto& d = document(name);
  if (d.kind != DocKind::morphism) throw InvalidSource(fmt::format("'{}' is not a morphism", name));
  LoadedMorphism out;
  std::vector<ElementId> map;
  auto fill_map = [&](std::size_t n, auto&& src_find, auto&& tgt_find, auto&& src_name) {
    map.assign(n, kNoElement);
    for (const auto& r : d.section("map")->rows) map[resolve(r, 0, d.from, src_find)] = resolve(r, 1, d.to, tgt_find);
    for (ElementId a = 0; a < n; ++a)
      if (map[a] == kNoElement) throw IncompleteTable(fmt::format("map of '{}' misses {}", name, src_name(a)));
  };
  auto fill_hint = [&](std::size_t n, auto&& tgt_find, auto&& src_find) {
    if (auto* h = d.section("hint-h")) {
      std::vector<ElementId> table(n, kNoElement);
      for (const auto& r : h->rows) table[resolve(r, 0, d.to, tgt_find)] = resolve(r, 1, d.from, src_find);
      out.hint.h = std::move(table);
    }
  };
  if (d.flavor == "ia") {
    auto A = algebra(d.from), B = algebra(d.to);
    auto fa = [&](const std::string& t) { return A->lattice().find(t); };
    auto fb = [&](const std::string& t) { return B->lattice().find(t); };
    fill_map(A->size(), fa, fb, [&](ElementId a) { return A->element_name(a); });
    fill_hint(B->size(), fb, fa);
    if (auto* t = d.section("hint-t")) out.hint.t = resolve(t->rows[0], 0, d.to, fb);
    if (auto* r = d.section("hint-r")) out.hint.r = resolve(r->rows[0], 0, d.to, fb);
    out.morphism = IaMorphism{name, A, B, std::move(map)};
  } else {
    auto K = aks(d.from), L = aks(d.to);
    auto fk = [&](const std::string& t) { return K->find(t); };
    auto fl = [&](const std::string& t) { return L->find(t); };
    auto sets = [](const AksPtr& X) {
      return [X](const std::string& t) -> std::optional<ElementId> {
        auto m = parse_brace_set(t, X->names());
        if (!m) return std::nullopt;
        return static_cast<ElementId>(*m);
      };
    };
    fill_map(K->size(), fk, fl, [&](ElementId p) { return K->element_name(p); });
    if (d.section("hint-h")) {
      if (L->size() > kMaxAksMorphismCarrier)
        throw SizeLimitExceeded(fmt::format("'{}' is too large for subset hints", L->name()));
      fill_hint(std::size_t{1} << L->size(), sets(L), sets(K));
    }
    if (auto* t = d.section("hint-t")) out.hint.t = resolve(t->rows[0], 0, d.to, fl);
    if (auto* r = d.section("hint-r")) out.hint.r = resolve(r->rows[0], 0, d.to, fl);
    out.morphism = AksMorphism{name, K, L, std::move(map)};
  }
  return out;
}

}  // namespace krl
