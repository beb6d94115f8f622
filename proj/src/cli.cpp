#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <fstream>
#include <ostream>

#include "krl/bridge.hpp"
#include "krl/enumerate.hpp"
#include "krl/errors.hpp"
#include "krl/frontend.hpp"

namespace krl {

using nlohmann::json;

namespace {

json report_json(const ValidationReport& r) {
  json j;
  j["subject"] = r.subject();
  j["ok"] = r.ok();
  j["clauses"] = json::array();
  for (const auto& c : r.clauses())
    j["clauses"].push_back({{"id", c.id}, {"passed", c.passed}, {"witness", c.witness}, {"detail", c.detail}});
  j["flags"] = json::array();
  for (const auto& f : r.flags())
    j["flags"].push_back({{"name", f.name}, {"value", f.value}, {"detail", f.detail}});
  j["children"] = json::array();
  for (const auto& ch : r.children()) j["children"].push_back(report_json(ch));
  return j;
}

struct Context {
  Context(std::ostream& o, std::ostream& e, bool j) : out(o), err(e), as_json(j) {}

  std::ostream& out;
  std::ostream& err;
  bool as_json = false;
  Workspace ws;
  json result = json::object();
  std::string text;

  int finish_report(const ValidationReport& r) {
    if (as_json) {
      result["ok"] = r.ok();
      result["report"] = report_json(r);
    } else {
      text += r.to_text();
    }
    return r.ok() ? 0 : 1;
  }

  void flush() {
    if (as_json) {
      out << result.dump(2) << "\n";
    } else {
      out << text;
    }
  }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw InvalidSource(fmt::format("cannot write '{}'", path));
  f << content;
}

// First document of one of the kinds in `names`.
std::optional<std::string> first_of(Workspace& ws, const std::vector<std::string>& names, DocKind kind) {
  for (const auto& n : names)
    if (ws.document(n).kind == kind) return n;
  return std::nullopt;
}

AlgebraPtr first_algebra(Workspace& ws, const std::vector<std::string>& names) {
  if (auto n = first_of(ws, names, DocKind::ia)) return ws.algebra(*n);
  if (auto n = first_of(ws, names, DocKind::aks)) return functor_A_obj(ws.aks(*n)).algebra;
  throw InvalidSource("the file defines no implicative algebra or AKS");
}

ValidationReport validate_document(Workspace& ws, const std::string& name) {
  const auto& d = ws.document(name);
  switch (d.kind) {
    case DocKind::lattice: {
      auto r = validate_lattice(*ws.lattice(name));
      r.set_subject("lattice " + name);
      return r;
    }
    case DocKind::ia: {
      if (d.section("functor")) return validate_algebra(*ws.algebra(name));
      ValidationReport r("document " + name);
      auto L = ws.lattice(name);
      r.add_child(validate_lattice(*L));
      if (L->is_lattice()) r.add_child(validate_algebra(*ws.algebra(name)));
      return r;
    }
    case DocKind::aks: return validate_aks(*ws.aks(name));
    case DocKind::interior: return validate_interior(ws.interior(name));
    case DocKind::morphism: {
      auto m = ws.morphism(name);
      if (auto* f = std::get_if<IaMorphism>(&m.morphism)) return check_applicative_ia(*f).report;
      return check_applicative_aks(std::get<AksMorphism>(m.morphism)).report;
    }
  }
  return {};
}

int cmd_validate(Context& c, const std::string& file) {
  auto names = c.ws.load_file(file);
  ValidationReport root("validate " + file);
  for (const auto& n : names) root.add_child(validate_document(c.ws, n));
  return c.finish_report(root);
}

int cmd_combinators(Context& c, const std::string& file) {
  auto A = first_algebra(c.ws, c.ws.load_file(file));
  const auto& S = *A->structure;
  json j = {{"algebra", A->name},
            {"i", A->element_name(combinator_i(S))},
            {"k", A->element_name(combinator_k(S))},
            {"s", A->element_name(combinator_s(S))},
            {"cc", A->element_name(combinator_cc(S))},
            {"stored-k", A->element_name(A->k)},
            {"stored-s", A->element_name(A->s)}};
  int code = 0;
  try {
    j["nu"] = A->element_name(combinator_nu(*A));
  } catch (const VerificationFailed& e) {
    j["nu"] = nullptr;
    j["nu-error"] = e.what();
    code = 1;
  }
  if (c.as_json) {
    c.result = j;
  } else {
    c.text += "== combinators of " + A->name + "\n";
    for (auto key : {"i", "k", "s", "cc", "stored-k", "stored-s"})
      c.text += fmt::format("{:<9}{}\n", key, j[key].get<std::string>());
    c.text += fmt::format("{:<9}{}\n", "nu", j["nu"].is_null() ? "FAIL " + j["nu-error"].get<std::string>()
                                                                : j["nu"].get<std::string>());
  }
  return code;
}

int cmd_apply(Context& c, const std::string& file, const std::string& a, const std::string& b) {
  auto A = first_algebra(c.ws, c.ws.load_file(file));
  const auto& L = A->lattice();
  const ElementId x = L.id_of(a), y = L.id_of(b);
  const auto app = A->element_name(A->app(x, y)), imp = A->element_name(A->imp(x, y));
  if (c.as_json) {
    c.result = {{"algebra", A->name}, {"a", a}, {"b", b}, {"app", app}, {"imp", imp}};
  } else {
    c.text += fmt::format("{} {} = {}\n{} -> {} = {}\n", a, b, app, a, b, imp);
  }
  return 0;
}

int cmd_functor(Context& c, const std::string& which, const std::string& file, const std::string& out_path,
                bool expand) {
  auto names = c.ws.load_file(file);
  SourceFile emitted;
  ValidationReport report;
  try {
    if (which == "A") {
      auto n = first_of(c.ws, names, DocKind::aks);
      if (!n) throw InvalidSource("the file defines no AKS");
      auto K = c.ws.aks(*n);
      auto img = functor_A_obj(K);
      report = validate_algebra(*img.algebra);
      if (expand) {
        emitted.documents.push_back(document_from_algebra(*img.algebra));
      } else {
        emitted.documents.push_back(document_from_aks(*K));
        emitted.documents.push_back(document_from_functor_A(img.algebra->name, K->name()));
      }
    } else {
      auto n = first_of(c.ws, names, DocKind::ia);
      if (!n) throw InvalidSource("the file defines no implicative algebra");
      auto img = functor_K_obj(c.ws.algebra(*n));
      report = validate_aks(*img.aks);
      emitted.documents.push_back(document_from_aks(*img.aks));
    }
  } catch (const InvalidSource& e) {
    if (c.as_json) {
      c.result = {{"ok", false}, {"error", e.what()}};
    } else {
      c.text += std::string(e.what()) + "\n";
    }
    return 1;
  }
  const auto doc = emit_source(emitted);
  if (!out_path.empty()) {
    write_file(out_path, doc);
  } else if (c.as_json) {
    c.result["document"] = doc;
  } else {
    c.text += doc + "\n";
  }
  return c.finish_report(report);
}

int cmd_adjunction(Context& c, const std::string& file) {
  auto names = c.ws.load_file(file);
  AlgebraPtr A;
  AksPtr K;
  ValidationReport root("adjunction " + file);
  if (auto n = first_of(c.ws, names, DocKind::ia)) {
    A = c.ws.algebra(*n);
    root.add_child(validate_algebra(*A));
    // A(K(A(K))) has 2^(2^|A|) elements.
    if (A->size() <= 3) K = order_aks(A);
  } else if (auto m = first_of(c.ws, names, DocKind::aks)) {
    K = c.ws.aks(*m);
    if (K->size() > 3) throw SizeLimitExceeded("adjunction checks need an AKS with at most 3 elements");
    root.add_child(validate_aks(*K));
    A = powerset_algebra(K);
  } else {
    throw InvalidSource("the file defines no implicative algebra or AKS");
  }
  root.flag("aks-side", K != nullptr, K ? K->name() : "skipped: algebra has more than 3 elements");
  if (!root.ok()) return c.finish_report(root);

  std::vector<IaMorphism> ia_tests;
  std::vector<AksMorphism> aks_tests;
  for (const auto& n : names)
    if (c.ws.document(n).kind == DocKind::morphism) {
      auto m = c.ws.morphism(n).morphism;
      if (auto* f = std::get_if<IaMorphism>(&m)) ia_tests.push_back(*f);
      else aks_tests.push_back(std::get<AksMorphism>(m));
    }
  root.add_child(composite_AK_check(A));
  if (K) root.add_child(composite_KA_check(K));
  root.add_child(check_adjunction_instance(A, K, ia_tests, aks_tests));
  return c.finish_report(root);
}

int cmd_morphism_check(Context& c, const std::string& file, bool dense) {
  auto names = c.ws.load_file(file);
  ValidationReport root("morphism check " + file);
  json certs = json::array();
  std::string cert_text;
  for (const auto& n : names) {
    if (c.ws.document(n).kind != DocKind::morphism) continue;
    auto m = c.ws.morphism(n);
    if (auto* f = std::get_if<IaMorphism>(&m.morphism)) {
      if (dense) {
        auto d = check_comp_dense_ia(*f, m.hint);
        root.add_child(d.report);
        if (d.certificate) cert_text += emit_spec(document_from_morphism(*f, d.certificate));
      } else {
        root.add_child(check_applicative_ia(*f).report);
      }
    } else {
      const auto& g = std::get<AksMorphism>(m.morphism);
      if (dense) {
        auto d = check_comp_dense_aks(g, m.hint);
        root.add_child(d.report);
        if (d.certificate) cert_text += emit_spec(document_from_morphism(g, d.certificate));
      } else {
        root.add_child(check_applicative_aks(g).report);
      }
    }
  }
  if (root.children().empty()) throw InvalidSource("the file defines no morphism");
  if (c.as_json) {
    c.result["certificates"] = cert_text;
  } else if (!cert_text.empty()) {
    c.text += cert_text + "\n";
  }
  return c.finish_report(root);
}

InteriorOperator load_operator(Context& c, const std::string& file, const std::string& op_file) {
  c.ws.load_file(file);
  auto names = c.ws.load_file(op_file);
  auto n = first_of(c.ws, names, DocKind::interior);
  if (!n) throw InvalidSource("the operator file defines no interior operator");
  return c.ws.interior(*n);
}

int cmd_interior_approx(Context& c, const std::string& file, const std::string& op_file) {
  auto op = load_operator(c, file, op_file);
  ValidationReport root("interior approx " + op.name);
  auto input = validate_interior(op);
  root.add_child(input);
  if (!input.ok()) return c.finish_report(root);
  const auto approx = al_approx(op);
  auto out = validate_interior(approx);
  out.set_subject("approximation " + approx.name);
  root.add_child(out);
  root.check("approx.alexandroff", out.flag_value("alexandroff"));
  root.check("approx.above-input", operator_leq(op, approx));
  if (op.lattice->is_powerset()) root.check("approx.paths-agree", al_approx_general(op) == approx);
  const auto doc = emit_spec(document_from_interior(approx, c.ws.document(op.name).on));
  if (c.as_json) {
    c.result["document"] = doc;
  } else {
    c.text += doc + "\n";
  }
  return c.finish_report(root);
}

int cmd_interior_change(Context& c, const std::string& file, const std::string& op_file, const std::string& out_path) {
  auto op = load_operator(c, file, op_file);
  auto A = c.ws.algebra(c.ws.document(op.name).on);
  try {
    auto C = change_implication(A, op);
    ValidationReport root = C.report;
    if (C.iota_imp_invariant) root.add_child(density_certificates(C).report);
    const auto doc = emit_spec(document_from_algebra(*C.changed));
    if (!out_path.empty()) {
      write_file(out_path, doc);
    } else if (c.as_json) {
      c.result["document"] = doc;
    } else {
      c.text += doc + "\n";
    }
    return c.finish_report(root);
  } catch (const HypothesisFailed& e) {
    if (c.as_json) {
      c.result = {{"ok", false}, {"error", e.what()}, {"clause", e.clause}, {"witness", e.witness}};
    } else {
      c.text += fmt::format("{}\nFAIL {} witness={}\n", e.what(), e.clause, e.witness);
    }
    return 1;
  }
}

int cmd_enumerate(Context& c, const std::string& kind, std::size_t size) {
  json j = {{"kind", kind}, {"size", size}};
  if (kind == "lattice") {
    auto all = enumerate_lattices(size);
    SourceFile f;
    for (std::size_t i = 0; i < all.size(); ++i)
      f.documents.push_back(document_from_lattice(fmt::format("L{}-{}", size, i), *all[i]));
    j["count"] = all.size();
    j["documents"] = emit_source(f);
    if (!c.as_json) c.text += emit_source(f) + fmt::format("\ncount: {}\n", all.size());
  } else if (kind == "imp") {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < size; ++i) names.push_back(fmt::format("e{}", i));
    auto L = std::make_shared<const FiniteLattice>(FiniteLattice::chain(names));
    std::size_t total = 0, commuting = 0, full = 0;
    for_each_imp_table(*L, [&](const std::vector<ElementId>& t) {
      ImplicativeStructure S(L, t);
      ++total;
      if (check_structure(S).ok()) ++commuting;
      if (check_adjunction(S).passed("adjunction.full")) ++full;
      return true;
    });
    j["tables"] = total;
    j["meet-commuting"] = commuting;
    j["full-adjunction"] = full;
    if (!c.as_json)
      c.text += fmt::format("chain of {}: {} tables, {} meet-commuting, {} with full adjunction\n", size, total,
                            commuting, full);
  } else if (kind == "interior") {
    j["lattices"] = json::array();
    for (const auto& L : enumerate_lattices(size)) {
      auto ops = enumerate_interiors(L);
      std::size_t alex = 0;
      for (const auto& op : ops)
        if (classify(op) == InteriorClass::alexandroff) ++alex;
      j["lattices"].push_back({{"operators", ops.size()}, {"alexandroff", alex}});
      if (!c.as_json)
        c.text += fmt::format("lattice {}: {} interior operators, {} Alexandroff\n", j["lattices"].size() - 1,
                              ops.size(), alex);
    }
  } else {
    throw CLI::ValidationError("--kind", "expected lattice, imp or interior");
  }
  if (c.as_json) c.result = j;
  return 0;
}

}  // namespace

std::string report_to_json(const ValidationReport& r) { return report_json(r).dump(2); }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Checker for implicative algebras, abstract Krivine structures and the functors between them", "krl"};
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Print results as JSON");

  std::string file, op_file, out_path, a, b, which, kind;
  std::size_t size = 0;
  bool expand = false, dense = false;

  auto* validate = app.add_subcommand("validate", "Validate every document of a file");
  validate->add_option("file", file)->required();
  auto* combinators = app.add_subcommand("combinators", "Print the combinators of an algebra");
  combinators->add_option("file", file)->required();
  auto* apply = app.add_subcommand("apply", "Application and implication of two elements");
  apply->add_option("file", file)->required();
  apply->add_option("a", a)->required();
  apply->add_option("b", b)->required();
  auto* functor = app.add_subcommand("functor", "Apply the functor A (AKS to algebra) or K (algebra to AKS)");
  functor->add_option("which", which)->required()->check(CLI::IsMember({"A", "K"}));
  functor->add_option("file", file)->required();
  functor->add_option("-o,--output", out_path);
  functor->add_flag("--expand", expand, "Write A(K) with explicit tables");
  auto* adjunction = app.add_subcommand("adjunction", "Check the unit, counit and triangle identities");
  adjunction->add_option("file", file)->required();
  auto* morphism = app.add_subcommand("morphism", "Morphism checks");
  morphism->require_subcommand(1);
  auto* mcheck = morphism->add_subcommand("check", "Check the morphisms of a map file");
  mcheck->add_flag("--dense", dense, "Also decide computational density");
  mcheck->add_option("file", file)->required();
  auto* interior = app.add_subcommand("interior", "Interior operators");
  interior->require_subcommand(1);
  auto* approx = interior->add_subcommand("approx", "Least Alexandroff operator above an operator");
  approx->add_option("file", file)->required();
  approx->add_option("op-file", op_file)->required();
  auto* change = interior->add_subcommand("change", "Change the implication along an operator");
  change->add_option("file", file)->required();
  change->add_option("op-file", op_file)->required();
  change->add_option("-o,--output", out_path);
  auto* enumerate = app.add_subcommand("enumerate", "Enumerate small lattices, implications or operators");
  enumerate->add_option("--kind", kind)->required()->check(CLI::IsMember({"lattice", "imp", "interior"}));
  enumerate->add_option("--size", size)->required()->check(CLI::Range(1, 6));

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  Context c(out, err, as_json);
  int code = 2;
  try {
    if (*validate) code = cmd_validate(c, file);
    else if (*combinators) code = cmd_combinators(c, file);
    else if (*apply) code = cmd_apply(c, file, a, b);
    else if (*functor) code = cmd_functor(c, which, file, out_path, expand);
    else if (*adjunction) code = cmd_adjunction(c, file);
    else if (*mcheck) code = cmd_morphism_check(c, file, dense);
    else if (*approx) code = cmd_interior_approx(c, file, op_file);
    else if (*change) code = cmd_interior_change(c, file, op_file, out_path);
    else if (*enumerate) code = cmd_enumerate(c, kind, size);
  } catch (const VerificationFailed& e) {
    c.flush();
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    c.flush();
    err << "error: " << e.what() << "\n";
    return 2;
  }
  c.flush();
  return code;
}

}  // namespace krl
