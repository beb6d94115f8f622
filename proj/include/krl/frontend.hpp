#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "krl/aks.hpp"
#include "krl/implicative.hpp"
#include "krl/interior.hpp"
#include "krl/morphism.hpp"
#include "krl/report.hpp"

namespace krl {

struct SourcePos {
  int line = 0;
  int column = 0;
};

struct Row {
  std::vector<std::string> tokens;
  SourcePos pos;
};

struct Section {
  std::string key;
  SourcePos pos;
  std::vector<Row> rows;
};

enum class DocKind { lattice, ia, aks, interior, morphism };
std::string_view kind_name(DocKind k);

// One structure, operator or morphism block of a source file.
//   structure lattice|ia|aks "name"
//   interior ["name"] on "structure"
//   morphism ia|aks "name" from "source" to "target"
struct SpecDocument {
  DocKind kind = DocKind::lattice;
  std::string name;
  std::string flavor;  // ia or aks, morphisms only
  std::string on;      // interior operators
  std::string from;    // morphisms
  std::string to;
  SourcePos pos;
  std::vector<Section> sections;

  const Section* section(std::string_view key) const;
  // Rows sorted and sections in canonical order; positions cleared.
  SpecDocument canonical() const;
  // Compares canonical forms.
  bool operator==(const SpecDocument& other) const;
};

struct SourceFile {
  std::vector<std::string> includes;
  std::vector<SpecDocument> documents;
};

// Parses any number of documents and `include "path"` lines. Checks
// everything that can be checked inside one document: section names and
// shapes, element names and table completeness. Throws ParseError,
// UnknownElement, IncompleteTable.
SourceFile parse_source(std::string_view text);
// Exactly one document and no includes.
SpecDocument parse_spec(std::string_view text);

std::string emit_spec(const SpecDocument& doc);
std::string emit_source(const SourceFile& file);

// Documents built from in-memory objects. `expand` writes the elements of a
// powerset lattice as brace names rather than as a functor reference.
SpecDocument document_from_lattice(const std::string& name, const FiniteLattice& L);
SpecDocument document_from_algebra(const ImplicativeAlgebra& A);
SpecDocument document_from_aks(const Aks& K);
SpecDocument document_from_functor_A(const std::string& name, const std::string& aks_name);
SpecDocument document_from_interior(const InteriorOperator& i, const std::string& on);
SpecDocument document_from_morphism(const MorphismSpec& f, const std::optional<DensityCertificate>& cert = {});

// Named objects loaded from documents. Cross-document references (functor
// sections, interior and morphism targets) are resolved on first use.
class Workspace {
 public:
  // Loads a file and, recursively, its includes (paths relative to the
  // including file; each file is read once). Returns the documents that the
  // file itself defines, in order.
  std::vector<std::string> load_file(const std::filesystem::path& path);
  std::vector<std::string> load_text(std::string_view text, const std::filesystem::path& base_dir = {});

  bool contains(const std::string& name) const { return docs_.count(name) != 0; }
  const SpecDocument& document(const std::string& name) const;

  // The carrier lattice of a lattice or ia document; may fail to be a lattice.
  LatticePtr lattice(const std::string& name);
  AlgebraPtr algebra(const std::string& name);
  AksPtr aks(const std::string& name);
  InteriorOperator interior(const std::string& name);

  struct LoadedMorphism {
    MorphismSpec morphism;
    CertificateHint hint;
  };
  LoadedMorphism morphism(const std::string& name);

 private:
  void add(SpecDocument doc);

  std::map<std::string, SpecDocument> docs_;
  std::vector<std::filesystem::path> loaded_;
  std::map<std::string, LatticePtr> lattices_;
  std::map<std::string, AlgebraPtr> algebras_;
  std::map<std::string, AksPtr> akses_;
  std::set<std::string> building_;
};

// Report tree as JSON text.
std::string report_to_json(const ValidationReport& r);

// Command line entry point; argv[0] is the program name.
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or input error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace krl
