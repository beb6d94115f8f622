#pragma once

#include <string>
#include <vector>

namespace krl {

struct Clause {
  std::string id;
  bool passed = true;
  std::string witness;  // empty when passed
  std::string detail;
};

struct Flag {
  std::string name;
  bool value = false;
  std::string detail;
};

// Tree of clause results. A report is ok when every clause in it and in all
// children passed; flags are informational and never affect ok().
class ValidationReport {
 public:
  ValidationReport() = default;
  explicit ValidationReport(std::string subject) : subject_(std::move(subject)) {}

  const std::string& subject() const { return subject_; }
  void set_subject(std::string s) { subject_ = std::move(s); }

  void pass(std::string id, std::string detail = {});
  void fail(std::string id, std::string witness, std::string detail = {});
  // Records a pass or a failure depending on `ok`.
  void check(std::string id, bool ok, std::string witness = {}, std::string detail = {});
  void flag(std::string name, bool value, std::string detail = {});
  void add_child(ValidationReport child);

  bool ok() const;
  const std::vector<Clause>& clauses() const { return clauses_; }
  const std::vector<Flag>& flags() const { return flags_; }
  const std::vector<ValidationReport>& children() const { return children_; }

  const Clause* find(std::string_view id) const;  // searches children too
  const Flag* find_flag(std::string_view name) const;
  bool passed(std::string_view id) const;         // false if absent
  bool flag_value(std::string_view name) const;   // false if absent
  std::vector<const Clause*> failures() const;

  std::string to_text() const;

 private:
  void render(std::string& out, int depth) const;

  std::string subject_;
  std::vector<Clause> clauses_;
  std::vector<Flag> flags_;
  std::vector<ValidationReport> children_;
};

}  // namespace krl
