#include "krl/report.hpp"

#include <fmt/format.h>

namespace krl {

void ValidationReport::pass(std::string id, std::string detail) {
  clauses_.push_back({std::move(id), true, {}, std::move(detail)});
}

void ValidationReport::fail(std::string id, std::string witness, std::string detail) {
  clauses_.push_back({std::move(id), false, std::move(witness), std::move(detail)});
}

void ValidationReport::check(std::string id, bool ok, std::string witness, std::string detail) {
  if (ok)
    pass(std::move(id), std::move(detail));
  else
    fail(std::move(id), std::move(witness), std::move(detail));
}

void ValidationReport::flag(std::string name, bool value, std::string detail) {
  flags_.push_back({std::move(name), value, std::move(detail)});
}

void ValidationReport::add_child(ValidationReport child) { children_.push_back(std::move(child)); }

bool ValidationReport::ok() const {
  for (const auto& c : clauses_)
    if (!c.passed) return false;
  for (const auto& ch : children_)
    if (!ch.ok()) return false;
  return true;
}

const Clause* ValidationReport::find(std::string_view id) const {
  for (const auto& c : clauses_)
    if (c.id == id) return &c;
  for (const auto& ch : children_)
    if (auto* c = ch.find(id)) return c;
  return nullptr;
}

const Flag* ValidationReport::find_flag(std::string_view name) const {
  for (const auto& f : flags_)
    if (f.name == name) return &f;
  for (const auto& ch : children_)
    if (auto* f = ch.find_flag(name)) return f;
  return nullptr;
}

bool ValidationReport::passed(std::string_view id) const {
  auto* c = find(id);
  return c && c->passed;
}

bool ValidationReport::flag_value(std::string_view name) const {
  auto* f = find_flag(name);
  return f && f->value;
}

std::vector<const Clause*> ValidationReport::failures() const {
  std::vector<const Clause*> out;
  for (const auto& c : clauses_)
    if (!c.passed) out.push_back(&c);
  for (const auto& ch : children_) {
    auto sub = ch.failures();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

void ValidationReport::render(std::string& out, int depth) const {
  std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
  if (!subject_.empty()) out += fmt::format("{}== {}\n", indent, subject_);
  for (const auto& c : clauses_) {
    if (c.passed)
      out += fmt::format("{}PASS {}", indent, c.id);
    else
      out += fmt::format("{}FAIL {} witness={}", indent, c.id, c.witness);
    if (!c.detail.empty()) out += fmt::format("  ({})", c.detail);
    out += '\n';
  }
  for (const auto& f : flags_) {
    out += fmt::format("{}FLAG {}={}", indent, f.name, f.value ? "yes" : "no");
    if (!f.detail.empty()) out += fmt::format("  ({})", f.detail);
    out += '\n';
  }
  for (const auto& ch : children_) ch.render(out, depth + 1);
}

std::string ValidationReport::to_text() const {
  std::string out;
  render(out, 0);
  return out;
}

}  // namespace krl
