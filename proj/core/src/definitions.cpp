#include "papc/definitions.hpp"

#include <functional>
#include <set>

#include "papc/errors.hpp"

namespace papc {

void Definitions::add(std::string name, Term body) {
  if (bindings_.contains(name)) throw DuplicateDefinition(name);
  if (!body.is_pure())
    throw IllFormedPlacement("body of '" + name + "' contains running actions");
  bindings_.emplace(std::move(name), std::move(body));
}

const Term* Definitions::find(std::string_view name) const {
  auto it = bindings_.find(name);
  return it == bindings_.end() ? nullptr : &it->second;
}

std::string ValidationIssue::message() const {
  switch (kind) {
    case Kind::UnboundConstant:
      return "constant '" + constant + "' (in " + location + ") has no definition; treated as inert";
    case Kind::UnguardedRecursion:
      return "unguarded recursive occurrence of '" + constant + "' in " + location;
  }
  return {};
}

bool ValidationReport::has_errors() const noexcept {
  for (const auto& issue : issues)
    if (issue.severity == ValidationIssue::Severity::Error) return true;
  return false;
}

std::vector<ValidationIssue> ValidationReport::errors() const {
  std::vector<ValidationIssue> out;
  for (const auto& issue : issues)
    if (issue.severity == ValidationIssue::Severity::Error) out.push_back(issue);
  return out;
}

std::vector<ValidationIssue> ValidationReport::warnings() const {
  std::vector<ValidationIssue> out;
  for (const auto& issue : issues)
    if (issue.severity == ValidationIssue::Severity::Warning) out.push_back(issue);
  return out;
}

namespace {

void collect_constants(const Term& t, bool guarded, std::set<std::string>& all,
                       std::set<std::string>& unguarded) {
  switch (t.kind()) {
    case TermKind::Const:
      all.insert(t.name());
      if (!guarded) unguarded.insert(t.name());
      break;
    case TermKind::Prefix:
      collect_constants(t.continuation(), true, all, unguarded);
      break;
    case TermKind::Sum:
    case TermKind::Par:
      collect_constants(t.left(), guarded, all, unguarded);
      collect_constants(t.right(), guarded, all, unguarded);
      break;
    case TermKind::Nil:
      break;
  }
}

}  // namespace

ValidationReport validate(const Definitions& defs, std::span<const Term> roots) {
  using Severity = ValidationIssue::Severity;
  using Kind = ValidationIssue::Kind;
  ValidationReport report;

  std::map<std::string, std::set<std::string>> unguarded_edges;
  for (const auto& [name, body] : defs) {
    std::set<std::string> all;
    std::set<std::string> unguarded;
    collect_constants(body, false, all, unguarded);
    for (const auto& c : all)
      if (!defs.find(c)) report.issues.push_back({Severity::Warning, Kind::UnboundConstant, c, name});
    unguarded_edges[name] = std::move(unguarded);
  }

  // `to` reaches `from` through unguarded references.
  auto reaches = [&](const std::string& start, const std::string& target) {
    std::set<std::string> seen;
    std::function<bool(const std::string&)> dfs = [&](const std::string& n) {
      if (n == target) return true;
      if (!seen.insert(n).second) return false;
      auto it = unguarded_edges.find(n);
      if (it == unguarded_edges.end()) return false;
      for (const auto& m : it->second)
        if (dfs(m)) return true;
      return false;
    };
    return dfs(start);
  };

  for (const auto& [name, targets] : unguarded_edges)
    for (const auto& target : targets)
      if (defs.find(target) && reaches(target, name))
        report.issues.push_back({Severity::Error, Kind::UnguardedRecursion, target, name});

  for (std::size_t i = 0; i < roots.size(); ++i) {
    std::set<std::string> all;
    std::set<std::string> unguarded;
    collect_constants(roots[i], false, all, unguarded);
    for (const auto& c : all)
      if (!defs.find(c))
        report.issues.push_back({Severity::Warning, Kind::UnboundConstant, c, "root #" + std::to_string(i)});
  }
  return report;
}

}  // namespace papc
