#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "papc/term.hpp"

namespace papc {

/// Constant bindings `Name := process;`, ordered by name.
class Definitions {
 public:
  using Map = std::map<std::string, Term, std::less<>>;

  /// Throws DuplicateDefinition on a rebinding and IllFormedPlacement when
  /// the body contains running actions.
  void add(std::string name, Term body);

  /// Body bound to `name`, or nullptr for a free constant.
  const Term* find(std::string_view name) const;

  bool empty() const noexcept { return bindings_.empty(); }
  std::size_t size() const noexcept { return bindings_.size(); }
  Map::const_iterator begin() const noexcept { return bindings_.begin(); }
  Map::const_iterator end() const noexcept { return bindings_.end(); }

 private:
  Map bindings_;
};

struct ValidationIssue {
  enum class Severity { Warning, Error };
  enum class Kind { UnboundConstant, UnguardedRecursion };

  Severity severity;
  Kind kind;
  std::string constant;
  /// Where the occurrence was found: a constant name or "root #i".
  std::string location;

  std::string message() const;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool empty() const noexcept { return issues.empty(); }
  bool has_errors() const noexcept;
  std::vector<ValidationIssue> errors() const;
  std::vector<ValidationIssue> warnings() const;
};

/// Reports unbound constants (warnings: free constants are inert) and
/// constant occurrences that sit on a cycle of unguarded references (errors).
ValidationReport validate(const Definitions& defs, std::span<const Term> roots = {});

}  // namespace papc
