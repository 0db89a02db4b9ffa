#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>

#include "papc/action.hpp"

namespace papc {

/// Identifier of a running action. Valid identifiers are >= 1.
using Id = std::uint32_t;

/// Finite identifier set, iterated in ascending order.
using IdSet = std::set<Id>;

enum class TermKind : std::uint8_t { Nil, Prefix, Sum, Par, Const };

/// `.` consumes the process on completion, `:` keeps it.
enum class PrefixMode : std::uint8_t { Preemptive, Conservative };

/// Immutable term of the configuration grammar.
///
/// A term without frozen prefixes is a process. Frozen prefixes may only
/// occur where a configuration is allowed: never below another prefix. The
/// factory functions enforce this, so every constructed Term is well formed.
/// Nodes are shared; copying a Term is cheap.
class Term {
 public:
  /// The nil process.
  Term();

  static Term nil() { return Term(); }
  static Term prefix(PrefixMode mode, Action action, Term continuation);
  static Term frozen(PrefixMode mode, Action action, Id id, Term continuation);
  static Term sum(Term left, Term right);
  static Term par(Term left, Term right);
  static Term constant(std::string name);

  TermKind kind() const noexcept;
  bool is_nil() const noexcept { return kind() == TermKind::Nil; }
  bool is_prefix() const noexcept { return kind() == TermKind::Prefix; }
  bool is_sum() const noexcept { return kind() == TermKind::Sum; }
  bool is_par() const noexcept { return kind() == TermKind::Par; }
  bool is_const() const noexcept { return kind() == TermKind::Const; }

  // Prefix accessors; meaningless on other kinds.
  PrefixMode mode() const noexcept;
  const Action& action() const noexcept;
  std::optional<Id> frozen_id() const noexcept;
  bool is_frozen() const noexcept { return frozen_id().has_value(); }
  const Term& continuation() const noexcept;

  // Sum / Par accessors.
  const Term& left() const noexcept;
  const Term& right() const noexcept;

  // Const accessor.
  const std::string& name() const noexcept;

  /// No frozen prefix anywhere in the term.
  bool is_pure() const noexcept { return frozen_count() == 0; }
  /// Number of frozen prefix nodes (duplicates counted).
  std::size_t frozen_count() const noexcept;

  std::size_t hash() const noexcept;

  friend bool operator==(const Term& a, const Term& b) noexcept;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// Identifiers of all frozen prefixes.
IdSet id_set(const Term& c);

/// Actions of the frozen prefixes carrying `id`.
std::set<Action> actions_at(Id id, const Term& c);

/// Replaces `old_id` by `new_id` on every frozen prefix. Throws
/// IdentifierCollision when `new_id` is already used and differs from
/// `old_id`.
Term rename_id(const Term& c, Id old_id, Id new_id);

/// Least positive integer not in `used`.
Id fresh_id(const IdSet& used);

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept { return t.hash(); }
};

}  // namespace papc
