#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "papc/definitions.hpp"
#include "papc/term.hpp"

namespace papc {

/// The four transition relations, in listing order.
enum class Relation : std::uint8_t { H, I, CP, CC };

const char* to_string(Relation r) noexcept;

/// Start of an action: (id, action+).
struct Handshake {
  Id id;
  Action action;
};

/// Rollback of the running actions whose ids are listed.
struct Interrupt {
  IdSet ids;
};

/// Completion of a preemptive action: (id, action-, demanded).
struct CompletePreemptive {
  Id id;
  Action action;
  IdSet demanded;
};

/// Completion of a conservative action; the continuation travels in the
/// label until it reaches a parallel composition.
struct CompleteConservative {
  Id id;
  Action action;
  IdSet demanded;
  Term continuation;
};

class Label {
 public:
  using Variant = std::variant<Handshake, Interrupt, CompletePreemptive, CompleteConservative>;

  Label(Handshake v) : value_(std::move(v)) {}
  Label(Interrupt v) : value_(std::move(v)) {}
  Label(CompletePreemptive v) : value_(std::move(v)) {}
  Label(CompleteConservative v) : value_(std::move(v)) {}

  Relation relation() const noexcept { return static_cast<Relation>(value_.index()); }
  const Variant& value() const noexcept { return value_; }

  template <typename T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&value_);
  }

  /// `H 1 tau+`, `I {1,2}`, `CP 1 a- {2}`, `CC 2 g- {} -> P`.
  std::string to_string() const;

  friend bool operator==(const Label& a, const Label& b);
  friend std::strong_ordering operator<=>(const Label& a, const Label& b);

 private:
  Variant value_;
};

struct Transition {
  Term source;
  Label label;
  Term target;

  Relation relation() const noexcept { return label.relation(); }
  /// `<label> -> <target>`
  std::string to_string() const;

  friend bool operator==(const Transition& a, const Transition& b) {
    return a.label == b.label && a.source == b.source && a.target == b.target;
  }
};

struct EngineOptions {
  /// Largest number of running prefixes in one component whose interrupt
  /// choices are enumerated.
  std::size_t interrupt_cap = 16;
};

/// Derives every transition of a configuration under a fixed set of
/// definitions. All results are sorted by relation, label and target text,
/// without duplicates.
class Engine {
 public:
  explicit Engine(Definitions defs, EngineOptions options = {});

  const Definitions& definitions() const noexcept { return defs_; }
  const EngineOptions& options() const noexcept { return options_; }

  std::vector<Transition> handshake_steps(const Term& c) const;
  std::vector<Transition> interrupt_steps(const Term& c) const;
  std::vector<Transition> preemptive_completions(const Term& c) const;
  std::vector<Transition> conservative_completions(const Term& c) const;

  /// Union of the four relations.
  std::vector<Transition> all_steps(const Term& c) const;

  /// Moves observable in a closed system: tau handshakes and tau preemptive
  /// completions with an empty demanded set.
  std::vector<Transition> system_steps(const Term& c) const;

 private:
  Definitions defs_;
  EngineOptions options_;
};

/// True for Handshake(_, tau) and CompletePreemptive(_, tau, {}).
bool is_system_label(const Label& label);

/// Sorts by (relation, label, target text) and drops duplicates.
void normalize(std::vector<Transition>& transitions);

}  // namespace papc
