#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "papc/context.hpp"
#include "papc/lts.hpp"
#include "papc/semantics.hpp"

namespace papc {

enum class Side { Left, Right };

/// One round of a distinguishing play.
///
/// The attacker moves on `attacker`'s configuration. When `response` is
/// present the defender answered with a transition carrying the same label
/// (for CC: same id, action and demanded set) and play continues on the
/// targets, or on the two continuations when `into_continuation` is set.
/// The last round has no response: the defender has no transition with a
/// matching label.
struct WitnessStep {
  Side attacker;
  Transition attack;
  std::optional<Transition> response;
  bool into_continuation = false;
};

struct Witness {
  std::vector<WitnessStep> steps;

  std::string to_string() const;
};

struct Verdict {
  enum class Outcome { Bisimilar, NotBisimilar, Unknown };

  Outcome outcome = Outcome::Unknown;
  std::optional<Witness> witness;
  /// "identical", "partition-refinement" or "bounded-game".
  std::string method;
  /// Distinct configurations whose transitions were computed.
  std::size_t explored = 0;
  /// Game depth reached (bounded game) or refinement rounds (partition).
  std::size_t depth = 0;
};

const char* to_string(Verdict::Outcome outcome) noexcept;

/// Label used for matching moves: the full label for H, I and CP; CC labels
/// without their continuation, which is compared up to the relation.
std::string match_key(const Label& label);

/// Decides higher-order bisimilarity of `p` and `q`.
///
/// When the joint reachable space (CC continuations included as states) has
/// at most bounds.max_states configurations the answer is exact, computed by
/// partition refinement. Otherwise a depth-bounded game up to
/// bounds.max_depth looks for a distinguishing play, expanding at most
/// bounds.max_states configurations; without one the verdict is Unknown.
Verdict bisimilar(const Engine& engine, const Term& p, const Term& q, const Bounds& bounds);

/// Replays a witness against the engine: every attack and response exists,
/// responses match the attack's label, the play follows the stated
/// successors, and the final attack has no matching response.
bool verify_witness(const Engine& engine, const Term& p, const Term& q, const Witness& witness,
                    std::string* problem = nullptr);

struct ProbeCase {
  Term left;
  Term right;
  /// Verdict on the bare pair; the pair is skipped unless Bisimilar.
  Verdict::Outcome precondition = Verdict::Outcome::Unknown;
  std::size_t contexts_checked = 0;
  std::size_t inconclusive = 0;
  /// Contexts under which the filled pair was found NotBisimilar.
  std::vector<std::string> counterexamples;
};

struct ProbeReport {
  std::vector<ProbeCase> cases;

  std::size_t counterexample_count() const noexcept;
  std::size_t rejected_count() const noexcept;
};

/// Samples `n_contexts` random contexts per bisimilar pair (seeded) and
/// checks that the filled pair stays bisimilar.
ProbeReport congruence_probe(const Engine& engine, const std::vector<std::pair<Term, Term>>& pairs,
                             std::size_t n_contexts, std::uint64_t seed, const Bounds& bounds);

}  // namespace papc
