#pragma once

#include <random>
#include <set>
#include <string>
#include <string_view>

#include "papc/term.hpp"

namespace papc {

/// A process with exactly one hole, written `[]`.
class Context {
 public:
  /// Throws SyntaxError, or Error when the hole count is not one.
  static Context parse(std::string_view text);

  /// Wraps a skeleton built with hole(); validates the hole count.
  explicit Context(Term skeleton);

  /// The placeholder term for building skeletons by hand.
  static Term hole();

  const Term& skeleton() const noexcept { return skeleton_; }
  /// True when filling places the argument below an action prefix.
  bool hole_under_prefix() const noexcept { return under_prefix_; }
  std::string to_string() const;

 private:
  Term skeleton_;
  bool under_prefix_ = false;
};

/// Replaces the hole by `p`. Throws IllFormedPlacement when `p` holds
/// running actions and the hole sits below a prefix.
Term apply_context(const Context& ctx, const Term& p);

struct ContextShape {
  std::size_t max_depth = 3;
  /// Allow prefixes above the hole (only legal for pure arguments).
  bool allow_prefix_above_hole = true;
};

/// Random context over `channels` plus one fresh channel. Operators around the
/// hole are drawn uniformly from sum, parallel and both prefixes; the hole
/// side of each binary operator is uniform.
Context random_context(std::mt19937_64& rng, const std::set<std::string>& channels, const ContextShape& shape = {});

/// Channel names occurring in `t`. Constants are not unfolded.
std::set<std::string> channels_of(const Term& t);

}  // namespace papc
