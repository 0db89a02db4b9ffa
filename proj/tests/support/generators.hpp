#pragma once

#include <cstddef>
#include <random>
#include <string>

#include "papc/definitions.hpp"
#include "papc/semantics.hpp"
#include "papc/term.hpp"

namespace testsupport {

using Rng = std::mt19937_64;

// The cell/protein model: C, A and B bound, P left free.
papc::Definitions cell_definitions();

// The cell model plus two more guarded constants over channel b.
papc::Definitions random_definitions();

// Tree height: nil and constants count 1.
std::size_t height(const papc::Term& t);

papc::Action random_action(Rng& rng);

// Pure process of height at most `depth`; may reference C, A, B, P, D, E.
papc::Term random_process(Rng& rng, int depth);

// Configuration of height at most `depth` with at most `max_frozen` running
// prefixes, running identifiers drawn from 1..3 so coupled pairs occur.
papc::Term random_config(Rng& rng, int depth, int max_frozen);

// Configuration reached by a short random walk from a random process;
// the walk stops before it would leave the size limits.
papc::Term random_reachable(Rng& rng, const papc::Engine& engine, int depth, int max_frozen);

// Parallel composition of one or two coupled pairs of running prefixes
// sharing identifiers 1 and 2, possibly inside sums.
papc::Term random_coupled(Rng& rng, int depth, int max_frozen);

// One of the three generators above, chosen uniformly.
papc::Term random_mixed(Rng& rng, const papc::Engine& engine, int depth, int max_frozen);

}  // namespace testsupport
