#pragma once

#include <string>
#include <utility>
#include <vector>

#include "papc/definitions.hpp"

namespace testsupport {

// Non-recursive constants used by the congruence pairs.
papc::Definitions probe_definitions();

// Candidate bisimilar pairs with finite state spaces: algebraic laws of sum
// and parallel, nil units, constant unfolding, and configurations with
// running prefixes.
std::vector<std::pair<std::string, std::string>> probe_pairs();

}  // namespace testsupport
