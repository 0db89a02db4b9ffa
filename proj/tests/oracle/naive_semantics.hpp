#pragma once

// Brute-force transcription of the transition rules, written against its own
// term representation. It shares no derivation code with the engine and
// serves as the reference the engine is compared with.

#include <set>
#include <string>

#include "papc/definitions.hpp"
#include "papc/term.hpp"

namespace oracle {

struct Steps {
  // Each entry is "<label> -> <target>" in the engine's text form.
  std::set<std::string> h, i, cp, cc;
};

Steps derive(const papc::Term& config, const papc::Definitions& defs);

}  // namespace oracle
