#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "papc/definitions.hpp"
#include "papc/semantics.hpp"

namespace papc {

// Golden scenario / REPL transcript format, one entry per line:
//
//   # comment
//   def C := a.(C | C) + g:P;
//   step <configuration> => <label> => <target>
//
// `def` lines carry the definitions the steps are checked against.

struct TranscriptStep {
  Term from;
  std::string label;
  Term to;
};

struct Transcript {
  Definitions definitions;
  std::vector<TranscriptStep> steps;
};

Transcript parse_transcript(std::string_view text);
std::string format_transcript(const Transcript& transcript);

struct ReplayResult {
  std::size_t checked = 0;
  std::vector<std::string> failures;

  bool ok() const noexcept { return failures.empty(); }
};

/// Checks that each step's label and target are among the configuration's
/// derivable transitions.
ReplayResult replay(const Engine& engine, const Transcript& transcript);

}  // namespace papc
