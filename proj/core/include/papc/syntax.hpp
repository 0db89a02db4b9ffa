#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "papc/definitions.hpp"
#include "papc/term.hpp"

namespace papc {

// Concrete syntax, loosest to tightest binding:
//
//   par    := sum ( '|' par )?
//   sum    := unary ( '+' sum )?
//   unary  := action ('.' | ':') unary
//           | '[' action '#' int ']' ('.' | ':') unary
//           | '0' | Constant | '(' par ')'
//   action := name | '~' name
//
// Action names start with a lower-case letter, constants with an upper-case
// letter. `#` starts a line comment except inside brackets.

/// Parses a configuration (a process possibly holding running prefixes).
Term parse_process(std::string_view text);

/// Parses `Name := process;` bindings.
Definitions parse_definitions(std::string_view text);

/// A model file: definitions plus an optional `system := configuration;`
/// entry naming the root.
struct ModelFile {
  Definitions definitions;
  std::optional<Term> root;
};

ModelFile parse_model(std::string_view text);

/// Canonical text. parse_process(format(c)) == c.
std::string format(const Term& c);

/// Text of a set in ascending order: `{}` or `{1,2}`.
std::string format_ids(const IdSet& ids);

namespace detail {
/// Parses a term that may contain the context hole `[]`.
Term parse_with_holes(std::string_view text, std::size_t& holes);
inline constexpr std::string_view kHoleName = "[]";
}  // namespace detail

}  // namespace papc
