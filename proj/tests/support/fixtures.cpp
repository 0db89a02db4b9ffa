#include "fixtures.hpp"

#include "papc/syntax.hpp"

namespace testsupport {

papc::Definitions probe_definitions() {
  return papc::parse_definitions(
      "X := a.b.0;\n"
      "Y := ~a.0 + b:0;\n");
}

std::vector<std::pair<std::string, std::string>> probe_pairs() {
  return {
      {"a.0 + b.0", "b.0 + a.0"},
      {"a.0 | b.0", "b.0 | a.0"},
      {"(a.0 + b.0) + c:0", "a.0 + (b.0 + c:0)"},
      {"(a.0 | b.0) | c:0", "a.0 | (b.0 | c:0)"},
      {"a.0 | 0", "a.0"},
      {"a.0 + 0", "a.0"},
      {"a:0 | 0", "a:0"},
      {"0 | 0", "0"},
      {"0 + 0", "0"},
      {"X", "a.b.0"},
      {"Y", "~a.0 + b:0"},
      {"a.(b.0 | c.0)", "a.(c.0 | b.0)"},
      {"a:(b.0 + c.0)", "a:(c.0 + b.0)"},
      {"a.0 | ~a.0", "~a.0 | a.0"},
      {"g:0 + a.0", "a.0 + g:0"},
      {"(a.0 | b.0) + c.0", "c.0 + (a.0 | b.0)"},
      {"a.b.0 | 0", "X"},
      {"[a#1].0 + b.0", "b.0 + [a#1].0"},
      {"[a#1].0 | [~a#1].0", "[~a#1].0 | [a#1].0"},
      {"[g#1]:0 | 0", "[g#1]:0"},
      {"[a#1].b.0 + [c#2]:0", "[c#2]:0 + [a#1].b.0"},
      {"[a#1]:0 | ~a.0", "~a.0 | [a#1]:0"},
      {"a.0 | ~a:0", "a.0 | ~a:0"},
      {"Y | X", "X | Y"},
  };
}

}  // namespace testsupport
