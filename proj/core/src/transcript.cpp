#include "papc/transcript.hpp"

#include <sstream>

#include "papc/errors.hpp"
#include "papc/syntax.hpp"

namespace papc {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

constexpr std::string_view kArrow = " => ";

}  // namespace

Transcript parse_transcript(std::string_view text) {
  Transcript transcript;
  std::string defs_text;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line_no = 0;
  std::vector<std::pair<std::size_t, std::string>> step_lines;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = trim(raw);
    if (line.empty() || line.front() == '#') continue;
    if (line.starts_with("def ")) {
      defs_text += std::string(line.substr(4)) + "\n";
    } else if (line.starts_with("step ")) {
      step_lines.emplace_back(line_no, std::string(line.substr(5)));
    } else {
      throw SyntaxError("expected 'def', 'step' or a comment", line_no, 1);
    }
  }
  transcript.definitions = parse_definitions(defs_text);
  for (const auto& [no, body] : step_lines) {
    std::string_view rest = body;
    const auto a = rest.find(kArrow);
    const auto b = a == std::string_view::npos ? a : rest.find(kArrow, a + kArrow.size());
    if (b == std::string_view::npos) throw SyntaxError("step needs '<from> => <label> => <to>'", no, 1);
    TranscriptStep step{parse_process(trim(rest.substr(0, a))),
                        std::string(trim(rest.substr(a + kArrow.size(), b - a - kArrow.size()))),
                        parse_process(trim(rest.substr(b + kArrow.size())))};
    transcript.steps.push_back(std::move(step));
  }
  return transcript;
}

std::string format_transcript(const Transcript& transcript) {
  std::ostringstream out;
  for (const auto& [name, body] : transcript.definitions) out << "def " << name << " := " << format(body) << ";\n";
  for (const auto& s : transcript.steps)
    out << "step " << format(s.from) << kArrow << s.label << kArrow << format(s.to) << "\n";
  return out.str();
}

ReplayResult replay(const Engine& engine, const Transcript& transcript) {
  ReplayResult result;
  for (std::size_t i = 0; i < transcript.steps.size(); ++i) {
    const auto& s = transcript.steps[i];
    ++result.checked;
    bool label_seen = false;
    bool found = false;
    for (const auto& t : engine.all_steps(s.from)) {
      if (t.label.to_string() != s.label) continue;
      label_seen = true;
      if (t.target == s.to) {
        found = true;
        break;
      }
    }
    if (!found) {
      std::string why = label_seen ? "no transition labelled '" + s.label + "' reaches " + format(s.to)
                                   : "label '" + s.label + "' is not derivable from " + format(s.from);
      result.failures.push_back("step " + std::to_string(i + 1) + ": " + why);
    }
  }
  return result;
}

}  // namespace papc
