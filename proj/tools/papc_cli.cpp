#include "papc_cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "papc/equivalence.hpp"
#include "papc/errors.hpp"
#include "papc/lts.hpp"
#include "papc/syntax.hpp"
#include "papc/transcript.hpp"

namespace papc::cli {

namespace {

// Carries an exit code out of a subcommand.
struct Exit {
  int code;
};

std::string read_file(const std::string& path, std::ostream& err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    err << "error: cannot read '" << path << "'\n";
    throw Exit{kUsage};
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& data, std::ostream& out, std::ostream& err) {
  if (path.empty() || path == "-") {
    out << data;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << data)) {
    err << "error: cannot write '" << path << "'\n";
    throw Exit{kUsage};
  }
}

void print_report(const ValidationReport& report, std::ostream& os) {
  for (const auto& issue : report.issues)
    os << (issue.severity == ValidationIssue::Severity::Error ? "error: " : "warning: ") << issue.message() << "\n";
}

struct LoadedModel {
  ModelFile model;
  ValidationReport report;
};

LoadedModel load_model(const std::string& path, std::ostream& err) {
  const std::string text = read_file(path, err);
  LoadedModel loaded;
  try {
    loaded.model = parse_model(text);
  } catch (const Error& e) {
    err << "error: " << path << ":" << e.what() << "\n";
    throw Exit{kNegative};
  }
  std::vector<Term> roots;
  if (loaded.model.root) roots.push_back(*loaded.model.root);
  loaded.report = validate(loaded.model.definitions, roots);
  return loaded;
}

// Loads the model for commands that explore it; errors abort, warnings go to
// standard error.
LoadedModel load_checked(const std::string& path, std::ostream& err) {
  LoadedModel loaded = load_model(path, err);
  if (loaded.report.has_errors()) {
    print_report(loaded.report, err);
    throw Exit{kNegative};
  }
  return loaded;
}

Term parse_argument(const std::string& text, const char* what, std::ostream& err) {
  try {
    return parse_process(text);
  } catch (const Error& e) {
    err << "error: " << what << ": " << e.what() << "\n";
    throw Exit{kNegative};
  }
}

Term pick_root(const LoadedModel& loaded, const std::string& from, std::ostream& err) {
  if (!from.empty()) return parse_argument(from, "--from", err);
  if (!loaded.model.root) {
    err << "error: NoRoot: the model has no 'system := ...;' entry and no --from was given\n";
    throw Exit{kNegative};
  }
  return *loaded.model.root;
}

StepMode parse_mode(const std::string& mode) { return mode == "system" ? StepMode::System : StepMode::All; }

int cmd_check(const std::string& path, std::ostream& out, std::ostream& err) {
  LoadedModel loaded = load_model(path, err);
  if (!loaded.model.root) {
    err << "error: NoRoot: the model has no 'system := ...;' entry\n";
    return kNegative;
  }
  print_report(loaded.report, out);
  out << loaded.model.definitions.size() << " definition(s), root " << format(*loaded.model.root) << "\n";
  if (loaded.report.has_errors()) return kNegative;
  out << "ok\n";
  return kSuccess;
}

int cmd_steps(const std::string& path, const std::string& from, const std::string& mode, std::ostream& out,
              std::ostream& err) {
  LoadedModel loaded = load_checked(path, err);
  const Term root = pick_root(loaded, from, err);
  Engine engine(loaded.model.definitions);
  const auto steps = parse_mode(mode) == StepMode::All ? engine.all_steps(root) : engine.system_steps(root);
  for (const auto& t : steps) out << t.to_string() << "\n";
  return kSuccess;
}

int cmd_lts(const std::string& path, const std::string& from, const Bounds& bounds, const std::string& fmt,
            const std::string& out_path, std::ostream& out, std::ostream& err) {
  LoadedModel loaded = load_checked(path, err);
  const Term root = pick_root(loaded, from, err);
  Engine engine(loaded.model.definitions);
  const Lts lts = build(engine, root, bounds);
  write_output(out_path, export_lts(lts, fmt == "json" ? ExportFormat::Json : ExportFormat::Aut), out, err);
  const LtsStats s = stats(lts);
  err << s.states << " states, " << s.edges << " edges, " << s.truncated << " truncated\n";
  return kSuccess;
}

int cmd_bisim(const std::string& path, const std::string& left, const std::string& right, const Bounds& bounds,
              std::ostream& out, std::ostream& err) {
  LoadedModel loaded = load_checked(path, err);
  const Term p = parse_argument(left, "first process", err);
  const Term q = parse_argument(right, "second process", err);
  Engine engine(loaded.model.definitions);
  const Verdict v = bisimilar(engine, p, q, bounds);
  out << to_string(v.outcome) << " (" << v.method << ", " << v.explored << " configurations, depth " << v.depth
      << ")\n";
  if (v.witness) out << v.witness->to_string();
  switch (v.outcome) {
    case Verdict::Outcome::Bisimilar: return kSuccess;
    case Verdict::Outcome::NotBisimilar: return kNegative;
    case Verdict::Outcome::Unknown: return kBoundsReached;
  }
  return kNegative;
}

int cmd_replay(const std::string& path, std::ostream& out, std::ostream& err) {
  const std::string text = read_file(path, err);
  Transcript transcript;
  try {
    transcript = parse_transcript(text);
  } catch (const Error& e) {
    err << "error: " << path << ":" << e.what() << "\n";
    return kNegative;
  }
  Engine engine(transcript.definitions);
  const ReplayResult result = replay(engine, transcript);
  for (const auto& f : result.failures) out << "FAIL " << f << "\n";
  out << result.checked - result.failures.size() << "/" << result.checked << " steps replayed\n";
  return result.ok() ? kSuccess : kNegative;
}

int cmd_repl(const std::string& path, const std::string& transcript_path, bool system_only, std::istream& in,
             std::ostream& out, std::ostream& err) {
  LoadedModel loaded = load_checked(path, err);
  const Term root = pick_root(loaded, "", err);
  Engine engine(loaded.model.definitions);
  Transcript transcript;
  transcript.definitions = loaded.model.definitions;

  auto save = [&] {
    if (!transcript_path.empty()) write_output(transcript_path, format_transcript(transcript), out, err);
  };

  std::vector<Term> history{root};
  while (true) {
    const Term& current = history.back();
    const auto steps = system_only ? engine.system_steps(current) : engine.all_steps(current);
    out << "\nstate: " << format(current) << "\n";
    for (std::size_t i = 0; i < steps.size(); ++i) out << "  [" << i << "] " << steps[i].to_string() << "\n";
    out << "(index to step, u undo, s toggle system filter, q quit)> " << std::flush;

    std::string line;
    if (!std::getline(in, line)) break;
    std::istringstream words(line);
    std::string cmd;
    words >> cmd;
    if (cmd.empty()) continue;
    if (cmd == "q") break;
    if (cmd == "u") {
      if (history.size() > 1) {
        history.pop_back();
        transcript.steps.pop_back();
        save();
      } else {
        out << "nothing to undo\n";
      }
      continue;
    }
    if (cmd == "s") {
      system_only = !system_only;
      continue;
    }
    std::size_t choice = 0;
    try {
      std::size_t used = 0;
      choice = std::stoul(cmd, &used);
      if (used != cmd.size()) throw std::invalid_argument(cmd);
    } catch (const std::exception&) {
      out << "invalid choice '" << cmd << "'\n";
      continue;
    }
    if (choice >= steps.size()) {
      out << "invalid choice '" << cmd << "'\n";
      continue;
    }
    transcript.steps.push_back({current, steps[choice].label.to_string(), steps[choice].target});
    history.push_back(steps[choice].target);
    save();
  }
  save();
  out << "\n";
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Derivations, transition systems and bisimulation for preemptive/conservative process terms", "papc"};
  app.require_subcommand(1);

  std::string model;
  std::string from;
  std::string mode = "all";
  std::string fmt = "aut";
  std::string out_path;
  std::string transcript_path = "repl.transcript";
  std::string left;
  std::string right;
  std::string golden;
  bool system_only = false;
  Bounds bounds;

  auto* check = app.add_subcommand("check", "Parse and validate a model file");
  check->add_option("model", model, "Model file (.papc)")->required();

  auto* steps = app.add_subcommand("steps", "List the one-step transitions of a configuration");
  steps->add_option("model", model, "Model file (.papc)")->required();
  steps->add_option("--from", from, "Configuration text (default: the model's system entry)");
  steps->add_option("--mode", mode, "all or system")->check(CLI::IsMember({"all", "system"}));

  auto* lts = app.add_subcommand("lts", "Build and export a bounded transition system");
  lts->add_option("model", model, "Model file (.papc)")->required();
  lts->add_option("--from", from, "Root configuration (default: the model's system entry)");
  lts->add_option("--mode", mode, "all or system")->check(CLI::IsMember({"all", "system"}));
  lts->add_option("--max-states", bounds.max_states, "State bound")->check(CLI::PositiveNumber);
  lts->add_option("--max-depth", bounds.max_depth, "Depth bound")->check(CLI::PositiveNumber);
  lts->add_option("--format", fmt, "aut or json")->check(CLI::IsMember({"aut", "json"}));
  lts->add_option("--out", out_path, "Output file (default: standard output)");

  auto* repl = app.add_subcommand("repl", "Step through the model interactively");
  repl->add_option("model", model, "Model file (.papc)")->required();
  repl->add_option("--transcript", transcript_path, "Where to write the session transcript");
  repl->add_flag("--system", system_only, "Start with the system-step filter on");

  auto* bisim = app.add_subcommand("bisim", "Check two configurations for bisimilarity");
  bisim->add_option("model", model, "Model file (.papc)")->required();
  bisim->add_option("left", left, "First configuration")->required();
  bisim->add_option("right", right, "Second configuration")->required();
  bisim->add_option("--max-states", bounds.max_states, "State bound")->check(CLI::PositiveNumber);
  bisim->add_option("--max-depth", bounds.max_depth, "Game depth bound")->check(CLI::PositiveNumber);

  auto* replay_cmd = app.add_subcommand("replay", "Replay a golden transcript");
  replay_cmd->add_option("golden", golden, "Transcript file")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  if (bisim->parsed()) {
    bounds.max_states = bisim->count("--max-states") ? bounds.max_states : 2000;
    bounds.max_depth = bisim->count("--max-depth") ? bounds.max_depth : 8;
  }
  bounds.mode = parse_mode(mode);

  try {
    if (check->parsed()) return cmd_check(model, out, err);
    if (steps->parsed()) return cmd_steps(model, from, mode, out, err);
    if (lts->parsed()) return cmd_lts(model, from, bounds, fmt, out_path, out, err);
    if (repl->parsed()) return cmd_repl(model, transcript_path, system_only, in, out, err);
    if (bisim->parsed()) return cmd_bisim(model, left, right, bounds, out, err);
    if (replay_cmd->parsed()) return cmd_replay(golden, out, err);
  } catch (const Exit& e) {
    return e.code;
  } catch (const CapExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kBoundsReached;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kNegative;
  }
  return kUsage;
}

}  // namespace papc::cli
