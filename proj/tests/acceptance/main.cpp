#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle/naive_semantics.hpp"
#include "papc/equivalence.hpp"
#include "papc/errors.hpp"
#include "papc/syntax.hpp"
#include "papc/transcript.hpp"
#include "papc_cli.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/properties.hpp"

namespace {

using namespace papc;
using Clock = std::chrono::steady_clock;

const std::string kGolden = PAPC_GOLDEN_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (pass) detail = what;
    pass = false;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::set<std::string> texts(const std::vector<Transition>& steps) {
  std::set<std::string> out;
  for (const auto& s : steps) out.insert(s.to_string());
  return out;
}

bool derives(const std::vector<Transition>& steps, const std::string& label, const Term& target) {
  for (const auto& s : steps)
    if (s.label.to_string() == label && s.target == target) return true;
  return false;
}

// Replaces every subterm equal to a constant's body by the constant.
Term fold(const Term& t, const Definitions& defs) {
  for (const auto& [name, body] : defs)
    if (body == t) return Term::constant(name);
  switch (t.kind()) {
    case TermKind::Sum: return Term::sum(fold(t.left(), defs), fold(t.right(), defs));
    case TermKind::Par: return Term::par(fold(t.left(), defs), fold(t.right(), defs));
    default: return t;
  }
}

void components(const Term& t, std::vector<std::string>& out) {
  if (t.is_par()) {
    components(t.left(), out);
    components(t.right(), out);
  } else {
    out.push_back(format(t));
  }
}

std::vector<std::string> flat(const Term& t, const Definitions& defs) {
  std::vector<std::string> out;
  components(fold(t, defs), out);
  return out;
}

// System steps as computed by the oracle's rule transcription.
std::set<std::string> oracle_system_steps(const Term& t, const Definitions& defs) {
  const oracle::Steps all = oracle::derive(t, defs);
  std::set<std::string> out;
  for (const auto& line : all.h)
    if (line.find(" tau+ ") != std::string::npos) out.insert(line);
  for (const auto& line : all.cp)
    if (line.find(" tau- {} ") != std::string::npos) out.insert(line);
  return out;
}

Outcome golden_replay() {
  Outcome o;
  const Definitions defs = testsupport::cell_definitions();
  const Engine engine(defs);
  const Term s = parse_process("C | A | B");
  const Term s1 = parse_process("[a#1].(C | C) + g:P | [~a#1].(A | A) | B");
  const Term s2 = parse_process("[a#1].(C | C) + [g#2]:P | [~a#1].(A | A) | [~g#2]:0");
  const Term ta = parse_process("(C | C) | (A | A) | ~g:0");
  const Term tb = parse_process("[a#1].(C | C) + g:P | ([~a#1].(A | A) | ~g:0) | P | 0");

  const auto from_s = engine.system_steps(s);
  o.require(derives(from_s, "H 1 tau+", s1), "S does not reach S' by H 1 tau+");
  o.require(texts(from_s) == oracle_system_steps(s, defs), "system steps from S differ from the rule transcription");
  const auto from_s1 = engine.system_steps(s1);
  o.require(derives(from_s1, "H 2 tau+", s2), "S' does not reach S'' by H 2 tau+");
  o.require(texts(from_s1) == oracle_system_steps(s1, defs), "system steps from S' differ from the rule transcription");
  const auto from_s2 = engine.system_steps(s2);
  o.require(from_s2.size() == 2 && derives(from_s2, "CP 1 tau- {}", ta) && derives(from_s2, "CP 2 tau- {}", tb),
            "S'' does not have exactly the two scenario completions");

  // The reference texts in flat notation, with ~g:0 written as B.
  const Term flat_a = parse_process("C|C|A|A|B");
  const Term flat_b = parse_process("[a#1].(C|C)+g:P | [~a#1].(A|A) | B | P | 0");
  o.require(flat(ta, defs) == flat(flat_a, defs), "scenario (a) target differs from the flat reference text");
  o.require(flat(tb, defs) == flat(flat_b, defs), "scenario (b) target differs from the flat reference text");

  for (const char* name : {"scenario_a.transcript", "scenario_b.transcript"}) {
    const Transcript t = parse_transcript(slurp(kGolden + "/" + name));
    const ReplayResult r = replay(Engine(t.definitions), t);
    o.require(r.ok() && r.checked == 12, std::string(name) + ": " + (r.ok() ? "wrong step count" : r.failures.front()));
  }
  return o;
}

Outcome sub_derivations() {
  Outcome o;
  const Engine engine(testsupport::cell_definitions());
  struct Case {
    std::vector<Transition> (Engine::*relation)(const Term&) const;
    const char* from;
    const char* label;
    const char* to;
  };
  const std::vector<Case> cases{
      {&Engine::handshake_steps, "C", "H 1 a+", "[a#1].(C | C) + g:P"},
      {&Engine::handshake_steps, "A", "H 1 ~a+", "[~a#1].(A | A)"},
      {&Engine::handshake_steps, "[a#1].(C | C) + g:P", "H 2 g+", "[a#1].(C | C) + [g#2]:P"},
      {&Engine::preemptive_completions, "[a#1].(C | C)", "CP 1 a- {}", "C | C"},
      {&Engine::preemptive_completions, "[a#1].(C | C) + [g#2]:P", "CP 1 a- {2}", "C | C"},
      {&Engine::interrupt_steps, "[~g#2]:0", "I {2}", "~g:0"},
      {&Engine::conservative_completions, "[g#2]:P", "CC 2 g- {} -> P", "g:P"},
      {&Engine::conservative_completions, "[a#1].(C | C) + [g#2]:P", "CC 2 g- {} -> P", "[a#1].(C | C) + g:P"},
      {&Engine::conservative_completions, "[~g#2]:0", "CC 2 ~g- {} -> 0", "~g:0"},
  };
  for (const auto& c : cases) {
    const auto steps = (engine.*c.relation)(parse_process(c.from));
    o.require(derives(steps, c.label, parse_process(c.to)),
              std::string(c.from) + " does not derive " + c.label + " to " + c.to);
  }
  return o;
}

Outcome non_bisimilarity() {
  Outcome o;
  const Engine engine(parse_definitions("C1 := a.(C1 | C1);\nC2 := a:C2;\n"));
  const Term c1 = parse_process("C1");
  const Term c2 = parse_process("C2");
  const Verdict v = bisimilar(engine, c1, c2, {.max_states = 2000, .max_depth = 2});
  o.require(v.outcome == Verdict::Outcome::NotBisimilar, std::string("verdict ") + to_string(v.outcome));
  if (!o.pass || !v.witness) {
    o.require(v.witness.has_value(), "no witness");
    return o;
  }
  const auto& steps = v.witness->steps;
  std::string problem;
  o.require(verify_witness(engine, c1, c2, *v.witness, &problem), "witness rejected: " + problem);
  o.require(steps.size() <= 2, "witness longer than 2 rounds");
  o.require(steps.size() == 2 && steps[0].attack.relation() == Relation::H && steps[0].response,
            "witness does not open with a matched handshake");
  if (!o.pass) return o;
  // The last attack is a completion the other side can only answer with the
  // other kind of completion.
  const WitnessStep& last = steps.back();
  const Transition& first_response = *steps[0].response;
  const Term& defender = last.attacker == steps[0].attacker ? first_response.target : steps[0].attack.target;
  const Relation attack = last.attack.relation();
  const Relation other = attack == Relation::CP ? Relation::CC : Relation::CP;
  bool defender_has_other = false;
  for (const auto& t : engine.all_steps(defender)) defender_has_other |= t.relation() == other;
  o.require((attack == Relation::CP || attack == Relation::CC) && defender_has_other,
            "final move is not a CP-vs-CC mismatch: " + v.witness->to_string());
  return o;
}

Outcome oracle_equivalence(std::string& info) {
  Outcome o;
  const auto r = testsupport::check_oracle_equivalence(2024, 2000);
  info = std::to_string(r.instances) + " configurations";
  o.require(r.ok() && r.instances >= 500, r.first_failure);
  return o;
}

Outcome invariants(std::string& info) {
  Outcome o;
  using Check = testsupport::CheckResult (*)(std::uint64_t, std::size_t);
  const std::vector<std::pair<const char*, Check>> checks{
      {"finite branching", testsupport::check_finite_branching},
      {"handshake freshness", testsupport::check_handshake_freshness},
      {"H7 coupling", testsupport::check_h7_coupling},
      {"interrupt soundness", testsupport::check_interrupt_soundness},
      {"round trip", testsupport::check_round_trip},
      {"complement involution", testsupport::check_complement_involution},
  };
  std::size_t least = SIZE_MAX;
  for (const auto& [name, check] : checks) {
    const auto r = check(7, 10000);
    least = std::min(least, r.instances);
    o.require(r.ok() && r.instances >= 10000, std::string(name) + ": " +
                                                   std::to_string(r.failures) + " failures in " +
                                                   std::to_string(r.instances) + "; " + r.first_failure);
  }
  info = "6 properties, min " + std::to_string(least) + " instances";
  return o;
}

Outcome congruence(std::string& info) {
  Outcome o;
  const Engine engine(testsupport::probe_definitions());
  std::vector<std::pair<Term, Term>> pairs;
  for (const auto& [l, r] : testsupport::probe_pairs()) pairs.emplace_back(parse_process(l), parse_process(r));
  const ProbeReport report = congruence_probe(engine, pairs, 25, 11, {.max_states = 4000, .max_depth = 8});
  std::size_t verified = 0, contexts = 0, inconclusive = 0;
  for (const auto& c : report.cases) {
    if (c.precondition != Verdict::Outcome::Bisimilar) continue;
    ++verified;
    contexts += c.contexts_checked;
    inconclusive += c.inconclusive;
    o.require(c.contexts_checked >= 25, format(c.left) + " ~ " + format(c.right) + ": too few contexts");
    for (const auto& ce : c.counterexamples)
      o.require(false, "counterexample for " + format(c.left) + " ~ " + format(c.right) + " in " + ce);
  }
  o.require(verified >= 20, "only " + std::to_string(verified) + " verified pairs");
  info = std::to_string(verified) + " pairs, " + std::to_string(contexts) + " contexts, " +
         std::to_string(inconclusive) + " inconclusive";
  return o;
}

Outcome determinism() {
  Outcome o;
  auto export_once = [](std::string& text) {
    std::istringstream in;
    std::ostringstream out, err;
    const int code = cli::run({"lts", kGolden + "/cell_model.papc", "--max-states", "500"}, in, out, err);
    text = out.str();
    return code;
  };
  std::string a, b;
  o.require(export_once(a) == 0 && export_once(b) == 0, "lts export failed");
  o.require(!a.empty() && a == b, "exports differ");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int number;
    const char* name;
    double budget_s;
    std::function<Outcome(std::string&)> run;
  };
  const std::vector<Criterion> criteria{
      {1, "golden scenario replay", 1, [](std::string&) { return golden_replay(); }},
      {2, "sub-derivation replay", 1, [](std::string&) { return sub_derivations(); }},
      {3, "C1/C2 non-bisimilarity", 1, [](std::string&) { return non_bisimilarity(); }},
      {4, "oracle equivalence", 60, oracle_equivalence},
      {5, "invariant suite", 60, invariants},
      {6, "congruence probe", 120, congruence},
      {7, "deterministic lts export", 10, [](std::string&) { return determinism(); }},
  };
  bool all = true;
  for (const auto& c : criteria) {
    std::string info;
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run(info);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    o.require(secs < c.budget_s, "over time budget");
    all = all && o.pass;
    std::printf("%s %d %s (%.3f s%s%s)%s%s\n", o.pass ? "PASS" : "FAIL", c.number, c.name, secs,
                info.empty() ? "" : ", ", info.c_str(), o.pass ? "" : ": ", o.detail.c_str());
  }
  return all ? 0 : 1;
}
