#include "papc/lts.hpp"

#include <sstream>
#include <unordered_map>

#include "json.hpp"
#include "papc/errors.hpp"
#include "papc/syntax.hpp"

namespace papc {

namespace {

std::vector<Transition> steps(const Engine& engine, const Term& c, StepMode mode) {
  return mode == StepMode::All ? engine.all_steps(c) : engine.system_steps(c);
}

}  // namespace

Lts build(const Engine& engine, const Term& root, const Bounds& bounds) {
  if (bounds.max_states < 1 || bounds.max_depth < 1) throw Error("LTS bounds must be at least 1");

  Lts lts;
  lts.mode = bounds.mode;
  std::unordered_map<Term, std::size_t, TermHash> index;
  lts.states.push_back(root);
  lts.depth.push_back(0);
  index.emplace(root, 0);

  bool stopped = false;
  for (std::size_t i = 0; i < lts.states.size(); ++i) {
    auto out = steps(engine, lts.states[i], bounds.mode);
    if (stopped) {
      if (!out.empty()) lts.truncated.insert(i);
      continue;
    }
    std::size_t fresh = 0;
    {
      std::unordered_map<Term, bool, TermHash> seen;
      for (const auto& t : out)
        if (!index.contains(t.target) && seen.emplace(t.target, true).second) ++fresh;
    }
    if (lts.depth[i] >= bounds.max_depth || lts.states.size() + fresh > bounds.max_states) {
      stopped = true;
      if (!out.empty()) lts.truncated.insert(i);
      continue;
    }
    for (auto& t : out) {
      auto [it, inserted] = index.emplace(t.target, lts.states.size());
      if (inserted) {
        lts.states.push_back(t.target);
        lts.depth.push_back(lts.depth[i] + 1);
      }
      lts.edges.push_back({i, std::move(t.label), it->second});
    }
  }
  return lts;
}

LtsStats stats(const Lts& lts) {
  LtsStats s;
  s.states = lts.states.size();
  s.edges = lts.edges.size();
  for (Relation r : {Relation::H, Relation::I, Relation::CP, Relation::CC}) s.edges_per_relation[r] = 0;
  for (const auto& e : lts.edges) ++s.edges_per_relation[e.relation()];
  s.truncated = lts.truncated.size();
  return s;
}

std::string export_lts(const Lts& lts, ExportFormat format) {
  if (format == ExportFormat::Aut) {
    std::ostringstream out;
    out << "des (0, " << lts.edges.size() << ", " << lts.states.size() << ")\n";
    for (const auto& e : lts.edges) out << '(' << e.source << ",\"" << e.label.to_string() << "\"," << e.target << ")\n";
    return out.str();
  }

  nlohmann::ordered_json doc;
  doc["mode"] = lts.mode == StepMode::All ? "all" : "system";
  doc["root"] = 0;
  auto& states = doc["states"] = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < lts.states.size(); ++i) {
    nlohmann::ordered_json s;
    s["index"] = i;
    s["depth"] = lts.depth[i];
    s["configuration"] = papc::format(lts.states[i]);
    s["truncated"] = lts.truncated.contains(i);
    states.push_back(std::move(s));
  }
  auto& edges = doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : lts.edges) {
    nlohmann::ordered_json j;
    j["source"] = e.source;
    j["relation"] = to_string(e.relation());
    j["label"] = e.label.to_string();
    j["target"] = e.target;
    edges.push_back(std::move(j));
  }
  doc["truncated"] = lts.truncated;
  return doc.dump(2) + "\n";
}

}  // namespace papc
