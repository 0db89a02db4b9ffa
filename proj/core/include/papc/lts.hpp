#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "papc/semantics.hpp"

namespace papc {

enum class StepMode { All, System };

struct Bounds {
  std::size_t max_states = 10000;
  std::size_t max_depth = 64;
  StepMode mode = StepMode::All;
};

struct Edge {
  std::size_t source;
  Label label;
  std::size_t target;

  Relation relation() const noexcept { return label.relation(); }
};

/// Explored portion of the transition system rooted at state 0.
struct Lts {
  std::vector<Term> states;
  std::vector<std::size_t> depth;  // BFS depth of each state
  std::vector<Edge> edges;
  /// States that have transitions which were not explored.
  std::set<std::size_t> truncated;
  StepMode mode = StepMode::All;
};

/// Breadth-first exploration with structural deduplication.
///
/// States are expanded in discovery order. Exploration stops at the first
/// state lying at max_depth or whose successors would push the state count
/// past max_states; that state and every later one with outgoing transitions
/// is recorded as truncated. Expanded states are therefore a prefix of the
/// discovery order, which makes larger bounds only ever add states and edges.
Lts build(const Engine& engine, const Term& root, const Bounds& bounds);

struct LtsStats {
  std::size_t states = 0;
  std::size_t edges = 0;
  std::map<Relation, std::size_t> edges_per_relation;
  std::size_t truncated = 0;
};

LtsStats stats(const Lts& lts);

enum class ExportFormat { Aut, Json };

/// AUT: `des (0, <edges>, <states>)` then `(<src>,"<label>",<dst>)` per edge.
/// Json: states with their configuration text, edges and truncation marks.
std::string export_lts(const Lts& lts, ExportFormat format);

}  // namespace papc
