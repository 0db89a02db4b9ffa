#include "naive_bisim.hpp"

#include <deque>
#include <map>
#include <vector>

#include "papc/syntax.hpp"

namespace oracle {

namespace {

// Label text without the CC continuation; the continuation is compared up
// to the relation instead.
std::string key_of(const papc::Label& label) {
  if (const auto* cc = label.get_if<papc::CompleteConservative>())
    return "CC " + std::to_string(cc->id) + " " + cc->action.to_string() + " " + papc::format_ids(cc->demanded);
  return label.to_string();
}

using Rel = std::vector<std::vector<bool>>;

bool transfers(const Space& s, const Rel& r, std::size_t x, std::size_t y) {
  for (const auto& m : s.moves[x]) {
    bool answered = false;
    for (const auto& n : s.moves[y]) {
      if (n.key != m.key || !r[m.target][n.target]) continue;
      if (m.continuation >= 0 && !r[std::size_t(m.continuation)][std::size_t(n.continuation)]) continue;
      answered = true;
      break;
    }
    if (!answered) return false;
  }
  return true;
}

bool is_bisimulation(const Space& s, const Rel& r) {
  for (std::size_t x = 0; x < s.states.size(); ++x)
    for (std::size_t y = 0; y < s.states.size(); ++y)
      if (r[x][y] && (!transfers(s, r, x, y) || !transfers(s, r, y, x))) return false;
  return true;
}

}  // namespace

std::optional<Space> explore(const papc::Engine& engine, const papc::Term& p, const papc::Term& q, std::size_t limit) {
  Space s;
  std::map<std::string, std::size_t> index;
  std::deque<std::size_t> todo;
  auto intern = [&](const papc::Term& t) {
    const std::string text = papc::format(t);
    auto [it, added] = index.emplace(text, s.states.size());
    if (added) {
      s.states.push_back(t);
      todo.push_back(it->second);
    }
    return it->second;
  };
  intern(p);
  intern(q);
  s.moves.resize(2);
  while (!todo.empty()) {
    if (s.states.size() > limit) return std::nullopt;
    const std::size_t x = todo.front();
    todo.pop_front();
    std::vector<Space::Move> moves;
    for (const auto& t : engine.all_steps(s.states[x])) {
      long k = -1;
      if (const auto* cc = t.label.get_if<papc::CompleteConservative>()) k = long(intern(cc->continuation));
      moves.push_back({key_of(t.label), intern(t.target), k});
    }
    s.moves.resize(s.states.size());
    s.moves[x] = std::move(moves);
  }
  if (s.states.size() > limit) return std::nullopt;
  return s;
}

std::optional<bool> bisimilar_by_enumeration(const papc::Engine& engine, const papc::Term& p, const papc::Term& q) {
  auto s = explore(engine, p, q, 5);
  if (!s) return std::nullopt;
  const std::size_t n = s->states.size();
  const std::size_t pi = 0;
  const std::size_t qi = papc::format(p) == papc::format(q) ? 0 : 1;
  // Unordered pairs (x <= y); each subset is a symmetric relation.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x; y < n; ++y) pairs.emplace_back(x, y);
  for (unsigned long mask = 0; mask < (1ul << pairs.size()); ++mask) {
    Rel r(n, std::vector<bool>(n, false));
    for (std::size_t k = 0; k < pairs.size(); ++k)
      if (mask & (1ul << k)) r[pairs[k].first][pairs[k].second] = r[pairs[k].second][pairs[k].first] = true;
    if (!r[pi][qi]) continue;
    if (is_bisimulation(*s, r)) return true;
  }
  return false;
}

std::optional<bool> bisimilar_by_deletion(const papc::Engine& engine, const papc::Term& p, const papc::Term& q) {
  auto s = explore(engine, p, q, 50);
  if (!s) return std::nullopt;
  const std::size_t n = s->states.size();
  Rel r(n, std::vector<bool>(n, true));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (r[x][y] && (!transfers(*s, r, x, y) || !transfers(*s, r, y, x))) {
          r[x][y] = r[y][x] = false;
          changed = true;
        }
  }
  const std::size_t qi = papc::format(p) == papc::format(q) ? 0 : 1;
  return bool(r[0][qi]);
}

}  // namespace oracle
