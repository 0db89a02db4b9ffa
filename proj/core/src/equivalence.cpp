#include "papc/equivalence.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

#include "papc/errors.hpp"
#include "papc/syntax.hpp"

namespace papc {

const char* to_string(Verdict::Outcome outcome) noexcept {
  switch (outcome) {
    case Verdict::Outcome::Bisimilar: return "Bisimilar";
    case Verdict::Outcome::NotBisimilar: return "NotBisimilar";
    case Verdict::Outcome::Unknown: return "Unknown";
  }
  return "?";
}

std::string match_key(const Label& label) {
  if (const auto* cc = label.get_if<CompleteConservative>())
    return "CC " + std::to_string(cc->id) + " " + cc->action.to_string() + "- " + format_ids(cc->demanded);
  return label.to_string();
}

std::string Witness::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const auto& s = steps[i];
    const char* who = s.attacker == Side::Left ? "left" : "right";
    const char* other = s.attacker == Side::Left ? "right" : "left";
    out << i + 1 << ". " << who << " " << format(s.attack.source) << " --" << s.attack.label.to_string() << "--> "
        << format(s.attack.target) << "\n";
    if (s.response) {
      out << "   " << other << " " << format(s.response->source) << " --" << s.response->label.to_string()
          << "--> " << format(s.response->target) << "\n";
      if (s.into_continuation) out << "   continue with the two continuations\n";
    } else {
      out << "   " << other << " has no transition matching '" << match_key(s.attack.label) << "'\n";
    }
  }
  return out.str();
}

namespace {

struct BudgetExceeded {};

struct PairHash {
  std::size_t operator()(const std::pair<Term, Term>& p) const noexcept {
    return p.first.hash() * 31 + p.second.hash();
  }
};

/// all_steps with memoization and a cap on distinct configurations.
class StepCache {
 public:
  StepCache(const Engine& engine, std::size_t budget) : engine_(engine), budget_(budget) {}

  const std::vector<Transition>& steps(const Term& t) {
    auto it = cache_.find(t);
    if (it != cache_.end()) return it->second;
    if (cache_.size() >= budget_) throw BudgetExceeded{};
    return cache_.emplace(t, engine_.all_steps(t)).first->second;
  }

  std::size_t size() const noexcept { return cache_.size(); }

 private:
  const Engine& engine_;
  std::size_t budget_;
  std::unordered_map<Term, std::vector<Transition>, TermHash> cache_;
};

const Term* continuation_of(const Transition& t) {
  if (const auto* cc = t.label.get_if<CompleteConservative>()) return &cc->continuation;
  return nullptr;
}

// Level at which two configurations are told apart, or nullopt when they are
// not distinguished within `horizon` rounds.
using LevelFn = std::function<std::optional<std::size_t>(const Term&, const Term&, std::size_t horizon)>;
using StepsFn = std::function<const std::vector<Transition>&(const Term&)>;

Witness build_witness(const Term& p, const Term& q, std::size_t level, const LevelFn& level_of,
                      const StepsFn& steps_of) {
  Witness witness;
  Term left = p;
  Term right = q;
  std::size_t k = level;
  auto matches_below = [&](const Transition& a, const Transition& b, std::size_t horizon) {
    if (level_of(a.target, b.target, horizon)) return false;
    const Term* ca = continuation_of(a);
    const Term* cb = continuation_of(b);
    if (ca && cb && level_of(*ca, *cb, horizon)) return false;
    return true;
  };
  while (true) {
    bool advanced = false;
    for (Side side : {Side::Left, Side::Right}) {
      const Term& x = side == Side::Left ? left : right;
      const Term& y = side == Side::Left ? right : left;
      const auto& defender_moves = steps_of(y);
      for (const auto& attack : steps_of(x)) {
        const std::string key = match_key(attack.label);
        std::vector<const Transition*> candidates;
        for (const auto& d : defender_moves)
          if (match_key(d.label) == key) candidates.push_back(&d);
        bool answered = false;
        for (const auto* d : candidates)
          if (matches_below(attack, *d, k - 1)) {
            answered = true;
            break;
          }
        if (answered) continue;

        if (candidates.empty()) {
          witness.steps.push_back({side, attack, std::nullopt, false});
          return witness;
        }
        // Defender's best answer: the one that survives longest.
        const Transition* best = nullptr;
        std::size_t best_level = 0;
        bool best_into_cont = false;
        for (const auto* d : candidates) {
          auto lt = level_of(attack.target, d->target, k - 1);
          std::optional<std::size_t> lc;
          if (const Term* ca = continuation_of(attack)) lc = level_of(*ca, *continuation_of(*d), k - 1);
          const bool into_cont = !lt || (lc && *lc < *lt);
          const std::size_t lvl = into_cont ? *lc : *lt;
          if (!best || lvl > best_level) {
            best = d;
            best_level = lvl;
            best_into_cont = into_cont;
          }
        }
        witness.steps.push_back({side, attack, *best, best_into_cont});
        Term next_x = best_into_cont ? *continuation_of(attack) : attack.target;
        Term next_y = best_into_cont ? *continuation_of(*best) : best->target;
        left = side == Side::Left ? next_x : next_y;
        right = side == Side::Left ? next_y : next_x;
        k = best_level;
        advanced = true;
        break;
      }
      if (advanced) break;
    }
    if (!advanced) throw Error("internal error: no distinguishing move found");
  }
}

// Joint state space with continuation states, refined to a fixpoint.
class Refinement {
 public:
  Refinement(StepCache& cache, std::size_t limit) : cache_(cache), limit_(limit) {}

  /// False when the space does not fit within the limit.
  bool explore(const std::vector<Term>& roots) {
    for (const auto& r : roots) add(r);
    for (std::size_t i = 0; i < states_.size(); ++i) {
      const auto& out = cache_.steps(states_[i]);
      for (const auto& t : out) {
        add(t.target);
        if (const Term* c = continuation_of(t)) add(*c);
        if (states_.size() > limit_) return false;
      }
    }
    return true;
  }

  void refine() {
    const std::size_t n = states_.size();
    std::unordered_map<std::string, std::size_t> keys;
    struct Move {
      std::size_t key, target, cont;
    };
    std::vector<std::vector<Move>> moves(n);
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& t : cache_.steps(states_[i])) {
        auto [it, _] = keys.emplace(match_key(t.label), keys.size());
        const Term* c = continuation_of(t);
        moves[i].push_back({it->second, index_.at(t.target), c ? index_.at(*c) : kNone});
      }

    history_.assign(1, std::vector<std::size_t>(n, 0));
    std::size_t blocks = 1;
    while (true) {
      const auto& current = history_.back();
      std::map<std::pair<std::size_t, std::vector<std::array<std::size_t, 3>>>, std::size_t> ids;
      std::vector<std::size_t> next(n);
      for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::array<std::size_t, 3>> sig;
        sig.reserve(moves[i].size());
        for (const auto& m : moves[i])
          sig.push_back({m.key, current[m.target], m.cont == kNone ? kNone : current[m.cont]});
        std::sort(sig.begin(), sig.end());
        sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
        auto [it, _] = ids.emplace(std::make_pair(current[i], std::move(sig)), ids.size());
        next[i] = it->second;
      }
      const std::size_t count = ids.size();
      history_.push_back(std::move(next));
      if (count == blocks) break;
      blocks = count;
    }
  }

  std::optional<std::size_t> level(const Term& a, const Term& b, std::size_t horizon) const {
    const std::size_t i = index_.at(a);
    const std::size_t j = index_.at(b);
    for (std::size_t r = 1; r < history_.size() && r <= horizon; ++r)
      if (history_[r][i] != history_[r][j]) return r;
    return std::nullopt;
  }

  std::size_t rounds() const noexcept { return history_.size() - 1; }
  std::size_t size() const noexcept { return states_.size(); }

 private:
  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  void add(const Term& t) {
    if (index_.emplace(t, states_.size()).second) states_.push_back(t);
  }

  StepCache& cache_;
  std::size_t limit_;
  std::vector<Term> states_;
  std::unordered_map<Term, std::size_t, TermHash> index_;
  std::vector<std::vector<std::size_t>> history_;
};

// Depth-bounded bisimulation game with memoized approximants.
class Game {
 public:
  explicit Game(StepCache& cache) : cache_(cache) {}

  /// Whether a and b are equivalent up to depth k.
  bool equivalent(const Term& a, const Term& b, std::size_t k) {
    if (k == 0 || a == b) return true;
    auto& slot = memo_[{a, b}];
    if (slot.equivalent_upto >= k) return true;
    if (slot.distinguished_at && *slot.distinguished_at <= k) return false;
    const bool result = one_way(a, b, k) && one_way(b, a, k);
    if (result)
      slot.equivalent_upto = std::max(slot.equivalent_upto, k);
    else if (!slot.distinguished_at || *slot.distinguished_at > k)
      slot.distinguished_at = k;
    return result;
  }

  std::optional<std::size_t> level(const Term& a, const Term& b, std::size_t horizon) {
    for (std::size_t k = 1; k <= horizon; ++k)
      if (!equivalent(a, b, k)) return k;
    return std::nullopt;
  }

 private:
  struct Memo {
    std::size_t equivalent_upto = 0;
    std::optional<std::size_t> distinguished_at;
  };

  bool one_way(const Term& a, const Term& b, std::size_t k) {
    // References into the cache stay valid: unordered_map nodes are stable.
    const auto& moves_a = cache_.steps(a);
    const auto& moves_b = cache_.steps(b);
    for (const auto& m : moves_a) {
      const std::string key = match_key(m.label);
      bool matched = false;
      for (const auto& n : moves_b) {
        if (match_key(n.label) != key) continue;
        if (!equivalent(m.target, n.target, k - 1)) continue;
        const Term* cm = continuation_of(m);
        if (cm && !equivalent(*cm, *continuation_of(n), k - 1)) continue;
        matched = true;
        break;
      }
      if (!matched) return false;
    }
    return true;
  }

  StepCache& cache_;
  std::unordered_map<std::pair<Term, Term>, Memo, PairHash> memo_;
};

}  // namespace

Verdict bisimilar(const Engine& engine, const Term& p, const Term& q, const Bounds& bounds) {
  Verdict verdict;
  if (p == q) {
    verdict.outcome = Verdict::Outcome::Bisimilar;
    verdict.method = "identical";
    return verdict;
  }

  {
    StepCache cache(engine, static_cast<std::size_t>(-1));
    Refinement refinement(cache, bounds.max_states);
    bool fits = false;
    try {
      fits = refinement.explore({p, q});
    } catch (const BudgetExceeded&) {
    }
    if (fits) {
      refinement.refine();
      verdict.method = "partition-refinement";
      verdict.explored = refinement.size();
      verdict.depth = refinement.rounds();
      const auto lvl = refinement.level(p, q, refinement.rounds());
      if (!lvl) {
        verdict.outcome = Verdict::Outcome::Bisimilar;
        return verdict;
      }
      verdict.outcome = Verdict::Outcome::NotBisimilar;
      verdict.witness = build_witness(
          p, q, *lvl, [&](const Term& a, const Term& b, std::size_t h) { return refinement.level(a, b, h); },
          [&](const Term& t) -> const std::vector<Transition>& { return cache.steps(t); });
      return verdict;
    }
  }

  verdict.method = "bounded-game";
  StepCache cache(engine, bounds.max_states);
  Game game(cache);
  try {
    for (std::size_t k = 1; k <= bounds.max_depth; ++k) {
      verdict.depth = k;
      if (!game.equivalent(p, q, k)) {
        verdict.outcome = Verdict::Outcome::NotBisimilar;
        verdict.witness = build_witness(
            p, q, k, [&](const Term& a, const Term& b, std::size_t h) { return game.level(a, b, h); },
            [&](const Term& t) -> const std::vector<Transition>& { return cache.steps(t); });
        verdict.explored = cache.size();
        return verdict;
      }
    }
  } catch (const BudgetExceeded&) {
  }
  verdict.outcome = Verdict::Outcome::Unknown;
  verdict.explored = cache.size();
  return verdict;
}

bool verify_witness(const Engine& engine, const Term& p, const Term& q, const Witness& witness,
                    std::string* problem) {
  auto fail = [&](const std::string& why) {
    if (problem) *problem = why;
    return false;
  };
  auto contains = [](const std::vector<Transition>& ts, const Transition& t) {
    return std::any_of(ts.begin(), ts.end(),
                       [&](const Transition& u) { return u.label == t.label && u.target == t.target; });
  };
  if (witness.steps.empty()) return fail("empty witness");

  Term left = p;
  Term right = q;
  for (std::size_t i = 0; i < witness.steps.size(); ++i) {
    const auto& step = witness.steps[i];
    const Term& x = step.attacker == Side::Left ? left : right;
    const Term& y = step.attacker == Side::Left ? right : left;
    const std::string where = "step " + std::to_string(i + 1) + ": ";
    if (!(step.attack.source == x)) return fail(where + "attack does not start at the current configuration");
    if (!contains(engine.all_steps(x), step.attack)) return fail(where + "attack is not derivable");
    const auto defender = engine.all_steps(y);
    const std::string key = match_key(step.attack.label);
    if (!step.response) {
      if (i + 1 != witness.steps.size()) return fail(where + "unanswered attack before the last step");
      for (const auto& d : defender)
        if (match_key(d.label) == key) return fail(where + "defender can answer with " + d.to_string());
      return true;
    }
    const auto& response = *step.response;
    if (!(response.source == y)) return fail(where + "response does not start at the current configuration");
    if (!contains(defender, response)) return fail(where + "response is not derivable");
    if (match_key(response.label) != key) return fail(where + "response label does not match");
    Term next_x = step.attack.target;
    Term next_y = response.target;
    if (step.into_continuation) {
      const Term* ca = continuation_of(step.attack);
      const Term* cb = continuation_of(response);
      if (!ca || !cb) return fail(where + "continuation challenge on a non-CC move");
      next_x = *ca;
      next_y = *cb;
    }
    left = step.attacker == Side::Left ? next_x : next_y;
    right = step.attacker == Side::Left ? next_y : next_x;
  }
  return fail("witness ends with an answered move");
}

std::size_t ProbeReport::counterexample_count() const noexcept {
  std::size_t n = 0;
  for (const auto& c : cases) n += c.counterexamples.size();
  return n;
}

std::size_t ProbeReport::rejected_count() const noexcept {
  std::size_t n = 0;
  for (const auto& c : cases)
    if (c.precondition != Verdict::Outcome::Bisimilar) ++n;
  return n;
}

namespace {

void reachable_channels(const Term& t, const Definitions& defs, std::set<std::string>& seen_constants,
                        std::set<std::string>& channels) {
  switch (t.kind()) {
    case TermKind::Prefix:
      channels.insert(t.action().channel());
      reachable_channels(t.continuation(), defs, seen_constants, channels);
      break;
    case TermKind::Sum:
    case TermKind::Par:
      reachable_channels(t.left(), defs, seen_constants, channels);
      reachable_channels(t.right(), defs, seen_constants, channels);
      break;
    case TermKind::Const:
      if (const Term* body = defs.find(t.name()); body && seen_constants.insert(t.name()).second)
        reachable_channels(*body, defs, seen_constants, channels);
      break;
    case TermKind::Nil:
      break;
  }
}

}  // namespace

ProbeReport congruence_probe(const Engine& engine, const std::vector<std::pair<Term, Term>>& pairs,
                             std::size_t n_contexts, std::uint64_t seed, const Bounds& bounds) {
  ProbeReport report;
  std::mt19937_64 rng(seed);
  for (const auto& [p, q] : pairs) {
    ProbeCase c;
    c.left = p;
    c.right = q;
    c.precondition = bisimilar(engine, p, q, bounds).outcome;
    if (c.precondition != Verdict::Outcome::Bisimilar) {
      report.cases.push_back(std::move(c));
      continue;
    }
    std::set<std::string> constants;
    std::set<std::string> channels;
    reachable_channels(p, engine.definitions(), constants, channels);
    reachable_channels(q, engine.definitions(), constants, channels);
    ContextShape shape;
    shape.allow_prefix_above_hole = p.is_pure() && q.is_pure();
    for (std::size_t i = 0; i < n_contexts; ++i) {
      const Context ctx = random_context(rng, channels, shape);
      const Verdict v = bisimilar(engine, apply_context(ctx, p), apply_context(ctx, q), bounds);
      ++c.contexts_checked;
      if (v.outcome == Verdict::Outcome::NotBisimilar)
        c.counterexamples.push_back(ctx.to_string());
      else if (v.outcome == Verdict::Outcome::Unknown)
        ++c.inconclusive;
    }
    report.cases.push_back(std::move(c));
  }
  return report;
}

}  // namespace papc
