#include "papc/semantics.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "papc/errors.hpp"
#include "papc/syntax.hpp"

namespace papc {

const char* to_string(Relation r) noexcept {
  switch (r) {
    case Relation::H: return "H";
    case Relation::I: return "I";
    case Relation::CP: return "CP";
    case Relation::CC: return "CC";
  }
  return "?";
}

std::string Label::to_string() const {
  struct Printer {
    std::string operator()(const Handshake& h) const {
      return "H " + std::to_string(h.id) + " " + h.action.to_string() + "+";
    }
    std::string operator()(const Interrupt& i) const { return "I " + format_ids(i.ids); }
    std::string operator()(const CompletePreemptive& c) const {
      return "CP " + std::to_string(c.id) + " " + c.action.to_string() + "- " + format_ids(c.demanded);
    }
    std::string operator()(const CompleteConservative& c) const {
      return "CC " + std::to_string(c.id) + " " + c.action.to_string() + "- " + format_ids(c.demanded) +
             " -> " + format(c.continuation);
    }
  };
  return std::visit(Printer{}, value_);
}

bool operator==(const Label& a, const Label& b) {
  if (a.value_.index() != b.value_.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.value_);
        if constexpr (std::is_same_v<T, Handshake>) {
          return x.id == y.id && x.action == y.action;
        } else if constexpr (std::is_same_v<T, Interrupt>) {
          return x.ids == y.ids;
        } else if constexpr (std::is_same_v<T, CompletePreemptive>) {
          return x.id == y.id && x.action == y.action && x.demanded == y.demanded;
        } else {
          return x.id == y.id && x.action == y.action && x.demanded == y.demanded &&
                 x.continuation == y.continuation;
        }
      },
      a.value_);
}

std::strong_ordering operator<=>(const Label& a, const Label& b) {
  if (auto c = a.value_.index() <=> b.value_.index(); c != 0) return c;
  return std::visit(
      [&](const auto& x) -> std::strong_ordering {
        using T = std::decay_t<decltype(x)>;
        const T& y = std::get<T>(b.value_);
        if constexpr (std::is_same_v<T, Handshake>) {
          return std::tie(x.id, x.action) <=> std::tie(y.id, y.action);
        } else if constexpr (std::is_same_v<T, Interrupt>) {
          return x.ids <=> y.ids;
        } else if constexpr (std::is_same_v<T, CompletePreemptive>) {
          return std::tie(x.id, x.action, x.demanded) <=> std::tie(y.id, y.action, y.demanded);
        } else {
          if (auto c = std::tie(x.id, x.action, x.demanded) <=> std::tie(y.id, y.action, y.demanded); c != 0)
            return c;
          if (x.continuation == y.continuation) return std::strong_ordering::equal;
          return format(x.continuation) <=> format(y.continuation);
        }
      },
      a.value_);
}

std::string Transition::to_string() const { return label.to_string() + " -> " + format(target); }

bool is_system_label(const Label& label) {
  if (const auto* h = label.get_if<Handshake>()) return h->action.is_tau();
  if (const auto* cp = label.get_if<CompletePreemptive>()) return cp->action.is_tau() && cp->demanded.empty();
  return false;
}

void normalize(std::vector<Transition>& transitions) {
  std::vector<std::pair<std::string, std::size_t>> keys;
  keys.reserve(transitions.size());
  for (std::size_t i = 0; i < transitions.size(); ++i) keys.emplace_back(format(transitions[i].target), i);
  std::vector<std::size_t> order(transitions.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (auto c = transitions[x].label <=> transitions[y].label; c != 0) return c < 0;
    return keys[x].first < keys[y].first;
  });
  std::vector<Transition> sorted;
  sorted.reserve(transitions.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    const std::size_t i = order[k];
    if (k > 0) {
      const std::size_t prev = order[k - 1];
      if (transitions[i].label == transitions[prev].label && keys[i].first == keys[prev].first) continue;
    }
    sorted.push_back(std::move(transitions[i]));
  }
  transitions = std::move(sorted);
}

namespace {

struct HMove {
  Id id;
  Action action;
  Term target;
};

struct IMove {
  IdSet ids;
  Term target;
};

struct CPMove {
  Id id;
  Action action;
  IdSet demanded;
  Term target;
};

struct CCMove {
  Id id;
  Action action;
  IdSet demanded;
  Term continuation;
  Term target;
};

IdSet unite(const IdSet& a, const IdSet& b) {
  IdSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

IdSet intersect(const IdSet& a, const IdSet& b) {
  IdSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

IdSet subtract(const IdSet& a, const IdSet& b) {
  IdSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

bool includes(const IdSet& super, const IdSet& sub) {
  return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

bool complementary(const Action& a, const Action& b) {
  return !a.is_tau() && !b.is_tau() && a.channel() == b.channel() && a.complemented() != b.complemented();
}

Term unfrozen(const Term& t) { return Term::prefix(t.mode(), t.action(), t.continuation()); }

// Recursive rule application. Constants are unfolded only for handshakes:
// definition bodies are processes, which have no completions and only the
// empty interruption.
class Deriver {
 public:
  Deriver(const Definitions& defs, const EngineOptions& options) : defs_(defs), options_(options) {}

  std::vector<HMove> handshakes(const Term& t) {
    std::vector<HMove> out;
    switch (t.kind()) {
      case TermKind::Nil:
        break;
      case TermKind::Prefix:
        if (!t.is_frozen())  // H1, H2
          out.push_back({1, t.action(), Term::frozen(t.mode(), t.action(), 1, t.continuation())});
        break;
      case TermKind::Const: {  // R1
        const Term* body = defs_.find(t.name());
        if (!body) break;
        if (std::find(unfolding_.begin(), unfolding_.end(), t.name()) != unfolding_.end())
          throw UnguardedRecursion(t.name());
        unfolding_.push_back(t.name());
        out = handshakes(*body);
        unfolding_.pop_back();
        break;
      }
      case TermKind::Sum:
      case TermKind::Par: {
        const bool is_sum = t.is_sum();
        auto rebuild = [&](Term l, Term r) {
          return is_sum ? Term::sum(std::move(l), std::move(r)) : Term::par(std::move(l), std::move(r));
        };
        const Term& p = t.left();
        const Term& q = t.right();
        const IdSet ids_p = id_set(p);
        const IdSet ids_q = id_set(q);
        const IdSet ids_all = unite(ids_p, ids_q);
        const Id fresh = fresh_id(ids_all);
        auto hp = handshakes(p);
        auto hq = handshakes(q);
        // H3/H4 and H5/H6, both orientations.
        for (const auto& m : hp) {
          if (!ids_q.contains(m.id))
            out.push_back({m.id, m.action, rebuild(m.target, q)});
          else
            out.push_back({fresh, m.action, rebuild(rename_id(m.target, m.id, fresh), q)});
        }
        for (const auto& m : hq) {
          if (!ids_p.contains(m.id))
            out.push_back({m.id, m.action, rebuild(p, m.target)});
          else
            out.push_back({fresh, m.action, rebuild(p, rename_id(m.target, m.id, fresh))});
        }
        if (!is_sum) {  // H7
          for (const auto& a : hp)
            for (const auto& b : hq)
              if (complementary(a.action, b.action))
                out.push_back({fresh, Action::tau(),
                               Term::par(rename_id(a.target, a.id, fresh), rename_id(b.target, b.id, fresh))});
        }
        break;
      }
    }
    return out;
  }

  std::vector<IMove> interrupts(const Term& t) {
    if (t.frozen_count() > options_.interrupt_cap)
      throw CapExceeded("interrupt enumeration over " + std::to_string(t.frozen_count()) +
                        " running actions exceeds the cap of " + std::to_string(options_.interrupt_cap));
    return interrupts_unchecked(t);
  }

  std::vector<CPMove> preemptive(const Term& t) {
    std::vector<CPMove> out;
    if (t.is_pure()) return out;
    switch (t.kind()) {
      case TermKind::Prefix:
        if (t.mode() == PrefixMode::Preemptive)  // C1
          out.push_back({*t.frozen_id(), t.action(), {}, t.continuation()});
        break;
      case TermKind::Sum: {  // C2 and its mirror
        const Term& p = t.left();
        const Term& q = t.right();
        const IdSet ids_p = id_set(p);
        const IdSet ids_q = id_set(q);
        for (auto& m : preemptive(p)) add_cp(out, {m.id, m.action, unite(m.demanded, ids_q), m.target});
        for (auto& m : preemptive(q)) add_cp(out, {m.id, m.action, unite(m.demanded, ids_p), m.target});
        break;
      }
      case TermKind::Par:
        preemptive_par(t.left(), t.right(), out);
        break;
      default:
        break;
    }
    return out;
  }

  std::vector<CCMove> conservative(const Term& t) {
    std::vector<CCMove> out;
    if (t.is_pure()) return out;
    switch (t.kind()) {
      case TermKind::Prefix:
        if (t.mode() == PrefixMode::Conservative)  // C5
          out.push_back({*t.frozen_id(), t.action(), {}, t.continuation(), unfrozen(t)});
        break;
      case TermKind::Sum: {  // C6 and its mirror
        const Term& p = t.left();
        const Term& q = t.right();
        auto cp = conservative(p);
        if (!cp.empty())
          for (const auto& i : interrupts(q))
            for (const auto& m : cp)
              add_cc(out, {m.id, m.action, unite(m.demanded, i.ids), m.continuation, Term::sum(m.target, i.target)});
        auto cq = conservative(q);
        if (!cq.empty())
          for (const auto& i : interrupts(p))
            for (const auto& m : cq)
              add_cc(out, {m.id, m.action, unite(m.demanded, i.ids), m.continuation, Term::sum(i.target, m.target)});
        break;
      }
      case TermKind::Par: {  // C7 and its mirror
        const Term& p = t.left();
        const Term& q = t.right();
        for (auto& m : conservative(p))
          out.push_back({m.id, m.action, m.demanded, m.continuation, Term::par(m.target, q)});
        for (auto& m : conservative(q))
          out.push_back({m.id, m.action, m.demanded, m.continuation, Term::par(p, m.target)});
        break;
      }
      default:
        break;
    }
    return out;
  }

 private:
  std::vector<IMove> interrupts_unchecked(const Term& t) {
    if (t.is_pure()) return {{{}, t}};  // I5, I6; nil and constants idle
    switch (t.kind()) {
      case TermKind::Prefix:  // I1..I4
        return {{{}, t}, {{*t.frozen_id()}, unfrozen(t)}};
      case TermKind::Sum:  // I7
      case TermKind::Par: {
        auto left = interrupts_unchecked(t.left());
        auto right = interrupts_unchecked(t.right());
        std::vector<IMove> out;
        out.reserve(left.size() * right.size());
        for (const auto& l : left)
          for (const auto& r : right)
            out.push_back({unite(l.ids, r.ids),
                           t.is_sum() ? Term::sum(l.target, r.target) : Term::par(l.target, r.target)});
        return out;
      }
      default:
        return {{{}, t}};
    }
  }

  // Completions never demand the interruption of their own identifier.
  static void add_cp(std::vector<CPMove>& out, CPMove m) {
    if (!m.demanded.contains(m.id)) out.push_back(std::move(m));
  }
  static void add_cc(std::vector<CCMove>& out, CCMove m) {
    if (!m.demanded.contains(m.id)) out.push_back(std::move(m));
  }

  void preemptive_par(const Term& p, const Term& q, std::vector<CPMove>& out) {
    const IdSet ids_p = id_set(p);
    const IdSet ids_q = id_set(q);
    auto cp_p = preemptive(p);
    auto cp_q = preemptive(q);
    auto cc_p = conservative(p);
    auto cc_q = conservative(q);

    // C3: a completion on one side, an interruption on the other.
    auto c3 = [&](const std::vector<CPMove>& moves, const Term& other, const IdSet& ids_other, bool on_left) {
      if (moves.empty()) return;
      const auto other_moves = interrupts(other);
      for (const auto& m : moves) {
        const IdSet required = intersect(ids_other, m.demanded);
        for (const auto& i : other_moves) {
          if (!includes(i.ids, required)) continue;
          IdSet v = subtract(unite(m.demanded, i.ids), required);
          add_cp(out, {m.id, m.action, std::move(v),
                       on_left ? Term::par(m.target, i.target) : Term::par(i.target, m.target)});
        }
      }
    };
    c3(cp_p, q, ids_q, true);
    c3(cp_q, p, ids_p, false);

    // C4: coupled preemptive completions.
    for (const auto& a : cp_p)
      for (const auto& b : cp_q)
        if (a.id == b.id && complementary(a.action, b.action))
          add_cp(out, {a.id, Action::tau(), subtract(unite(a.demanded, b.demanded), intersect(a.demanded, b.demanded)),
                       Term::par(a.target, b.target)});

    // C8: coupled conservative completions, both demanding nothing.
    for (const auto& a : cc_p)
      for (const auto& b : cc_q)
        if (a.id == b.id && complementary(a.action, b.action) && a.demanded.empty() && b.demanded.empty())
          add_cp(out, {a.id, Action::tau(), {},
                       Term::par(a.target, Term::par(b.target, Term::par(a.continuation, b.continuation)))});

    // C9 and its mirror: conservative completion meets preemptive completion.
    for (const auto& a : cc_p)
      for (const auto& b : cp_q)
        if (a.id == b.id && complementary(a.action, b.action) && includes(b.demanded, a.demanded))
          add_cp(out, {a.id, Action::tau(), subtract(b.demanded, a.demanded),
                       Term::par(a.target, Term::par(b.target, a.continuation))});
    for (const auto& a : cp_p)
      for (const auto& b : cc_q)
        if (a.id == b.id && complementary(a.action, b.action) && includes(a.demanded, b.demanded))
          add_cp(out, {a.id, Action::tau(), subtract(a.demanded, b.demanded),
                       Term::par(a.target, Term::par(b.target, b.continuation))});
  }

  const Definitions& defs_;
  const EngineOptions& options_;
  std::vector<std::string> unfolding_;
};

}  // namespace

Engine::Engine(Definitions defs, EngineOptions options) : defs_(std::move(defs)), options_(options) {}

std::vector<Transition> Engine::handshake_steps(const Term& c) const {
  Deriver d(defs_, options_);
  std::vector<Transition> out;
  for (auto& m : d.handshakes(c)) out.push_back({c, Handshake{m.id, m.action}, std::move(m.target)});
  normalize(out);
  return out;
}

std::vector<Transition> Engine::interrupt_steps(const Term& c) const {
  Deriver d(defs_, options_);
  std::vector<Transition> out;
  for (auto& m : d.interrupts(c)) out.push_back({c, Interrupt{std::move(m.ids)}, std::move(m.target)});
  normalize(out);
  return out;
}

std::vector<Transition> Engine::preemptive_completions(const Term& c) const {
  Deriver d(defs_, options_);
  std::vector<Transition> out;
  for (auto& m : d.preemptive(c))
    out.push_back({c, CompletePreemptive{m.id, m.action, std::move(m.demanded)}, std::move(m.target)});
  normalize(out);
  return out;
}

std::vector<Transition> Engine::conservative_completions(const Term& c) const {
  Deriver d(defs_, options_);
  std::vector<Transition> out;
  for (auto& m : d.conservative(c))
    out.push_back({c, CompleteConservative{m.id, m.action, std::move(m.demanded), std::move(m.continuation)},
                   std::move(m.target)});
  normalize(out);
  return out;
}

std::vector<Transition> Engine::all_steps(const Term& c) const {
  std::vector<Transition> out = handshake_steps(c);
  auto append = [&out](std::vector<Transition> more) {
    out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  };
  append(interrupt_steps(c));
  append(preemptive_completions(c));
  append(conservative_completions(c));
  return out;  // each part is sorted and the relations are already in order
}

std::vector<Transition> Engine::system_steps(const Term& c) const {
  std::vector<Transition> out = handshake_steps(c);
  std::erase_if(out, [](const Transition& t) { return !is_system_label(t.label); });
  auto cp = preemptive_completions(c);
  for (auto& t : cp)
    if (is_system_label(t.label)) out.push_back(std::move(t));
  return out;
}

}  // namespace papc
