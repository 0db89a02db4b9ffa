#include "papc/term.hpp"

#include <functional>

#include "papc/errors.hpp"

namespace papc {

struct Term::Node {
  TermKind kind = TermKind::Nil;
  PrefixMode mode = PrefixMode::Preemptive;
  Action action = Action::tau();
  Id id = 0;  // 0 marks an unfrozen prefix
  std::optional<Term> first;
  std::optional<Term> second;
  std::string name;
  std::size_t frozen = 0;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t value) {
  return seed ^ (value + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Term::Term() {
  static const auto nil_node = [] {
    auto node = std::make_shared<Node>();
    node->hash = mix(0, static_cast<std::size_t>(TermKind::Nil));
    return node;
  }();
  node_ = nil_node;
}

Term Term::prefix(PrefixMode mode, Action action, Term continuation) {
  if (action.is_tau()) throw Error("tau cannot guard a prefix");
  if (!continuation.is_pure())
    throw IllFormedPlacement("prefix continuation must be a process without running actions");
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Prefix;
  node->mode = mode;
  node->action = std::move(action);
  std::size_t h = mix(static_cast<std::size_t>(TermKind::Prefix), static_cast<std::size_t>(mode));
  h = mix(h, std::hash<std::string>{}(node->action.to_string()));
  h = mix(h, continuation.hash());
  node->hash = h;
  node->first = std::move(continuation);
  return Term(std::move(node));
}

Term Term::frozen(PrefixMode mode, Action action, Id id, Term continuation) {
  if (id == 0) throw Error("identifiers of running actions start at 1");
  Term base = prefix(mode, std::move(action), std::move(continuation));
  auto node = std::make_shared<Node>(*base.node_);
  node->id = id;
  node->frozen = 1;
  node->hash = mix(base.hash(), id);
  return Term(std::move(node));
}

namespace {

template <typename NodeT>
std::shared_ptr<NodeT> binary(TermKind kind, std::size_t left_hash, std::size_t right_hash) {
  auto node = std::make_shared<NodeT>();
  node->kind = kind;
  node->hash = mix(mix(static_cast<std::size_t>(kind), left_hash), right_hash);
  return node;
}

}  // namespace

Term Term::sum(Term left, Term right) {
  auto node = binary<Node>(TermKind::Sum, left.hash(), right.hash());
  node->frozen = left.frozen_count() + right.frozen_count();
  node->first = std::move(left);
  node->second = std::move(right);
  return Term(std::move(node));
}

Term Term::par(Term left, Term right) {
  auto node = binary<Node>(TermKind::Par, left.hash(), right.hash());
  node->frozen = left.frozen_count() + right.frozen_count();
  node->first = std::move(left);
  node->second = std::move(right);
  return Term(std::move(node));
}

Term Term::constant(std::string name) {
  auto node = std::make_shared<Node>();
  node->kind = TermKind::Const;
  node->hash = mix(static_cast<std::size_t>(TermKind::Const), std::hash<std::string>{}(name));
  node->name = std::move(name);
  return Term(std::move(node));
}

TermKind Term::kind() const noexcept { return node_->kind; }
PrefixMode Term::mode() const noexcept { return node_->mode; }
const Action& Term::action() const noexcept { return node_->action; }

std::optional<Id> Term::frozen_id() const noexcept {
  if (node_->kind != TermKind::Prefix || node_->id == 0) return std::nullopt;
  return node_->id;
}

const Term& Term::continuation() const noexcept { return *node_->first; }
const Term& Term::left() const noexcept { return *node_->first; }
const Term& Term::right() const noexcept { return *node_->second; }
const std::string& Term::name() const noexcept { return node_->name; }
std::size_t Term::frozen_count() const noexcept { return node_->frozen; }
std::size_t Term::hash() const noexcept { return node_->hash; }

bool operator==(const Term& a, const Term& b) noexcept {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.kind != y.kind || x.frozen != y.frozen) return false;
  switch (x.kind) {
    case TermKind::Nil:
      return true;
    case TermKind::Const:
      return x.name == y.name;
    case TermKind::Prefix:
      return x.mode == y.mode && x.id == y.id && x.action == y.action && *x.first == *y.first;
    case TermKind::Sum:
    case TermKind::Par:
      return *x.first == *y.first && *x.second == *y.second;
  }
  return false;
}

IdSet id_set(const Term& c) {
  IdSet ids;
  std::function<void(const Term&)> walk = [&](const Term& t) {
    if (t.is_pure()) return;
    if (t.is_prefix()) {
      ids.insert(*t.frozen_id());
    } else {
      walk(t.left());
      walk(t.right());
    }
  };
  walk(c);
  return ids;
}

std::set<Action> actions_at(Id id, const Term& c) {
  std::set<Action> actions;
  std::function<void(const Term&)> walk = [&](const Term& t) {
    if (t.is_pure()) return;
    if (t.is_prefix()) {
      if (t.frozen_id() == id) actions.insert(t.action());
    } else {
      walk(t.left());
      walk(t.right());
    }
  };
  walk(c);
  return actions;
}

namespace {

Term rename_unchecked(const Term& t, Id old_id, Id new_id) {
  if (t.is_pure()) return t;
  switch (t.kind()) {
    case TermKind::Prefix:
      if (t.frozen_id() != old_id) return t;
      return Term::frozen(t.mode(), t.action(), new_id, t.continuation());
    case TermKind::Sum:
      return Term::sum(rename_unchecked(t.left(), old_id, new_id),
                       rename_unchecked(t.right(), old_id, new_id));
    case TermKind::Par:
      return Term::par(rename_unchecked(t.left(), old_id, new_id),
                       rename_unchecked(t.right(), old_id, new_id));
    default:
      return t;
  }
}

}  // namespace

Term rename_id(const Term& c, Id old_id, Id new_id) {
  if (old_id == new_id) return c;
  if (new_id == 0) throw IdentifierCollision("identifier 0 is not a valid identifier");
  if (id_set(c).contains(new_id))
    throw IdentifierCollision("identifier " + std::to_string(new_id) + " is already in use");
  return rename_unchecked(c, old_id, new_id);
}

Id fresh_id(const IdSet& used) {
  Id candidate = 1;
  for (Id id : used) {
    if (id > candidate) break;
    if (id == candidate) ++candidate;
  }
  return candidate;
}

}  // namespace papc
