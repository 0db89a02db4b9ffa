#include "papc/context.hpp"

#include "papc/errors.hpp"
#include "papc/syntax.hpp"

namespace papc {

namespace {

bool is_hole(const Term& t) { return t.is_const() && t.name() == detail::kHoleName; }

// Number of holes, and whether some hole is below a prefix.
void scan(const Term& t, bool under_prefix, std::size_t& holes, bool& hole_under_prefix) {
  switch (t.kind()) {
    case TermKind::Const:
      if (is_hole(t)) {
        ++holes;
        hole_under_prefix = hole_under_prefix || under_prefix;
      }
      break;
    case TermKind::Prefix:
      scan(t.continuation(), true, holes, hole_under_prefix);
      break;
    case TermKind::Sum:
    case TermKind::Par:
      scan(t.left(), under_prefix, holes, hole_under_prefix);
      scan(t.right(), under_prefix, holes, hole_under_prefix);
      break;
    case TermKind::Nil:
      break;
  }
}

Term fill(const Term& t, const Term& p) {
  switch (t.kind()) {
    case TermKind::Const:
      return is_hole(t) ? p : t;
    case TermKind::Prefix: {
      Term cont = fill(t.continuation(), p);
      return t.is_frozen() ? Term::frozen(t.mode(), t.action(), *t.frozen_id(), std::move(cont))
                           : Term::prefix(t.mode(), t.action(), std::move(cont));
    }
    case TermKind::Sum:
      return Term::sum(fill(t.left(), p), fill(t.right(), p));
    case TermKind::Par:
      return Term::par(fill(t.left(), p), fill(t.right(), p));
    case TermKind::Nil:
      break;
  }
  return t;
}

void collect_channels(const Term& t, std::set<std::string>& out) {
  switch (t.kind()) {
    case TermKind::Prefix:
      out.insert(t.action().channel());
      collect_channels(t.continuation(), out);
      break;
    case TermKind::Sum:
    case TermKind::Par:
      collect_channels(t.left(), out);
      collect_channels(t.right(), out);
      break;
    default:
      break;
  }
}

}  // namespace

Context::Context(Term skeleton) : skeleton_(std::move(skeleton)) {
  std::size_t holes = 0;
  scan(skeleton_, false, holes, under_prefix_);
  if (holes != 1) throw Error("a context needs exactly one hole, found " + std::to_string(holes));
}

Context Context::parse(std::string_view text) {
  std::size_t holes = 0;
  Term t = detail::parse_with_holes(text, holes);
  return Context(std::move(t));
}

Term Context::hole() { return Term::constant(std::string(detail::kHoleName)); }

std::string Context::to_string() const { return format(skeleton_); }

Term apply_context(const Context& ctx, const Term& p) {
  if (ctx.hole_under_prefix() && !p.is_pure())
    throw IllFormedPlacement("cannot place configuration '" + format(p) + "' below a prefix in context '" +
                             ctx.to_string() + "'");
  return fill(ctx.skeleton(), p);
}

std::set<std::string> channels_of(const Term& t) {
  std::set<std::string> out;
  collect_channels(t, out);
  return out;
}

namespace {

Action random_action(std::mt19937_64& rng, const std::vector<std::string>& channels) {
  std::uniform_int_distribution<std::size_t> pick(0, channels.size() - 1);
  std::bernoulli_distribution flip(0.5);
  return Action::name(channels[pick(rng)], flip(rng));
}

Term random_process(std::mt19937_64& rng, const std::vector<std::string>& channels, std::size_t depth) {
  std::uniform_int_distribution<int> op(0, depth == 0 ? 0 : 4);
  switch (op(rng)) {
    case 0:
      return Term::nil();
    case 1:
      return Term::prefix(PrefixMode::Preemptive, random_action(rng, channels),
                          random_process(rng, channels, depth - 1));
    case 2:
      return Term::prefix(PrefixMode::Conservative, random_action(rng, channels),
                          random_process(rng, channels, depth - 1));
    case 3:
      return Term::sum(random_process(rng, channels, depth - 1), random_process(rng, channels, depth - 1));
    default:
      return Term::par(random_process(rng, channels, depth - 1), random_process(rng, channels, depth - 1));
  }
}

}  // namespace

Context random_context(std::mt19937_64& rng, const std::set<std::string>& channels, const ContextShape& shape) {
  std::vector<std::string> pool(channels.begin(), channels.end());
  std::string fresh = "z";
  while (channels.contains(fresh)) fresh += "z";
  pool.push_back(fresh);

  std::uniform_int_distribution<std::size_t> layers_dist(1, std::max<std::size_t>(1, shape.max_depth));
  const std::size_t layers = layers_dist(rng);
  std::uniform_int_distribution<int> op(0, shape.allow_prefix_above_hole ? 3 : 1);
  std::bernoulli_distribution hole_left(0.5);

  Term t = Context::hole();
  for (std::size_t i = 0; i < layers; ++i) {
    switch (const int choice = op(rng)) {
      case 0:
      case 1: {
        Term sibling = random_process(rng, pool, 1);
        const bool left = hole_left(rng);
        Term l = left ? t : sibling;
        Term r = left ? sibling : t;
        t = choice == 0 ? Term::sum(std::move(l), std::move(r)) : Term::par(std::move(l), std::move(r));
        break;
      }
      case 2:
        t = Term::prefix(PrefixMode::Preemptive, random_action(rng, pool), t);
        break;
      default:
        t = Term::prefix(PrefixMode::Conservative, random_action(rng, pool), t);
        break;
    }
  }
  return Context(std::move(t));
}

}  // namespace papc
