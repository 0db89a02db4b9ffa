#include "papc/action.hpp"

#include "papc/errors.hpp"

namespace papc {

Action Action::complement() const {
  if (tau_) throw ComplementOfTau();
  return Action(channel_, !complemented_, false);
}

std::string Action::to_string() const {
  if (tau_) return "tau";
  return complemented_ ? "~" + channel_ : channel_;
}

}  // namespace papc
