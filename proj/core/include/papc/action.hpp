#pragma once

#include <compare>
#include <string>

namespace papc {

/// A channel name with a polarity, or the internal action tau.
class Action {
 public:
  static Action name(std::string channel, bool complemented = false) {
    return Action(std::move(channel), complemented, false);
  }
  static Action tau() { return Action({}, false, true); }

  bool is_tau() const noexcept { return tau_; }
  bool complemented() const noexcept { return complemented_; }
  const std::string& channel() const noexcept { return channel_; }

  /// Same channel, flipped polarity. Throws ComplementOfTau for tau.
  Action complement() const;

  /// `a`, `~a` or `tau`.
  std::string to_string() const;

  bool operator==(const Action&) const = default;
  auto operator<=>(const Action&) const = default;

 private:
  Action(std::string channel, bool complemented, bool tau)
      : tau_(tau), channel_(std::move(channel)), complemented_(complemented) {}

  // Declaration order fixes the ordering: tau sorts after every name.
  bool tau_;
  std::string channel_;
  bool complemented_;
};

}  // namespace papc
