#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace testsupport {

struct CheckResult {
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string first_failure;

  bool ok() const { return instances > 0 && failures == 0; }
  void fail(const std::string& what) {
    if (failures++ == 0) first_failure = what;
  }
};

// Each check draws `n` random instances from a generator seeded with `seed`.
CheckResult check_round_trip(std::uint64_t seed, std::size_t n);
CheckResult check_complement_involution(std::uint64_t seed, std::size_t n);
CheckResult check_finite_branching(std::uint64_t seed, std::size_t n);
CheckResult check_handshake_freshness(std::uint64_t seed, std::size_t n);
CheckResult check_h7_coupling(std::uint64_t seed, std::size_t n);
CheckResult check_interrupt_soundness(std::uint64_t seed, std::size_t n);
CheckResult check_cp_rollback(std::uint64_t seed, std::size_t n);
CheckResult check_cc_conservation(std::uint64_t seed, std::size_t n);

// Engine against the brute-force oracle on configurations of height <= 5
// with at most 4 running prefixes, all four relations.
CheckResult check_oracle_equivalence(std::uint64_t seed, std::size_t n);

}  // namespace testsupport
