#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pfrkit/check.hpp"
#include "pfrkit/f2set.hpp"
#include "pfrkit/f2vector.hpp"
#include "pfrkit/profile.hpp"
#include "pfrkit/rational.hpp"

namespace pfrkit {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitGate = 2;
inline constexpr int kExitCheck = 3;

/// Work budget (pairs checked times |A|^2) for the bijection check: all pairs
/// (a1, a2) while it allows, otherwise an evenly spaced subset of them.
inline constexpr std::uint64_t kBijectionWorkBudget = std::uint64_t{1} << 23;

/// Result section of a run report plus its exit code. Timings are kept apart
/// because they are the only nondeterministic output.
struct CommandOutcome {
  Json result = Json::object();
  std::string status = "ok";
  int exit_code = kExitOk;
  Json timings = Json::object();
};

CommandOutcome analyze_command(const F2Set& a, ProfileMethod method, unsigned threads);

inline const std::vector<std::string> kVerifyChecks = {"mass", "lemma6", "lemma7", "lemma8",
                                                       "eq6", "fr", "containments"};

struct VerifyOptions {
  std::vector<std::string> checks = kVerifyChecks;
  Rational L = 2;
  std::optional<Rational> eps;
  std::optional<F2Vector> a_star;  // scanned with L when absent
  std::vector<Rational> deltas;    // extra S(d)+S(d) containments
  unsigned threads = 1;
};

/// Runs the selected checks; exit code 3 when any fails (flagged and
/// not_applicable results do not count as failures).
CommandOutcome verify_command(const F2Set& a, const VerifyOptions& options);

struct BenchOptions {
  int n_min = 8;
  int n_max = 16;
  std::uint64_t seed = 0;
  Rational density = Rational(1, 2);
  /// Above this |A| the naive kernel is checked on sampled fibers only.
  std::size_t full_naive_cap = 4096;
  std::size_t samples = 64;
  unsigned threads = 1;
};

/// Naive versus Walsh-Hadamard profile on one seeded random set per n.
CommandOutcome bench_command(const BenchOptions& options);

/// "fnv1a64:" followed by 16 lowercase hex digits.
std::string fnv1a64_digest(std::string_view bytes);

}  // namespace pfrkit
