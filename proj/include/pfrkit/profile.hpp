#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "pfrkit/f2set.hpp"
#include "pfrkit/rational.hpp"

namespace pfrkit {

enum class ProfileMethod { naive, wht };

ProfileMethod parse_profile_method(std::string_view name);
std::string_view to_string(ProfileMethod method);

struct Fiber {
  std::uint64_t sum;    // s in 2A
  std::uint64_t count;  // |A(s)| >= 1

  friend bool operator==(const Fiber&, const Fiber&) = default;
};

/// The exact multiset {(s, |A(s)|) : s in 2A}.
class SymmetryProfile {
 public:
  SymmetryProfile(F2Set base, std::vector<Fiber> fibers);

  const F2Set& base() const noexcept { return base_; }
  int dim() const noexcept { return base_.dim(); }
  std::size_t set_size() const noexcept { return base_.size(); }
  std::size_t sumset_size() const noexcept { return fibers_.size(); }

  /// Ascending in s.
  std::span<const Fiber> fibers() const noexcept { return fibers_; }

  /// |A(s)|, zero when s is not in 2A.
  std::uint64_t fiber_size(std::uint64_t s) const noexcept;

  F2Set sumset() const;
  Rational doubling() const { return Rational(sumset_size(), set_size()); }
  BigInt total_mass() const;
  Rational mean_fiber() const { return Rational(total_mass(), sumset_size()); }
  /// Number of s in 2A with each fiber size, ascending by size.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> histogram() const;

  friend bool operator==(const SymmetryProfile& a, const SymmetryProfile& b) {
    return a.base_ == b.base_ && a.fibers_ == b.fibers_;
  }

 private:
  F2Set base_;
  std::vector<Fiber> fibers_;
  std::vector<std::uint32_t> dense_;
  std::unordered_map<std::uint64_t, std::uint64_t> sparse_;
};

/// Exact profile of a nonempty set. `naive` counts all ordered pairs; `wht`
/// squares the Walsh-Hadamard transform of the indicator (n <= 24). Both give
/// identical results; `threads` only splits the naive pair loop.
SymmetryProfile symmetry_profile(const F2Set& a, ProfileMethod method = ProfileMethod::naive,
                                 unsigned threads = 1);

}  // namespace pfrkit
