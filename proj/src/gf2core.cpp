#include "pfrkit/gf2core.hpp"

#include <unordered_set>

#include "pfrkit/error.hpp"
#include "pfrkit/wht.hpp"

namespace pfrkit {
namespace {

void require_nonempty(const F2Set& a, const char* where) {
  if (a.empty()) throw EmptyInput(std::string(where) + ": empty set");
}

}  // namespace

F2Set sumset(const F2Set& a, const F2Set& b) {
  require_same_dim(a.dim(), b.dim(), "sumset");
  require_nonempty(a, "sumset");
  require_nonempty(b, "sumset");
  const int n = a.dim();
  const double pairs = static_cast<double>(a.size()) * static_cast<double>(b.size());
  std::vector<std::uint64_t> out;
  if (n <= kDenseThreshold) {
    const std::size_t table = std::size_t{1} << n;
    // The transform costs n 2^n; use it once pair enumeration is clearly worse.
    if (pairs > 4.0 * static_cast<double>(n) * static_cast<double>(table)) {
      const auto counts = xor_representation_counts(a, b);
      for (std::size_t x = 0; x < table; ++x) {
        if (counts[x] > 0) out.push_back(x);
      }
    } else {
      std::vector<bool> seen(table, false);
      for (std::uint64_t x : a) {
        for (std::uint64_t y : b) seen[x ^ y] = true;
      }
      for (std::size_t x = 0; x < table; ++x) {
        if (seen[x]) out.push_back(x);
      }
    }
    return F2Set(n, std::move(out));
  }
  std::unordered_set<std::uint64_t> seen;
  for (std::uint64_t x : a) {
    for (std::uint64_t y : b) seen.insert(x ^ y);
  }
  out.assign(seen.begin(), seen.end());
  return F2Set(n, std::move(out));
}

F2Set symmetry_set(const F2Set& a, const F2Vector& s) {
  require_same_dim(a.dim(), s.dim(), "symmetry_set");
  std::vector<std::uint64_t> out;
  for (std::uint64_t x : a) {
    if (a.contains(x ^ s.bits())) out.push_back(x);
  }
  return F2Set(a.dim(), std::move(out));
}

Rational doubling(const F2Set& a) {
  require_nonempty(a, "doubling");
  const F2Set two_a = sumset(a, a);
  return Rational(two_a.size(), a.size());
}

F2Set translate(const F2Set& a, const F2Vector& x) {
  require_same_dim(a.dim(), x.dim(), "translate");
  std::vector<std::uint64_t> out;
  out.reserve(a.size());
  for (std::uint64_t e : a) out.push_back(e ^ x.bits());
  return F2Set(a.dim(), std::move(out));
}

}  // namespace pfrkit
