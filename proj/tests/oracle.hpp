#pragma once

// Brute-force reference implementations. They use only std containers and
// direct enumeration from the definitions, never the library kernels.

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "pfrkit/f2set.hpp"
#include "pfrkit/rational.hpp"

namespace oracle {

using Set = std::set<std::uint64_t>;

inline Set to_std(const pfrkit::F2Set& a) { return Set(a.begin(), a.end()); }

inline pfrkit::F2Set from_std(int dim, const Set& s) {
  return pfrkit::F2Set(dim, std::vector<std::uint64_t>(s.begin(), s.end()));
}

inline Set sumset(const Set& a, const Set& b) {
  Set out;
  for (auto x : a)
    for (auto y : b) out.insert(x ^ y);
  return out;
}

/// #{(a1, a2) in A^2 : a1 + a2 = s}.
inline std::uint64_t representations(const Set& a, std::uint64_t s) {
  std::uint64_t n = 0;
  for (auto x : a)
    for (auto y : a)
      if ((x ^ y) == s) ++n;
  return n;
}

inline Set symmetry_set(const Set& a, std::uint64_t s) {
  Set out;
  for (auto x : a)
    if (a.count(x ^ s)) out.insert(x);
  return out;
}

inline std::map<std::uint64_t, std::uint64_t> profile(const Set& a) {
  std::map<std::uint64_t, std::uint64_t> out;
  for (auto x : a)
    for (auto y : a) ++out[x ^ y];
  return out;
}

/// Size of the linear span, by closing {0} under adding each generator.
inline std::uint64_t span_size(const Set& a) {
  Set span{0};
  for (auto v : a) {
    if (span.count(v)) continue;
    Set next = span;
    for (auto x : span) next.insert(x ^ v);
    span.swap(next);
  }
  return span.size();
}

struct Moments {
  pfrkit::Rational ez, ez2, ey2, pr_z_pos;
};

/// Y = |A(b1+b2) ∩ A(b3+b4)|, Z = Y unless a fiber is at most |A|/2K.
inline Moments moments(const Set& a) {
  const std::vector<std::uint64_t> v(a.begin(), a.end());
  const std::size_t m = v.size();
  const auto prof = profile(a);
  const pfrkit::Rational guard = pfrkit::Rational(m * m) / (2 * prof.size());
  pfrkit::BigInt sz = 0, sz2 = 0, sy2 = 0, pos = 0;
  for (auto b1 : v)
    for (auto b2 : v)
      for (auto b3 : v)
        for (auto b4 : v) {
          const Set f1 = symmetry_set(a, b1 ^ b2);
          const Set f2 = symmetry_set(a, b3 ^ b4);
          std::uint64_t y = 0;
          for (auto x : f1) y += f2.count(x);
          sy2 += y * y;
          if (pfrkit::Rational(f1.size()) > guard && pfrkit::Rational(f2.size()) > guard) {
            sz += y;
            sz2 += y * y;
            if (y > 0) pos += 1;
          }
        }
  const pfrkit::BigInt m4 = pfrkit::BigInt(m) * m * m * m;
  return {pfrkit::Rational(sz, m4), pfrkit::Rational(sz2, m4), pfrkit::Rational(sy2, m4),
          pfrkit::Rational(pos, m4)};
}

/// m distinct values below 2^n (m <= 2^n), from std::mt19937_64 and std::set.
inline Set random_set(int n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Set out;
  const std::uint64_t mask = (std::uint64_t{1} << n) - 1;
  while (out.size() < m) out.insert(rng() & mask);
  return out;
}

}  // namespace oracle
