#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pfrkit/f2set.hpp"

namespace pfrkit {

/// Largest dimension for which 2^n-sized transform tables are built.
inline constexpr int kMaxTransformDim = 24;

/// In-place unnormalized Walsh-Hadamard transform; size must be a power of two.
/// Applying it twice multiplies every entry by the size.
void walsh_hadamard(std::span<std::int64_t> values);

/// Exact XOR convolution h(x) = sum_{y} f(y) g(x+y) of two 2^n tables.
/// Entries must be small enough that 2^n * max|f| * max|g| fits in int64.
std::vector<std::int64_t> xor_convolution(std::span<const std::int64_t> f,
                                          std::span<const std::int64_t> g);

/// result[s] = |A ∩ (s + A)| for every s in F_2^n (indicator autocorrelation).
std::vector<std::int64_t> xor_autocorrelation(const F2Set& a);

/// result[x] = #{(a, b) in A x B : a + b = x}.
std::vector<std::int64_t> xor_representation_counts(const F2Set& a, const F2Set& b);

}  // namespace pfrkit
