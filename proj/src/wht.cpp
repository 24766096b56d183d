#include "pfrkit/wht.hpp"

#include <bit>

#include "pfrkit/error.hpp"

namespace pfrkit {
namespace {

void require_transform_dim(int dim) {
  if (dim > kMaxTransformDim) {
    throw CapExceeded("transform needs n <= " + std::to_string(kMaxTransformDim) +
                      ", got n = " + std::to_string(dim));
  }
}

std::vector<std::int64_t> indicator(const F2Set& a) {
  std::vector<std::int64_t> table(std::size_t{1} << a.dim(), 0);
  for (std::uint64_t e : a) table[e] = 1;
  return table;
}

// Inverse of walsh_hadamard up to the exact division by the table size.
void inverse_in_place(std::vector<std::int64_t>& values) {
  walsh_hadamard(values);
  const int shift = std::countr_zero(values.size());
  for (auto& v : values) v >>= shift;
}

}  // namespace

void walsh_hadamard(std::span<std::int64_t> values) {
  const std::size_t n = values.size();
  if (n == 0 || !std::has_single_bit(n)) {
    throw OutOfRange("Walsh-Hadamard size must be a power of two");
  }
  for (std::size_t half = 1; half < n; half <<= 1) {
    for (std::size_t block = 0; block < n; block += half << 1) {
      for (std::size_t i = block; i < block + half; ++i) {
        const std::int64_t x = values[i];
        const std::int64_t y = values[i + half];
        values[i] = x + y;
        values[i + half] = x - y;
      }
    }
  }
}

std::vector<std::int64_t> xor_convolution(std::span<const std::int64_t> f,
                                          std::span<const std::int64_t> g) {
  if (f.size() != g.size()) throw DimensionMismatch("xor_convolution: table sizes differ");
  std::vector<std::int64_t> fh(f.begin(), f.end());
  std::vector<std::int64_t> gh(g.begin(), g.end());
  walsh_hadamard(fh);
  walsh_hadamard(gh);
  for (std::size_t i = 0; i < fh.size(); ++i) fh[i] *= gh[i];
  inverse_in_place(fh);
  return fh;
}

std::vector<std::int64_t> xor_autocorrelation(const F2Set& a) {
  require_transform_dim(a.dim());
  auto table = indicator(a);
  walsh_hadamard(table);
  for (auto& v : table) v *= v;
  inverse_in_place(table);
  return table;
}

std::vector<std::int64_t> xor_representation_counts(const F2Set& a, const F2Set& b) {
  require_same_dim(a.dim(), b.dim(), "xor_representation_counts");
  require_transform_dim(a.dim());
  const auto fa = indicator(a);
  const auto fb = indicator(b);
  return xor_convolution(fa, fb);
}

}  // namespace pfrkit
