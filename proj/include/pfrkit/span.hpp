#pragma once

#include <cstdint>
#include <vector>

#include "pfrkit/f2set.hpp"
#include "pfrkit/f2vector.hpp"
#include "pfrkit/rational.hpp"

namespace pfrkit {

/// Row-echelon GF(2) basis: rows are independent with strictly decreasing
/// leading bits, and the span has 2^rank elements.
class SpanBasis {
 public:
  explicit SpanBasis(int dim);

  int dim() const noexcept { return dim_; }
  int rank() const noexcept { return static_cast<int>(rows_.size()); }
  BigInt span_size() const { return pow2(static_cast<unsigned>(rank())); }

  /// Adds v to the generating set; returns true when the rank grew.
  bool insert(std::uint64_t v);
  bool insert(const F2Vector& v);

  /// Residue of v after elimination against the rows; zero iff v is in the span.
  std::uint64_t reduce(std::uint64_t v) const noexcept;
  bool contains(std::uint64_t v) const noexcept { return reduce(v) == 0; }
  bool contains(const F2Vector& v) const;

  std::vector<F2Vector> rows() const;
  const std::vector<std::uint64_t>& row_bits() const noexcept { return rows_; }

 private:
  int dim_;
  std::vector<std::uint64_t> rows_;  // sorted by leading bit, descending
};

/// Gaussian elimination over the elements of a nonempty set.
SpanBasis span_basis(const F2Set& a);

/// Span of the set {x + y : x, y in A} without materializing the sumset: it is
/// the span of {a + a0 : a in A} for any fixed a0 in A.
SpanBasis sumset_span_basis(const F2Set& a);

}  // namespace pfrkit
