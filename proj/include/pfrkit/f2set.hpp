#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <unordered_set>
#include <vector>

#include "pfrkit/f2vector.hpp"

namespace pfrkit {

/// Sets in dimension <= this threshold keep a dense 2^n-bit membership bitmap;
/// larger dimensions use a hash set. Iteration order is ascending either way.
inline constexpr int kDenseThreshold = 20;

/// A finite subset of F_2^n with O(1) membership and canonical iteration.
class F2Set {
 public:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  explicit F2Set(int dim);
  /// Deduplicates and sorts; every pattern must fit in `dim` bits.
  F2Set(int dim, std::vector<std::uint64_t> elements);

  static F2Set from_vectors(int dim, std::span<const F2Vector> vectors);

  int dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  bool is_dense() const noexcept { return dim_ <= kDenseThreshold; }

  /// Ascending bit patterns.
  std::span<const std::uint64_t> elements() const noexcept { return elements_; }
  auto begin() const noexcept { return elements_.begin(); }
  auto end() const noexcept { return elements_.end(); }

  F2Vector at(std::size_t i) const { return F2Vector(elements_.at(i), dim_); }
  std::uint64_t min_element() const;

  bool contains(std::uint64_t bits) const noexcept;
  bool contains(const F2Vector& v) const;
  /// Position in canonical order, or npos.
  std::size_t index_of(std::uint64_t bits) const noexcept;

  bool is_subset_of(const F2Set& other) const;

  friend bool operator==(const F2Set& a, const F2Set& b) {
    return a.dim_ == b.dim_ && a.elements_ == b.elements_;
  }

 private:
  void build_index();

  int dim_;
  std::vector<std::uint64_t> elements_;
  std::vector<std::uint64_t> bitmap_;
  std::unordered_set<std::uint64_t> hashed_;
};

}  // namespace pfrkit
