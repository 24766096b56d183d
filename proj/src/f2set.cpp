#include "pfrkit/f2set.hpp"

#include <algorithm>

#include "pfrkit/error.hpp"

namespace pfrkit {

F2Set::F2Set(int dim) : dim_(dim) {
  require_valid_dim(dim);
  build_index();
}

F2Set::F2Set(int dim, std::vector<std::uint64_t> elements)
    : dim_(dim), elements_(std::move(elements)) {
  require_valid_dim(dim);
  const std::uint64_t mask = dim_mask(dim);
  for (std::uint64_t e : elements_) {
    if ((e & ~mask) != 0) {
      throw OutOfRange("element " + std::to_string(e) + " does not fit in dimension " +
                       std::to_string(dim));
    }
  }
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  build_index();
}

F2Set F2Set::from_vectors(int dim, std::span<const F2Vector> vectors) {
  std::vector<std::uint64_t> bits;
  bits.reserve(vectors.size());
  for (const auto& v : vectors) {
    require_same_dim(dim, v.dim(), "F2Set::from_vectors");
    bits.push_back(v.bits());
  }
  return F2Set(dim, std::move(bits));
}

void F2Set::build_index() {
  if (is_dense()) {
    bitmap_.assign(((std::size_t{1} << dim_) + 63) / 64, 0);
    for (std::uint64_t e : elements_) bitmap_[e >> 6] |= std::uint64_t{1} << (e & 63);
  } else {
    hashed_.reserve(elements_.size());
    hashed_.insert(elements_.begin(), elements_.end());
  }
}

std::uint64_t F2Set::min_element() const {
  if (elements_.empty()) throw EmptyInput("min_element of an empty set");
  return elements_.front();
}

bool F2Set::contains(std::uint64_t bits) const noexcept {
  if ((bits & ~dim_mask(dim_)) != 0) return false;
  if (is_dense()) return (bitmap_[bits >> 6] >> (bits & 63)) & 1U;
  return hashed_.count(bits) != 0;
}

bool F2Set::contains(const F2Vector& v) const {
  require_same_dim(dim_, v.dim(), "F2Set::contains");
  return contains(v.bits());
}

std::size_t F2Set::index_of(std::uint64_t bits) const noexcept {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), bits);
  if (it == elements_.end() || *it != bits) return npos;
  return static_cast<std::size_t>(it - elements_.begin());
}

bool F2Set::is_subset_of(const F2Set& other) const {
  require_same_dim(dim_, other.dim_, "F2Set::is_subset_of");
  return std::all_of(elements_.begin(), elements_.end(),
                     [&](std::uint64_t e) { return other.contains(e); });
}

}  // namespace pfrkit
