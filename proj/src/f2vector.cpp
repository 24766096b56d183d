#include "pfrkit/f2vector.hpp"

#include <bit>

#include "pfrkit/error.hpp"

namespace pfrkit {

void require_valid_dim(int dim) {
  if (dim < 1 || dim > kMaxDim) {
    throw OutOfRange("dimension " + std::to_string(dim) + " outside [1, 64]");
  }
}

void require_same_dim(int lhs, int rhs, std::string_view where) {
  if (lhs != rhs) {
    throw DimensionMismatch(std::string(where) + ": dimension " + std::to_string(lhs) +
                            " vs " + std::to_string(rhs));
  }
}

F2Vector::F2Vector(std::uint64_t bits, int dim) : bits_(bits), dim_(dim) {
  require_valid_dim(dim);
  if ((bits & ~dim_mask(dim)) != 0) {
    throw OutOfRange("bit pattern has bits above dimension " + std::to_string(dim));
  }
}

F2Vector F2Vector::unit(int coordinate, int dim) {
  require_valid_dim(dim);
  if (coordinate < 1 || coordinate > dim) {
    throw OutOfRange("coordinate " + std::to_string(coordinate) + " outside [1, " +
                     std::to_string(dim) + "]");
  }
  return F2Vector(std::uint64_t{1} << (dim - coordinate), dim);
}

F2Vector F2Vector::from_binary(std::string_view text) {
  const int dim = static_cast<int>(text.size());
  require_valid_dim(dim);
  std::uint64_t bits = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw OutOfRange("'" + std::string(text) + "' is not a binary string");
    }
    bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return F2Vector(bits, dim);
}

int F2Vector::weight() const noexcept { return std::popcount(bits_); }

std::string F2Vector::to_binary() const { return pfrkit::to_binary(bits_, dim_); }

F2Vector F2Vector::operator+(const F2Vector& other) const {
  require_same_dim(dim_, other.dim_, "vector addition");
  return F2Vector(bits_ ^ other.bits_, dim_);
}

F2Vector& F2Vector::operator+=(const F2Vector& other) {
  require_same_dim(dim_, other.dim_, "vector addition");
  bits_ ^= other.bits_;
  return *this;
}

std::string to_binary(std::uint64_t bits, int dim) {
  std::string out(static_cast<std::size_t>(dim), '0');
  for (int i = 0; i < dim; ++i) {
    if ((bits >> (dim - 1 - i)) & 1U) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

}  // namespace pfrkit
