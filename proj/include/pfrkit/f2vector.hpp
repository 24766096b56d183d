#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace pfrkit {

inline constexpr int kMaxDim = 64;

/// Mask with the low `dim` bits set.
constexpr std::uint64_t dim_mask(int dim) {
  return dim >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << dim) - 1;
}

void require_valid_dim(int dim);
void require_same_dim(int lhs, int rhs, std::string_view where);

/// An element of F_2^n. Coordinate 1 is the most significant of the `dim`
/// low bits, so the binary rendering reads coordinates left to right.
class F2Vector {
 public:
  F2Vector(std::uint64_t bits, int dim);

  static F2Vector zero(int dim) { return F2Vector(0, dim); }
  /// Unit vector e_coordinate, coordinate in [1, dim].
  static F2Vector unit(int coordinate, int dim);
  /// Parses a string of exactly `dim` characters from {0,1}; dim is the length.
  static F2Vector from_binary(std::string_view text);

  std::uint64_t bits() const noexcept { return bits_; }
  int dim() const noexcept { return dim_; }
  bool is_zero() const noexcept { return bits_ == 0; }
  int weight() const noexcept;

  std::string to_binary() const;

  F2Vector operator+(const F2Vector& other) const;
  F2Vector& operator+=(const F2Vector& other);

  friend bool operator==(const F2Vector&, const F2Vector&) = default;
  friend auto operator<=>(const F2Vector& a, const F2Vector& b) {
    if (auto c = a.dim_ <=> b.dim_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  std::uint64_t bits_;
  int dim_;
};

std::string to_binary(std::uint64_t bits, int dim);

}  // namespace pfrkit
