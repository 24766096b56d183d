#include "pfrkit/span.hpp"

#include <algorithm>
#include <bit>

#include "pfrkit/error.hpp"

namespace pfrkit {
namespace {

int leading_bit(std::uint64_t v) { return 63 - std::countl_zero(v); }

}  // namespace

SpanBasis::SpanBasis(int dim) : dim_(dim) { require_valid_dim(dim); }

std::uint64_t SpanBasis::reduce(std::uint64_t v) const noexcept {
  for (std::uint64_t row : rows_) {
    if ((v >> leading_bit(row)) & 1U) v ^= row;
  }
  return v;
}

bool SpanBasis::insert(std::uint64_t v) {
  if ((v & ~dim_mask(dim_)) != 0) {
    throw OutOfRange("vector does not fit in dimension " + std::to_string(dim_));
  }
  const std::uint64_t residue = reduce(v);
  if (residue == 0) return false;
  const int lead = leading_bit(residue);
  auto pos = std::find_if(rows_.begin(), rows_.end(),
                          [lead](std::uint64_t row) { return leading_bit(row) < lead; });
  rows_.insert(pos, residue);
  return true;
}

bool SpanBasis::insert(const F2Vector& v) {
  require_same_dim(dim_, v.dim(), "SpanBasis::insert");
  return insert(v.bits());
}

bool SpanBasis::contains(const F2Vector& v) const {
  require_same_dim(dim_, v.dim(), "SpanBasis::contains");
  return contains(v.bits());
}

std::vector<F2Vector> SpanBasis::rows() const {
  std::vector<F2Vector> out;
  out.reserve(rows_.size());
  for (std::uint64_t row : rows_) out.emplace_back(row, dim_);
  return out;
}

SpanBasis span_basis(const F2Set& a) {
  if (a.empty()) throw EmptyInput("span_basis of an empty set");
  SpanBasis basis(a.dim());
  for (std::uint64_t e : a) {
    basis.insert(e);
    if (basis.rank() == a.dim()) break;
  }
  return basis;
}

SpanBasis sumset_span_basis(const F2Set& a) {
  if (a.empty()) throw EmptyInput("sumset_span_basis of an empty set");
  SpanBasis basis(a.dim());
  const std::uint64_t anchor = a.min_element();
  for (std::uint64_t e : a) {
    basis.insert(e ^ anchor);
    if (basis.rank() == a.dim()) break;
  }
  return basis;
}

}  // namespace pfrkit
