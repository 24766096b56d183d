#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "pfrkit/f2set.hpp"
#include "pfrkit/f2vector.hpp"
#include "pfrkit/rational.hpp"

namespace testing_util {

/// Set from binary words, e.g. bin({"00", "01", "10"}).
inline pfrkit::F2Set bin(std::initializer_list<const char*> words) {
  std::vector<std::uint64_t> elems;
  int dim = 0;
  for (const char* w : words) {
    const auto v = pfrkit::F2Vector::from_binary(w);
    dim = v.dim();
    elems.push_back(v.bits());
  }
  return pfrkit::F2Set(dim, std::move(elems));
}

inline pfrkit::F2Vector vec(const char* word) { return pfrkit::F2Vector::from_binary(word); }

inline pfrkit::Rational q(long num, long den = 1) { return pfrkit::Rational(num, den); }

}  // namespace testing_util
