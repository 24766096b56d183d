#pragma once

#include "pfrkit/f2set.hpp"
#include "pfrkit/f2vector.hpp"
#include "pfrkit/rational.hpp"
#include "pfrkit/span.hpp"

namespace pfrkit {

/// {a + b : a in A, b in B}. Both sets nonempty and of equal dimension.
F2Set sumset(const F2Set& a, const F2Set& b);

/// A(s) = A ∩ (s + A) = {a in A : a + s in A}.
F2Set symmetry_set(const F2Set& a, const F2Vector& s);

/// K = |2A| / |A|.
Rational doubling(const F2Set& a);

/// {a + x : a in A}.
F2Set translate(const F2Set& a, const F2Vector& x);

}  // namespace pfrkit
