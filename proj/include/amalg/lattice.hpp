#pragma once

#include "amalg/vec.hpp"

namespace amalg {

// Pointwise vector-lattice structure. All binary operations require both
// operands to conform to the same space shape (PreconditionError otherwise)
// and return canonical vectors.

Vec add(const Vec& x, const Vec& y);
Vec sub(const Vec& x, const Vec& y);
Vec scale(const Rat& a, const Vec& x);
Vec negate(const Vec& x);

Vec join(const Vec& x, const Vec& y);  // x v y
Vec meet(const Vec& x, const Vec& y);  // x ^ y
Vec abs_vec(const Vec& x);
Vec pos_part(const Vec& x);
Vec neg_part(const Vec& x);

bool leq(const Vec& x, const Vec& y);  // coordinatewise partial order
bool is_positive(const Vec& x);
bool disjoint(const Vec& x, const Vec& y);  // |x| ^ |y| = 0

// Norm in the given space (exact rational).
Rat norm(const ModelSpace& s, const Vec& x);

}  // namespace amalg
