#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace amalg {

// All core arithmetic is exact. Rat is a reduced fraction of arbitrary
// precision; the only floating-point surface in the library is the
// approximate branch of nth_root.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// "3", "-7/2", "0.25" -> exact value. Decimal strings are exact
// (0.25 -> 1/4); nullopt on anything else (including "1/0").
std::optional<Rat> parse_rat(std::string_view s);

// Canonical form: "p/q" with q > 1, plain "p" for integers.
std::string rat_str(const Rat& r);

double to_double(const Rat& r);

bool is_integer(const Rat& r);

// base^e for e >= 0.
Rat pow_rat(const Rat& base, unsigned e);

// Exact n-th root of r >= 0 if numerator and denominator are both
// perfect n-th powers; nullopt otherwise.
std::optional<Rat> exact_nth_root(const Rat& r, unsigned n);

}  // namespace amalg
