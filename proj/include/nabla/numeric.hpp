// Exact arithmetic used throughout: arbitrary-precision integers for bag
// counts and flows, rationals for distribution weights. Never floating point.
#pragma once

#include <gmpxx.h>

#include <string>

namespace nabla {

using Int = mpz_class;
using Rat = mpq_class;

inline int cmp3(const Int& a, const Int& b) {
  int c = cmp(a, b);
  return (c > 0) - (c < 0);
}

inline int cmp3(const Rat& a, const Rat& b) {
  int c = cmp(a, b);
  return (c > 0) - (c < 0);
}

inline std::string to_text(const Int& v) { return v.get_str(); }

// Canonical rational form "p/q", or "p" when the denominator is 1.
inline std::string to_text(const Rat& v) { return v.get_str(); }

}  // namespace nabla
