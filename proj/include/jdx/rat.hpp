#ifndef JDX_RAT_HPP
#define JDX_RAT_HPP

#include <gmpxx.h>

#include <string>

#include "jdx/error.hpp"

namespace jdx {

// Exact rational scalar. mpq_class keeps values canonical as long as they are
// produced by arithmetic; only the raw two-integer constructor needs an
// explicit canonicalize, which the helpers below take care of.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
  if (den == 0) throw DivisionError("rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat rat(const Int& num, const Int& den) {
  if (den == 0) throw DivisionError("rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

// Accepts "p", "-p", "p/q" with optional whitespace padding.
inline Rat rat_from_string(const std::string& s) {
  auto first = s.find_first_not_of(" \t");
  auto last = s.find_last_not_of(" \t");
  if (first == std::string::npos) throw Error("rat_from_string: empty string");
  std::string body = s.substr(first, last - first + 1);
  Rat q;
  if (mpq_set_str(q.get_mpq_t(), body.c_str(), 10) != 0)
    throw Error("rat_from_string: cannot parse '" + body + "'");
  if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0)
    throw DivisionError("rat_from_string: zero denominator in '" + body + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rat& q) { return q.get_str(); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Int to_int(const Rat& q) {
  if (!is_integer(q)) throw Error("to_int: " + to_string(q) + " is not an integer");
  return q.get_num();
}

inline int sgn(const Rat& q) { return mpq_sgn(q.get_mpq_t()); }

inline Rat abs(const Rat& q) { return sgn(q) < 0 ? Rat(-q) : q; }

inline Rat pow_rat(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  Rat b = base;
  bool inv = e < 0;
  unsigned long k = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  if (inv) {
    if (sgn(b) == 0) throw DivisionError("pow_rat: inverse of zero");
    b = Rat(1) / b;
  }
  Rat acc(1);
  while (k) {
    if (k & 1) acc *= b;
    b *= b;
    k >>= 1;
  }
  return acc;
}

// Rising factorial (x)_m. For m < 0 uses (x)_{-m} = 1 / prod_{r=1..|m|} (x-r),
// the unique extension with (x)_a (x+a)_b = (x)_{a+b} for integer a, b.
inline Rat pochhammer(const Rat& x, long m) {
  Rat acc(1);
  if (m >= 0) {
    for (long r = 0; r < m; ++r) acc *= x + Rat(r);
    return acc;
  }
  for (long r = 1; r <= -m; ++r) {
    Rat f = x - Rat(r);
    if (sgn(f) == 0) throw PoleError("pochhammer: (x)_m undefined, hits zero factor");
    acc *= f;
  }
  return Rat(1) / acc;
}

inline Rat factorial(long m) {
  if (m < 0) throw Error("factorial of negative integer");
  return pochhammer(Rat(1), m);
}

}  // namespace jdx

#endif
