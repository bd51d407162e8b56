// Exact rational scalars. Thin helpers over GMP's mpq_class: canonical
// "p/q" string round-trip and a few conversions the rest of the code needs.

#ifndef SHINTANI_RATIONAL_HPP_
#define SHINTANI_RATIONAL_HPP_

#include <gmpxx.h>

#include <string>
#include <vector>

namespace shintani {

using Int = mpz_class;
using Rat = mpq_class;

// Canonical form: reduced, denominator positive, always with an explicit
// denominator ("3/1", "-2/5"). parse_rat accepts both "p" and "p/q".
std::string rat_to_string(const Rat& x);
Rat parse_rat(const std::string& s);  // throws ValidationError on junk

inline int sign_of(const Rat& x) { return sgn(x); }

// max(|numerator|, |denominator|); crude size measure used by search bounds.
Int rat_height(const Rat& x);

}  // namespace shintani

#endif  // SHINTANI_RATIONAL_HPP_
