#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace ldsw {

using Integer = mpz_class;
using Rational = mpq_class;

// "p/q", or "p" when q == 1
std::string format_rational(const Rational& r);
// always "p/q"
std::string format_rational_full(const Rational& r);
// accepts "p", "p/q", optional sign; throws Error(ParseError)
Rational parse_rational(const std::string& s);

Integer floor_q(const Rational& r);
Integer ceil_q(const Rational& r);
Rational abs_q(const Rational& r);
Rational pow_q(const Rational& r, long e);
Integer pow_z(const Integer& b, unsigned long e);
Integer lcm_z(const Integer& a, const Integer& b);
// floor(log2 |x|), x != 0
long ilog2(const Integer& x);
// upper bound for log2|r|, r != 0
double log2_upper(const Rational& r);

using RVec = std::vector<Rational>;

}  // namespace ldsw
