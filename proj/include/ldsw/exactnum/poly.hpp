#pragma once

#include <utility>
#include <vector>

#include "ldsw/exactnum/rational.hpp"

namespace ldsw {

// Univariate polynomial over Q, lowest degree first, no trailing zeros.
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rational> c);
  static QPoly constant(const Rational& c);
  static QPoly monomial(const Rational& c, int deg);
  static QPoly x_minus(const Rational& r);

  int degree() const { return (int)c_.size() - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const Rational& operator[](int i) const { return c_[i]; }
  Rational coeff(int i) const { return i >= 0 && i < (int)c_.size() ? c_[i] : Rational(0); }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& lead() const { return c_.back(); }

  QPoly operator+(const QPoly& o) const;
  QPoly operator-(const QPoly& o) const;
  QPoly operator-() const;
  QPoly operator*(const QPoly& o) const;
  QPoly operator*(const Rational& s) const;
  bool operator==(const QPoly& o) const { return c_ == o.c_; }
  bool operator!=(const QPoly& o) const { return !(c_ == o.c_); }

  Rational eval(const Rational& x) const;
  QPoly derivative() const;
  QPoly monic() const;
  // p(x) -> x^deg p(1/x)
  QPoly reversed() const;
  // p(x) -> p(s x)
  QPoly scaled(const Rational& s) const;
  // p(x) -> p(x + r)
  QPoly shifted(const Rational& r) const;
  QPoly compose(const QPoly& q) const;

 private:
  void trim();
  std::vector<Rational> c_;
};

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b);
QPoly operator%(const QPoly& a, const QPoly& b);
QPoly operator/(const QPoly& a, const QPoly& b);
// monic gcd; gcd(0,0) = 0
QPoly gcd(const QPoly& a, const QPoly& b);
// s*a + t*b = g (monic gcd)
void ext_gcd(const QPoly& a, const QPoly& b, QPoly& g, QPoly& s, QPoly& t);
QPoly pow(const QPoly& p, unsigned e);
QPoly powmod(const QPoly& base, unsigned long e, const QPoly& mod);
// Yun: p = c * prod f_i^i, returns (f_i, i) with deg f_i > 0, f_i monic square-free
std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p);
QPoly squarefree_part(const QPoly& p);
// x^k - 1 divided by lower cyclotomics
QPoly cyclotomic(int k);
int euler_phi(int k);

// Integer polynomial, lowest degree first.
struct IntPoly {
  std::vector<Integer> c;
  int degree() const { return (int)c.size() - 1; }
  const Integer& lead() const { return c.back(); }
  bool operator==(const IntPoly& o) const { return c == o.c; }
  Integer content() const;
  // naive height H: max |coefficient|
  Integer height() const;
  QPoly to_q() const;
};

// primitive integer multiple with positive leading coefficient
IntPoly primitive_part(const QPoly& p);
// every root has modulus <= the returned rational
Rational cauchy_bound(const IntPoly& p);
// sum of squares of coefficients
Integer norm2_squared(const IntPoly& p);

}  // namespace ldsw
