#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ldsw/exactnum/interval.hpp"
#include "ldsw/exactnum/poly.hpp"
#include "ldsw/exactnum/roots.hpp"

namespace ldsw {

// Exact complex algebraic number: square-free primitive integer polynomial
// plus an isolating rectangle. Rationals always carry a degree-1 polynomial.
class AlgNum {
 public:
  AlgNum();  // zero
  AlgNum(const Rational& q);  // NOLINT(google-explicit-constructor)
  AlgNum(long q) : AlgNum(Rational(q)) {}  // NOLINT(google-explicit-constructor)
  // p square-free; r an isolating root of p
  static AlgNum from_root(const IntPoly& p, const IsolatedRoot& r);

  const IntPoly& poly() const;
  int degree() const { return poly().degree(); }
  // isolating box as constructed
  const Box& isolating_box() const;
  // best box known so far
  Box box() const;
  bool is_rational() const;
  const Rational& rational() const;  // requires is_rational()
  bool is_real() const;
  bool is_zero() const { return is_rational() && rational() == 0; }

  // box of side <= width; cached, the value itself never changes
  Box refine(const Rational& width) const;
  // enclosure with side <= 2^-bits
  CInterval enclosure(long bits) const;
  double approx_re() const;
  double approx_im() const;

  AlgNum conj() const;
  AlgNum operator-() const;

  // identity of the representation, used to dedupe leaves
  const void* id() const { return rep_.get(); }
  std::string to_string() const;

  struct Rep;

 private:
  std::shared_ptr<Rep> rep_;
};

std::vector<std::pair<AlgNum, int>> poly_roots(const IntPoly& p);
std::vector<std::pair<AlgNum, int>> poly_roots(const QPoly& p);
// roots of a square-free polynomial
std::vector<AlgNum> squarefree_roots(const QPoly& p);

// q(a) == 0, decided exactly
bool is_root_of(const AlgNum& a, const QPoly& q);
bool alg_equal(const AlgNum& a, const AlgNum& b);
// sign of a - b for real a, b
int compare_real(const AlgNum& a, const AlgNum& b);
int sign_real(const AlgNum& a);
// sign of |a| - r, r >= 0
int compare_modulus(const AlgNum& a, const Rational& r);

enum class ArithOp { Add, Sub, Mul, Div };
AlgNum alg_arith(const AlgNum& a, const AlgNum& b, ArithOp op);
AlgNum alg_pow(const AlgNum& a, long e);
// value c(y) at y = root (c a polynomial over Q)
AlgNum alg_poly_at(const QPoly& c, const AlgNum& root);
// identify which root of square-free q equals the value enclosed by f(bits)
template <class F>
AlgNum identify_root(const QPoly& q, F enclose);

bool is_unit_modulus(const AlgNum& a);
std::optional<int> root_of_unity_order(const AlgNum& a);
IntPoly minimal_polynomial(const AlgNum& a);
// [lo, hi] enclosing the absolute logarithmic Weil height
Interval weil_height(const AlgNum& a, mpfr_prec_t prec = 128);

// internals shared with the template below
AlgNum identify_root_impl(const QPoly& q, const std::function<CInterval(long)>& enclose);

template <class F>
AlgNum identify_root(const QPoly& q, F enclose) {
  return identify_root_impl(q, std::function<CInterval(long)>(enclose));
}

}  // namespace ldsw
