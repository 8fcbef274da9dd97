#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ldsw/exactnum/algnum.hpp"

namespace ldsw {

// Polynomial expression over algebraic leaves with a Liouville-type lower bound:
// if the value E is nonzero then |E| >= U^(1-D) / K, where K*E is an algebraic
// integer whose conjugates are bounded by U and D bounds its degree.
class AlgExpr {
 public:
  AlgExpr();  // zero
  static AlgExpr rational(const Rational& q);
  static AlgExpr leaf(const AlgNum& a, bool conj = false);
  // c(a) for a polynomial c over Q
  static AlgExpr poly_at(const QPoly& c, const AlgNum& a, bool conj = false);

  AlgExpr operator+(const AlgExpr& o) const;
  AlgExpr operator-(const AlgExpr& o) const;
  AlgExpr operator*(const AlgExpr& o) const;
  AlgExpr operator-() const;
  AlgExpr pow(unsigned long e) const;
  AlgExpr conj() const;

  // enclosure computed with leaves refined to width 2^-bits
  CInterval eval(long bits) const;
  // log2 of the zero-separation threshold (negative)
  double log2_threshold() const;
  // exact value is rational (no algebraic leaves)
  std::optional<Rational> as_rational() const;

  struct Node;

 private:
  std::shared_ptr<const Node> n_;
};

// decided exactly through the separation bound; throws PrecisionExhausted past the budget
bool is_zero(const AlgExpr& e, long max_bits = 1L << 22);
// sign of a real-valued expression
int sign_of(const AlgExpr& e, long max_bits = 1L << 22);
// sign of |a| - |b|
int compare_moduli(const AlgNum& a, const AlgNum& b);

}  // namespace ldsw
