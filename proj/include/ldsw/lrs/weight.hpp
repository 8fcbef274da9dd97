#pragma once

#include <vector>

#include "ldsw/exactnum/rational.hpp"

namespace ldsw {

struct Monomial {
  Rational coeff;
  std::vector<int> exps;
};

// Multivariate polynomial over Q in d variables.
class PolyWeight {
 public:
  PolyWeight() = default;
  // merges repeated exponent vectors and drops zero coefficients
  PolyWeight(int arity, std::vector<Monomial> monos);
  static PolyWeight constant(int arity, const Rational& c);
  // the single variable x_i (0-based)
  static PolyWeight variable(int arity, int i);

  int arity() const { return arity_; }
  const std::vector<Monomial>& monomials() const { return monos_; }
  int degree() const;
  bool is_zero() const { return monos_.empty(); }
  bool is_constant() const { return degree() <= 0; }

  Rational eval(const RVec& x) const;
  double eval_d(const std::vector<double>& x) const;
  PolyWeight operator*(const Rational& c) const;
  PolyWeight operator+(const PolyWeight& o) const;
  bool operator==(const PolyWeight& o) const;

 private:
  int arity_ = 0;
  std::vector<Monomial> monos_;  // sorted by exponent vector
};

}  // namespace ldsw
