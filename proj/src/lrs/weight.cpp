#include "ldsw/lrs/weight.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ldsw/exactnum/errors.hpp"

namespace ldsw {

PolyWeight::PolyWeight(int arity, std::vector<Monomial> monos) : arity_(arity) {
  std::map<std::vector<int>, Rational> acc;
  for (auto& m : monos) {
    if ((int)m.exps.size() != arity) throw Error(ErrorCode::DimensionMismatch, "monomial arity differs from weight arity");
    for (int e : m.exps)
      if (e < 0) throw Error(ErrorCode::InvalidParameters, "negative exponent");
    acc[m.exps] += m.coeff;
  }
  for (auto& [e, c] : acc)
    if (c != 0) monos_.push_back({c, e});
}

PolyWeight PolyWeight::constant(int arity, const Rational& c) {
  return PolyWeight(arity, {{c, std::vector<int>(arity, 0)}});
}

PolyWeight PolyWeight::variable(int arity, int i) {
  std::vector<int> e(arity, 0);
  e.at(i) = 1;
  return PolyWeight(arity, {{1, e}});
}

int PolyWeight::degree() const {
  int d = -1;
  for (auto& m : monos_) {
    int s = 0;
    for (int e : m.exps) s += e;
    d = std::max(d, s);
  }
  return d;
}

Rational PolyWeight::eval(const RVec& x) const {
  if ((int)x.size() != arity_) throw Error(ErrorCode::DimensionMismatch, "weight evaluated at a vector of wrong size");
  Rational s = 0;
  for (auto& m : monos_) {
    Rational t = m.coeff;
    for (int i = 0; i < arity_; ++i)
      if (m.exps[i]) t *= pow_q(x[i], m.exps[i]);
    s += t;
  }
  return s;
}

double PolyWeight::eval_d(const std::vector<double>& x) const {
  double s = 0;
  for (auto& m : monos_) {
    double t = m.coeff.get_d();
    for (int i = 0; i < arity_; ++i)
      if (m.exps[i]) t *= std::pow(x[i], m.exps[i]);
    s += t;
  }
  return s;
}

PolyWeight PolyWeight::operator*(const Rational& c) const {
  std::vector<Monomial> m = monos_;
  for (auto& x : m) x.coeff *= c;
  return PolyWeight(arity_, m);
}

PolyWeight PolyWeight::operator+(const PolyWeight& o) const {
  if (o.arity_ != arity_) throw Error(ErrorCode::DimensionMismatch, "weights of different arity");
  std::vector<Monomial> m = monos_;
  m.insert(m.end(), o.monos_.begin(), o.monos_.end());
  return PolyWeight(arity_, m);
}

bool PolyWeight::operator==(const PolyWeight& o) const {
  if (arity_ != o.arity_ || monos_.size() != o.monos_.size()) return false;
  for (size_t i = 0; i < monos_.size(); ++i)
    if (monos_[i].coeff != o.monos_[i].coeff || monos_[i].exps != o.monos_[i].exps) return false;
  return true;
}

}  // namespace ldsw
