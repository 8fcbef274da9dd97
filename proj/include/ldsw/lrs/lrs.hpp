#pragma once

#include <optional>
#include <vector>

#include "ldsw/exactnum/algnum.hpp"
#include "ldsw/exactnum/matrix.hpp"
#include "ldsw/lrs/weight.hpp"

namespace ldsw::lrs {

// u_{n+d} = sum_i a_i u_{n+i}; initial terms u_0..u_{d-1}.
class Lrs {
 public:
  Lrs() = default;  // zero sequence, order 0
  Lrs(RVec coeffs, RVec initial);

  static Lrs constant(const Rational& c);
  // c * r^n
  static Lrs geometric(const Rational& r, const Rational& c = 1);
  // u_n = n
  static Lrs index();

  int order() const { return (int)a_.size(); }
  const RVec& coeffs() const { return a_; }
  const RVec& initial() const { return init_; }
  // x^d - sum a_i x^i
  QPoly charpoly() const;
  bool operator==(const Lrs& o) const { return a_ == o.a_ && init_ == o.init_; }

 private:
  RVec a_, init_;
};

Rational term(const Lrs& s, unsigned long n);
// x^n mod charpoly; O(d^2 log n)
Rational term_fast(const Lrs& s, unsigned long n);
RVec terms(const Lrs& s, size_t count);
// Berlekamp-Massey; exact when t holds at least twice the true order
Lrs from_terms(const RVec& t);
Lrs minimize(const Lrs& s);
bool is_zero(const Lrs& s);

struct Companion {
  QMatrix C;
  RVec q;
};
// u_n = e_1^T C^n q
Companion companion(const Lrs& s);

Lrs add(const Lrs& s, const Lrs& t);
Lrs sub(const Lrs& s, const Lrs& t);
Lrs mul(const Lrs& s, const Lrs& t);
Lrs scale(const Lrs& s, const Rational& c);
// n -> u_{n+k}
Lrs shift(const Lrs& s, unsigned long k);
// n -> u_{nR+r}
Lrs subsequence(const Lrs& s, unsigned long R, unsigned long r);

// n -> e_i^T M^n q
Lrs lds_coordinate(const QMatrix& M, const RVec& q, int i);
// n -> w(M^n q)
Lrs weight_sequence(const QMatrix& M, const RVec& q, const PolyWeight& w);
// n -> sum_{k<=n} u_k
Lrs partial_sums(const Lrs& s);

// One summand family: for each root y of S the coefficient of n^e y^n is C[e](y).
struct RootClass {
  QPoly S;  // monic square-free, S(0) != 0
  int mult = 0;
  std::vector<QPoly> C;  // size mult, each reduced mod S
};

struct ExpTerm {
  AlgNum root;
  std::vector<QPoly> coeff_polys;
  int degree = 0;  // degree of p(n) = sum_e coeff_polys[e](root) n^e

  AlgNum coeff(int e) const;
  CInterval coeff_enclosure(int e, long bits) const;
};

// u_n = sum_j p_j(n) root_j^n for n >= offset (zero roots account for the prefix).
class ExpPolyForm {
 public:
  ExpPolyForm() = default;
  ExpPolyForm(unsigned long offset, std::vector<RootClass> classes);

  unsigned long offset() const { return offset_; }
  const std::vector<RootClass>& classes() const { return classes_; }
  const std::vector<ExpTerm>& terms() const { return terms_; }
  // sum of (deg p_j + 1)
  int size() const;
  // exact value of the form at n, through power sums of the classes
  Rational value(unsigned long n) const;
  CInterval eval(unsigned long n, long bits) const;

 private:
  unsigned long offset_ = 0;
  std::vector<RootClass> classes_;
  std::vector<ExpTerm> terms_;
};

ExpPolyForm exp_poly(const Lrs& s);
// smallest n < size() with a nonzero value; throws InternalInconsistency when all vanish
std::optional<unsigned long> first_nonzero(const ExpPolyForm& f);

struct NondegenerateSplit {
  unsigned long R = 1;
  std::vector<Lrs> subsequences;
};
NondegenerateSplit nondegenerate_split(const Lrs& s);
// multiplicative order of a/b when it is a root of unity
std::optional<unsigned long> ratio_root_of_unity_order(const AlgNum& a, const AlgNum& b);
// no ratio of distinct roots is a root of unity and no real root is negative
bool is_nondegenerate(const ExpPolyForm& f);

}  // namespace ldsw::lrs
