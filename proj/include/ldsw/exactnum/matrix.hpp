#pragma once

#include <optional>
#include <vector>

#include "ldsw/exactnum/poly.hpp"
#include "ldsw/exactnum/rational.hpp"

namespace ldsw {

// Dense row-major matrix over Q.
class QMatrix {
 public:
  QMatrix() = default;
  QMatrix(int rows, int cols) : r_(rows), c_(cols), a_((size_t)rows * cols) {}
  static QMatrix identity(int n);
  static QMatrix from_rows(const std::vector<RVec>& rows);

  int rows() const { return r_; }
  int cols() const { return c_; }
  Rational& operator()(int i, int j) { return a_[(size_t)i * c_ + j]; }
  const Rational& operator()(int i, int j) const { return a_[(size_t)i * c_ + j]; }
  bool operator==(const QMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

  QMatrix operator*(const QMatrix& o) const;
  QMatrix operator+(const QMatrix& o) const;
  QMatrix operator-(const QMatrix& o) const;
  QMatrix operator*(const Rational& s) const;
  RVec operator*(const RVec& v) const;
  QMatrix transpose() const;
  QMatrix pow(unsigned long e) const;
  RVec row(int i) const;
  RVec col(int j) const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<Rational> a_;
};

// reduced row echelon form in place; returns pivot columns
std::vector<int> rref(QMatrix& a);
int rank(const QMatrix& a);
// basis of {x : A x = 0}
std::vector<RVec> nullspace(const QMatrix& a);
// basis of the column space (subset of the columns)
std::vector<RVec> column_basis(const QMatrix& a);
// some solution of A x = b, or none
std::optional<RVec> solve(const QMatrix& a, const RVec& b);
// det(x I - A), via Hessenberg reduction
QPoly charpoly(const QMatrix& a);
// companion of a monic polynomial p (degree n): last row is -p_0..-p_{n-1}
QMatrix companion_of(const QPoly& monic_p);
QMatrix kronecker(const QMatrix& a, const QMatrix& b);

}  // namespace ldsw
