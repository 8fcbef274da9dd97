#include "ldsw/exactnum/matrix.hpp"

#include "ldsw/exactnum/errors.hpp"

namespace ldsw {

QMatrix QMatrix::identity(int n) {
  QMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

QMatrix QMatrix::from_rows(const std::vector<RVec>& rows) {
  int r = (int)rows.size();
  int c = r ? (int)rows[0].size() : 0;
  QMatrix m(r, c);
  for (int i = 0; i < r; ++i) {
    if ((int)rows[i].size() != c) throw Error(ErrorCode::DimensionMismatch, "ragged matrix rows");
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

QMatrix QMatrix::operator*(const QMatrix& o) const {
  if (c_ != o.r_) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  QMatrix m(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const Rational& x = (*this)(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.c_; ++j) m(i, j) += x * o(k, j);
    }
  return m;
}

QMatrix QMatrix::operator+(const QMatrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw Error(ErrorCode::DimensionMismatch, "matrix sum");
  QMatrix m = *this;
  for (size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
  return m;
}

QMatrix QMatrix::operator-(const QMatrix& o) const { return *this + o * Rational(-1); }

QMatrix QMatrix::operator*(const Rational& s) const {
  QMatrix m = *this;
  for (auto& x : m.a_) x *= s;
  return m;
}

RVec QMatrix::operator*(const RVec& v) const {
  if ((int)v.size() != c_) throw Error(ErrorCode::DimensionMismatch, "matrix-vector product");
  RVec out(r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      if ((*this)(i, j) != 0) out[i] += (*this)(i, j) * v[j];
  return out;
}

QMatrix QMatrix::transpose() const {
  QMatrix m(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

QMatrix QMatrix::pow(unsigned long e) const {
  QMatrix r = identity(r_), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

RVec QMatrix::row(int i) const { return RVec(a_.begin() + (size_t)i * c_, a_.begin() + (size_t)(i + 1) * c_); }

RVec QMatrix::col(int j) const {
  RVec v(r_);
  for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<int> rref(QMatrix& a) {
  std::vector<int> piv;
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int p = -1;
    for (int i = r; i < a.rows(); ++i)
      if (a(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < a.cols(); ++j) std::swap(a(p, j), a(r, j));
    Rational inv = Rational(1) / a(r, c);
    for (int j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Rational f = a(i, c);
      for (int j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

int rank(const QMatrix& a) {
  QMatrix t = a;
  return (int)rref(t).size();
}

std::vector<RVec> nullspace(const QMatrix& a) {
  QMatrix t = a;
  auto piv = rref(t);
  std::vector<bool> is_piv(a.cols());
  for (int c : piv) is_piv[c] = true;
  std::vector<RVec> out;
  for (int f = 0; f < a.cols(); ++f) {
    if (is_piv[f]) continue;
    RVec v(a.cols());
    v[f] = 1;
    for (size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -t((int)k, f);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<RVec> column_basis(const QMatrix& a) {
  QMatrix t = a;
  auto piv = rref(t);
  std::vector<RVec> out;
  for (int c : piv) out.push_back(a.col(c));
  return out;
}

std::optional<RVec> solve(const QMatrix& a, const RVec& b) {
  if ((int)b.size() != a.rows()) throw Error(ErrorCode::DimensionMismatch, "solve");
  QMatrix aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  RVec x(a.cols());
  for (size_t k = 0; k < piv.size(); ++k) x[piv[k]] = aug((int)k, a.cols());
  return x;
}

QPoly charpoly(const QMatrix& a0) {
  int n = a0.rows();
  if (n != a0.cols()) throw Error(ErrorCode::DimensionMismatch, "charpoly of non-square matrix");
  QMatrix h = a0;
  for (int j = 0; j + 2 < n; ++j) {
    int p = -1;
    for (int i = j + 1; i < n; ++i)
      if (h(i, j) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != j + 1) {
      for (int k = 0; k < n; ++k) std::swap(h(p, k), h(j + 1, k));
      for (int k = 0; k < n; ++k) std::swap(h(k, p), h(k, j + 1));
    }
    for (int i = j + 2; i < n; ++i) {
      if (h(i, j) == 0) continue;
      Rational f = h(i, j) / h(j + 1, j);
      for (int k = 0; k < n; ++k) h(i, k) -= f * h(j + 1, k);
      for (int k = 0; k < n; ++k) h(k, j + 1) += f * h(k, i);
    }
  }
  // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_{ik} prod_{j=i+1..k} h_{j,j-1} p_{i-1}
  std::vector<QPoly> p(n + 1);
  p[0] = QPoly::constant(1);
  for (int k = 1; k <= n; ++k) {
    p[k] = QPoly::x_minus(h(k - 1, k - 1)) * p[k - 1];
    Rational prod = 1;
    for (int i = k - 1; i >= 1; --i) {
      prod *= h(i, i - 1);
      if (prod == 0) break;
      p[k] = p[k] - p[i - 1] * (h(i - 1, k - 1) * prod);
    }
  }
  return p[n];
}

QMatrix companion_of(const QPoly& p) {
  int n = p.degree();
  QMatrix c(n, n);
  for (int i = 0; i + 1 < n; ++i) c(i, i + 1) = 1;
  for (int j = 0; j < n; ++j) c(n - 1, j) = -p[j] / p.lead();
  return c;
}

QMatrix kronecker(const QMatrix& a, const QMatrix& b) {
  QMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (a(i, j) == 0) continue;
      for (int r = 0; r < b.rows(); ++r)
        for (int s = 0; s < b.cols(); ++s) k(i * b.rows() + r, j * b.cols() + s) = a(i, j) * b(r, s);
    }
  return k;
}

}  // namespace ldsw
