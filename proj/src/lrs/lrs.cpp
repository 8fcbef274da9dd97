#include "ldsw/lrs/lrs.hpp"

#include <map>
#include <numeric>

#include "ldsw/exactnum/algexpr.hpp"
#include "ldsw/exactnum/errors.hpp"

namespace ldsw::lrs {

Lrs::Lrs(RVec coeffs, RVec initial) : a_(std::move(coeffs)), init_(std::move(initial)) {
  if (a_.size() != init_.size()) throw Error(ErrorCode::DimensionMismatch, "recurrence and initial terms differ in length");
}

Lrs Lrs::constant(const Rational& c) {
  if (c == 0) return Lrs();
  return Lrs({1}, {c});
}

Lrs Lrs::geometric(const Rational& r, const Rational& c) {
  if (c == 0) return Lrs();
  return Lrs({r}, {c});
}

Lrs Lrs::index() { return Lrs({-1, 2}, {0, 1}); }

QPoly Lrs::charpoly() const {
  RVec c(a_.size() + 1);
  for (size_t i = 0; i < a_.size(); ++i) c[i] = -a_[i];
  c.back() = 1;
  return QPoly(c);
}

Rational term(const Lrs& s, unsigned long n) {
  int d = s.order();
  if (n < (unsigned long)d) return s.initial()[n];
  if (d == 0) return 0;
  RVec w = s.initial();
  for (unsigned long k = d; k <= n; ++k) {
    Rational x = 0;
    for (int i = 0; i < d; ++i) x += s.coeffs()[i] * w[i];
    w.erase(w.begin());
    w.push_back(x);
  }
  return w.back();
}

Rational term_fast(const Lrs& s, unsigned long n) {
  int d = s.order();
  if (n < (unsigned long)d) return s.initial()[n];
  if (d == 0) return 0;
  QPoly r = powmod(QPoly::monomial(1, 1), n, s.charpoly());
  Rational x = 0;
  for (int i = 0; i <= r.degree(); ++i) x += r[i] * s.initial()[i];
  return x;
}

RVec terms(const Lrs& s, size_t count) {
  int d = s.order();
  RVec out;
  out.reserve(count);
  for (size_t n = 0; n < count; ++n) {
    if (n < (size_t)d) {
      out.push_back(s.initial()[n]);
      continue;
    }
    Rational x = 0;
    for (int i = 0; i < d; ++i) x += s.coeffs()[i] * out[n - d + i];
    out.push_back(x);
  }
  return out;
}

Lrs from_terms(const RVec& t) {
  // connection polynomial C: sum_j C_j u_{n-j} = 0 for n >= L
  RVec C{1}, B{1};
  int L = 0, m = 1;
  Rational b = 1;
  for (size_t n = 0; n < t.size(); ++n) {
    Rational d = t[n];
    for (int i = 1; i <= L && i < (int)C.size(); ++i) d += C[i] * t[n - i];
    if (d == 0) {
      ++m;
      continue;
    }
    RVec T = C;
    Rational f = d / b;
    if (C.size() < B.size() + m) C.resize(B.size() + m, 0);
    for (size_t i = 0; i < B.size(); ++i) C[i + m] -= f * B[i];
    if (2 * L <= (int)n) {
      L = (int)n + 1 - L;
      B = T;
      b = d;
      m = 1;
    } else {
      ++m;
    }
  }
  C.resize(L + 1, 0);
  RVec a(L), init(L);
  for (int j = 1; j <= L; ++j) a[L - j] = -C[j];
  for (int i = 0; i < L; ++i) init[i] = i < (int)t.size() ? t[i] : Rational(0);
  return Lrs(a, init);
}

Lrs minimize(const Lrs& s) {
  if (s.order() == 0) return s;
  return from_terms(terms(s, 2 * s.order()));
}

bool is_zero(const Lrs& s) {
  for (auto& x : s.initial())
    if (x != 0) return false;
  return true;
}

Companion companion(const Lrs& s) {
  if (is_zero(s)) throw Error(ErrorCode::ZeroSequence, "companion of the zero sequence");
  int d = s.order();
  QMatrix C(d, d);
  for (int i = 0; i + 1 < d; ++i) C(i, i + 1) = 1;
  for (int j = 0; j < d; ++j) C(d - 1, j) = s.coeffs()[j];
  return {C, s.initial()};
}

namespace {

Lrs combine(const Lrs& s, const Lrs& t, size_t bound, bool product) {
  RVec x = terms(s, 2 * bound), y = terms(t, 2 * bound);
  for (size_t i = 0; i < x.size(); ++i) x[i] = product ? Rational(x[i] * y[i]) : Rational(x[i] + y[i]);
  return from_terms(x);
}

}  // namespace

Lrs add(const Lrs& s, const Lrs& t) {
  if (is_zero(s)) return minimize(t);
  if (is_zero(t)) return minimize(s);
  return combine(s, t, s.order() + t.order(), false);
}

Lrs sub(const Lrs& s, const Lrs& t) { return add(s, scale(t, -1)); }

Lrs mul(const Lrs& s, const Lrs& t) {
  if (is_zero(s) || is_zero(t)) return Lrs();
  return combine(s, t, (size_t)s.order() * t.order(), true);
}

Lrs scale(const Lrs& s, const Rational& c) {
  if (c == 0) return Lrs();
  RVec init = s.initial();
  for (auto& x : init) x *= c;
  return Lrs(s.coeffs(), init);
}

Lrs shift(const Lrs& s, unsigned long k) {
  int d = s.order();
  if (d == 0 || k == 0) return minimize(s);
  RVec init;
  if (k < 4096) {
    RVec t = terms(s, k + d);
    init.assign(t.begin() + k, t.end());
  } else {
    for (int i = 0; i < d; ++i) init.push_back(term_fast(s, k + i));
  }
  return minimize(Lrs(s.coeffs(), init));
}

Lrs subsequence(const Lrs& s, unsigned long R, unsigned long r) {
  if (R == 0) throw Error(ErrorCode::InvalidParameters, "subsequence modulus 0");
  int d = s.order();
  if (d == 0) return s;
  RVec t = terms(s, 2 * d * R + r);
  RVec u;
  for (int n = 0; n < 2 * d; ++n) u.push_back(t[n * R + r]);
  return from_terms(u);
}

Lrs lds_coordinate(const QMatrix& M, const RVec& q, int i) {
  int d = M.rows();
  if (M.cols() != d || (int)q.size() != d) throw Error(ErrorCode::DimensionMismatch, "matrix and vector sizes disagree");
  if (i < 0 || i >= d) throw Error(ErrorCode::DimensionMismatch, "coordinate index out of range");
  RVec v = q, t;
  for (int n = 0; n < 2 * d; ++n) {
    t.push_back(v[i]);
    v = M * v;
  }
  return from_terms(t);
}

Lrs weight_sequence(const QMatrix& M, const RVec& q, const PolyWeight& w) {
  int d = M.rows();
  if (M.cols() != d || (int)q.size() != d) throw Error(ErrorCode::DimensionMismatch, "matrix and vector sizes disagree");
  if (w.arity() != d) throw Error(ErrorCode::DimensionMismatch, "weight arity differs from the dimension");
  std::vector<Lrs> coord;
  for (int i = 0; i < d; ++i) coord.push_back(lds_coordinate(M, q, i));
  std::map<std::pair<int, int>, Lrs> powers;
  auto power = [&](int i, int e) {
    auto key = std::make_pair(i, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    Lrs p = coord[i];
    for (int k = 1; k < e; ++k) p = mul(p, coord[i]);
    powers[key] = p;
    return p;
  };
  Lrs out;
  for (auto& m : w.monomials()) {
    Lrs t = Lrs::constant(1);
    for (int i = 0; i < d; ++i)
      if (m.exps[i]) t = mul(t, power(i, m.exps[i]));
    out = add(out, scale(t, m.coeff));
  }
  return out;
}

Lrs partial_sums(const Lrs& s) {
  if (is_zero(s)) return Lrs();
  QPoly p = s.charpoly() * QPoly({-1, 1});
  int d = p.degree();
  RVec a(d), init(d);
  for (int i = 0; i < d; ++i) a[i] = -p[i];
  RVec t = terms(s, d);
  Rational acc = 0;
  for (int i = 0; i < d; ++i) init[i] = acc += t[i];
  return minimize(Lrs(a, init));
}

namespace {

// p_0..p_{count-1}: power sums of the roots of monic S
RVec power_sums(const QPoly& S, size_t count) {
  int m = S.degree();
  RVec p(count);
  if (count == 0) return p;
  p[0] = m;
  for (size_t j = 1; j < count; ++j) {
    Rational x = 0;
    if ((int)j <= m) x = Rational((long)j) * S[m - j];
    for (int i = 1; i <= m && i < (int)j; ++i) x += S[m - i] * p[j - i];
    p[j] = -x;
  }
  return p;
}

}  // namespace

AlgNum ExpTerm::coeff(int e) const { return alg_poly_at(coeff_polys.at(e), root); }

CInterval ExpTerm::coeff_enclosure(int e, long bits) const {
  return eval_poly(coeff_polys.at(e), root.enclosure(bits));
}

ExpPolyForm::ExpPolyForm(unsigned long offset, std::vector<RootClass> classes)
    : offset_(offset), classes_(std::move(classes)) {
  for (auto& c : classes_) {
    for (auto& r : squarefree_roots(c.S)) {
      int deg = -1;
      for (int e = c.mult - 1; e >= 0; --e)
        if (!is_root_of(r, c.C[e])) {
          deg = e;
          break;
        }
      if (deg < 0) continue;
      terms_.push_back({r, c.C, deg});
    }
  }
}

int ExpPolyForm::size() const {
  int s = 0;
  for (auto& t : terms_) s += t.degree + 1;
  return s;
}

Rational ExpPolyForm::value(unsigned long n) const {
  Rational v = 0;
  for (auto& c : classes_) {
    RVec ps = power_sums(c.S, n + c.S.degree());
    Rational ne = 1;
    for (int e = 0; e < c.mult; ++e) {
      Rational s = 0;
      for (int i = 0; i <= c.C[e].degree(); ++i) s += c.C[e][i] * ps[i + n];
      v += ne * s;
      ne *= Rational((long)n);
    }
  }
  return v;
}

CInterval ExpPolyForm::eval(unsigned long n, long bits) const {
  mpfr_prec_t prec = bits + 64;
  CInterval acc = CInterval::from_q(0, 0, prec);
  Interval nn = Interval::from_q(Rational((long)n), prec);
  for (auto& t : terms_) {
    CInterval z = t.root.enclosure(bits);
    CInterval p = CInterval::from_q(0, 0, prec);
    Interval ne = Interval::from_q(1, prec);
    for (int e = 0; e <= t.degree; ++e) {
      p = p + eval_poly(t.coeff_polys[e], z) * ne;
      ne = ne * nn;
    }
    acc = acc + p * z.pow_ui(n);
  }
  return acc;
}

ExpPolyForm exp_poly(const Lrs& s0) {
  Lrs s = minimize(s0);
  if (s.order() == 0) throw Error(ErrorCode::ZeroSequence, "exp_poly of the zero sequence");
  QPoly P = s.charpoly();
  unsigned long k = 0;
  while (P[k] == 0) ++k;
  QPoly Pt(RVec(P.coeffs().begin() + k, P.coeffs().end()));
  std::vector<RootClass> classes;
  int dt = Pt.degree();
  if (dt == 0) return ExpPolyForm(k, {});
  auto sf = squarefree_decomposition(Pt);
  // unknowns ordered (class, e, i)
  QMatrix A(dt, dt);
  RVec b(dt);
  RVec t = terms(s, k + dt);
  for (int r = 0; r < dt; ++r) b[r] = t[k + r];
  int col = 0;
  for (auto& [S, mult] : sf) {
    RVec ps = power_sums(S, k + dt + S.degree());
    for (int e = 0; e < mult; ++e)
      for (int i = 0; i < S.degree(); ++i, ++col)
        for (int r = 0; r < dt; ++r) {
          Rational n = Rational((long)(k + r));
          A(r, col) = pow_q(n, e) * ps[i + k + r];
        }
  }
  auto x = solve(A, b);
  if (!x) throw Error(ErrorCode::InternalInconsistency, "exp_poly: singular confluent system");
  col = 0;
  for (auto& [S, mult] : sf) {
    RootClass c{S, mult, {}};
    for (int e = 0; e < mult; ++e) {
      RVec coef(S.degree());
      for (int i = 0; i < S.degree(); ++i) coef[i] = (*x)[col++];
      c.C.push_back(QPoly(coef));
    }
    classes.push_back(std::move(c));
  }
  return ExpPolyForm(k, std::move(classes));
}

std::optional<unsigned long> first_nonzero(const ExpPolyForm& f) {
  int d = f.size();
  for (int n = 0; n < d; ++n)
    if (f.value(n) != 0) return (unsigned long)n;
  throw Error(ErrorCode::InternalInconsistency, "exp-poly form vanishes on its first d terms");
}

std::optional<unsigned long> ratio_root_of_unity_order(const AlgNum& a, const AlgNum& b) {
  if (a.is_zero() || b.is_zero()) return std::nullopt;
  if (a.is_rational() && b.is_rational()) {
    Rational q = a.rational() / b.rational();
    if (q == 1) return 1;
    if (q == -1) return 2;
    return std::nullopt;
  }
  if (compare_moduli(a, b) != 0) return std::nullopt;
  long D = (long)a.degree() * b.degree();
  long kmax = std::max(2L, 2 * D * D);
  // enclosure narrower than 1/(2 kmax^2) holds at most one fraction with denominator <= kmax
  Rational need(1, 2 * kmax * kmax);
  Interval diff;
  for (long bits = 48;; bits *= 2) {
    diff = a.enclosure(bits).turns() - b.enclosure(bits).turns();
    if (Rational(diff.hi_q() - diff.lo_q()) < need) break;
    if (bits > (1L << 20)) throw Error(ErrorCode::PrecisionExhausted, "ratio argument");
  }
  Rational lo = diff.lo_q(), hi = diff.hi_q();
  Integer f = floor_q(lo);
  lo -= f;
  hi -= f;
  std::optional<long> k;
  for (long q = 1; q <= kmax && !k; ++q) {
    Integer p = ceil_q(lo * q);
    if (Rational(p, q) <= hi) k = q;
  }
  if (!k) return std::nullopt;
  AlgExpr e = AlgExpr::leaf(a).pow(*k) - AlgExpr::leaf(b).pow(*k);
  if (is_zero(e)) return (unsigned long)*k;
  return std::nullopt;
}

namespace {

// lambda^R is real and negative
bool negative_power(const AlgNum& l, unsigned long R) {
  if (l.is_real()) return R % 2 == 1 && sign_real(l) < 0;
  auto k = ratio_root_of_unity_order(l, l.conj());
  if (!k || R % *k != 0) return false;
  for (long bits = 64;; bits *= 2) {
    CInterval z = l.enclosure(bits).pow_ui(R);
    if (z.re.negative()) return true;
    if (z.re.positive()) return false;
    if (bits > (1L << 20)) throw Error(ErrorCode::PrecisionExhausted, "sign of a real power");
  }
}

}  // namespace

NondegenerateSplit nondegenerate_split(const Lrs& s0) {
  Lrs s = minimize(s0);
  if (s.order() == 0) throw Error(ErrorCode::ZeroSequence, "nondegenerate_split of the zero sequence");
  ExpPolyForm f = exp_poly(s);
  auto& ts = f.terms();
  unsigned long R = 1;
  for (size_t i = 0; i < ts.size(); ++i)
    for (size_t j = i + 1; j < ts.size(); ++j)
      if (auto k = ratio_root_of_unity_order(ts[i].root, ts[j].root)) R = std::lcm(R, *k);
  for (auto& t : ts)
    if (negative_power(t.root, R)) {
      R *= 2;
      break;
    }
  NondegenerateSplit out;
  out.R = R;
  for (unsigned long r = 0; r < R; ++r) out.subsequences.push_back(subsequence(s, R, r));
  return out;
}

bool is_nondegenerate(const ExpPolyForm& f) {
  auto& ts = f.terms();
  for (size_t i = 0; i < ts.size(); ++i) {
    if (ts[i].root.is_real() && sign_real(ts[i].root) < 0) return false;
    for (size_t j = i + 1; j < ts.size(); ++j)
      if (ratio_root_of_unity_order(ts[i].root, ts[j].root)) return false;
  }
  return true;
}

}  // namespace ldsw::lrs
