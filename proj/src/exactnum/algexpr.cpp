#include "ldsw/exactnum/algexpr.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "ldsw/exactnum/errors.hpp"

namespace ldsw {

enum class Kind { Rat, Leaf, PolyAt, Add, Mul, Neg, Pow };

struct AlgExpr::Node {
  Kind kind;
  Rational q;
  AlgNum a;
  bool conj = false;
  QPoly c;
  std::shared_ptr<const Node> x, y;
  unsigned long e = 0;
};

namespace {

using NodeP = std::shared_ptr<const AlgExpr::Node>;
using LeafKey = std::pair<const void*, bool>;

double log2sum(double a, double b) {
  if (a == -INFINITY) return b;
  if (b == -INFINITY) return a;
  double m = std::max(a, b);
  return m + std::log2(std::exp2(a - m) + std::exp2(b - m));
}

double log2z(const Integer& z) {
  if (z == 0) return -INFINITY;
  long e = 0;
  double d = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log2(std::fabs(d)) + (double)e;
}

// upper bounds, padded against floating error
struct Bound {
  double lk = 0, lu = -INFINITY;
};

double pad(double v) { return v == -INFINITY ? v : v + 1e-9 * std::fabs(v) + 1e-9; }

void leaf_bound(const AlgNum& a, double& lk, double& lu) {
  const IntPoly& p = a.poly();
  lk = log2z(p.lead());
  Rational r = cauchy_bound(p);
  lu = lk + log2_upper(r);
}

Bound bound(const NodeP& n, std::map<LeafKey, int>& leaves) {
  Bound b;
  switch (n->kind) {
    case Kind::Rat:
      b.lk = log2z(n->q.get_den());
      b.lu = log2z(n->q.get_num());
      break;
    case Kind::Leaf:
    case Kind::PolyAt: {
      double lk, lu;
      leaf_bound(n->a, lk, lu);
      leaves[{n->a.id(), n->conj && !n->a.is_real()}] = n->a.degree();
      if (n->kind == Kind::Leaf) {
        b.lk = lk;
        b.lu = lu;
        break;
      }
      Integer l = 1;
      for (auto& c : n->c.coeffs()) l = lcm_z(l, c.get_den());
      int k = n->c.degree();
      b.lk = log2z(l) + k * lk;
      b.lu = -INFINITY;
      for (int i = 0; i <= k; ++i) {
        Integer ni = Integer(n->c[i] * l);
        if (ni == 0) continue;
        b.lu = log2sum(b.lu, log2z(abs(ni)) + i * lu + (k - i) * lk);
      }
      break;
    }
    case Kind::Add: {
      Bound u = bound(n->x, leaves), v = bound(n->y, leaves);
      b.lk = u.lk + v.lk;
      b.lu = log2sum(u.lu + v.lk, v.lu + u.lk);
      break;
    }
    case Kind::Mul: {
      Bound u = bound(n->x, leaves), v = bound(n->y, leaves);
      b.lk = u.lk + v.lk;
      b.lu = u.lu + v.lu;
      break;
    }
    case Kind::Neg:
      b = bound(n->x, leaves);
      break;
    case Kind::Pow: {
      Bound u = bound(n->x, leaves);
      b.lk = u.lk * (double)n->e;
      b.lu = u.lu * (double)n->e;
      break;
    }
  }
  b.lk = pad(b.lk);
  b.lu = pad(b.lu);
  return b;
}

CInterval eval_node(const NodeP& n, long bits, std::map<LeafKey, CInterval>& memo) {
  switch (n->kind) {
    case Kind::Rat:
      return CInterval::from_q(n->q, 0, std::max(64L, bits + 32));
    case Kind::Leaf:
    case Kind::PolyAt: {
      LeafKey key{n->a.id(), false};
      auto it = memo.find(key);
      if (it == memo.end()) it = memo.emplace(key, n->a.enclosure(bits)).first;
      CInterval z = n->conj ? it->second.conj() : it->second;
      if (n->kind == Kind::Leaf) return z;
      return eval_poly(n->c, z);
    }
    case Kind::Add:
      return eval_node(n->x, bits, memo) + eval_node(n->y, bits, memo);
    case Kind::Mul:
      return eval_node(n->x, bits, memo) * eval_node(n->y, bits, memo);
    case Kind::Neg:
      return -eval_node(n->x, bits, memo);
    case Kind::Pow:
      return eval_node(n->x, bits, memo).pow_ui(n->e);
  }
  return CInterval();
}

NodeP make(Kind k, NodeP x, NodeP y = nullptr, unsigned long e = 0) {
  auto n = std::make_shared<AlgExpr::Node>();
  n->kind = k;
  n->x = std::move(x);
  n->y = std::move(y);
  n->e = e;
  return n;
}

NodeP conj_node(const NodeP& n) {
  switch (n->kind) {
    case Kind::Rat:
      return n;
    case Kind::Leaf:
    case Kind::PolyAt: {
      if (n->a.is_real()) return n;
      auto m = std::make_shared<AlgExpr::Node>(*n);
      m->conj = !n->conj;
      return m;
    }
    default: {
      auto m = std::make_shared<AlgExpr::Node>(*n);
      m->x = conj_node(n->x);
      if (n->y) m->y = conj_node(n->y);
      return m;
    }
  }
}

std::optional<Rational> rat_value(const NodeP& n) {
  switch (n->kind) {
    case Kind::Rat:
      return n->q;
    case Kind::Leaf:
      if (n->a.is_rational()) return n->a.rational();
      return std::nullopt;
    case Kind::PolyAt:
      if (n->a.is_rational()) return n->c.eval(n->a.rational());
      if (n->c.degree() <= 0) return n->c.coeff(0);
      return std::nullopt;
    case Kind::Add:
    case Kind::Mul: {
      auto u = rat_value(n->x);
      if (!u) return std::nullopt;
      auto v = rat_value(n->y);
      if (!v) return std::nullopt;
      return n->kind == Kind::Add ? Rational(*u + *v) : Rational(*u * *v);
    }
    case Kind::Neg: {
      auto u = rat_value(n->x);
      if (!u) return std::nullopt;
      return Rational(-*u);
    }
    case Kind::Pow: {
      auto u = rat_value(n->x);
      if (!u) return std::nullopt;
      return pow_q(*u, (long)n->e);
    }
  }
  return std::nullopt;
}

}  // namespace

AlgExpr::AlgExpr() {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Rat;
  n_ = n;
}

AlgExpr AlgExpr::rational(const Rational& q) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Rat;
  n->q = q;
  AlgExpr e;
  e.n_ = n;
  return e;
}

AlgExpr AlgExpr::leaf(const AlgNum& a, bool conj) {
  if (a.is_rational()) return rational(a.rational());
  auto n = std::make_shared<Node>();
  n->kind = Kind::Leaf;
  n->a = a;
  n->conj = conj && !a.is_real();
  AlgExpr e;
  e.n_ = n;
  return e;
}

AlgExpr AlgExpr::poly_at(const QPoly& c, const AlgNum& a, bool conj) {
  if (a.is_rational()) return rational(c.eval(a.rational()));
  QPoly r = c % a.poly().to_q();
  if (r.degree() <= 0) return rational(r.coeff(0));
  auto n = std::make_shared<Node>();
  n->kind = Kind::PolyAt;
  n->a = a;
  n->conj = conj && !a.is_real();
  n->c = r;
  AlgExpr e;
  e.n_ = n;
  return e;
}

AlgExpr AlgExpr::operator+(const AlgExpr& o) const {
  AlgExpr e;
  e.n_ = make(Kind::Add, n_, o.n_);
  return e;
}

AlgExpr AlgExpr::operator-(const AlgExpr& o) const { return *this + (-o); }

AlgExpr AlgExpr::operator*(const AlgExpr& o) const {
  AlgExpr e;
  e.n_ = make(Kind::Mul, n_, o.n_);
  return e;
}

AlgExpr AlgExpr::operator-() const {
  AlgExpr e;
  e.n_ = make(Kind::Neg, n_);
  return e;
}

AlgExpr AlgExpr::pow(unsigned long k) const {
  if (k == 0) return rational(1);
  if (k == 1) return *this;
  AlgExpr e;
  e.n_ = make(Kind::Pow, n_, nullptr, k);
  return e;
}

AlgExpr AlgExpr::conj() const {
  AlgExpr e;
  e.n_ = conj_node(n_);
  return e;
}

CInterval AlgExpr::eval(long bits) const {
  std::map<LeafKey, CInterval> memo;
  return eval_node(n_, bits, memo);
}

double AlgExpr::log2_threshold() const {
  std::map<LeafKey, int> leaves;
  Bound b = bound(n_, leaves);
  double logd = 0;
  for (auto& [k, d] : leaves) logd += std::log2((double)d);
  double D = std::exp2(logd);
  return -b.lk - (D - 1) * std::max(b.lu, 0.0) - 2;
}

std::optional<Rational> AlgExpr::as_rational() const { return rat_value(n_); }

namespace {

// log2 of an upper bound on |z|
double log2_mag(const CInterval& z) {
  Interval m = z.re.mag() + z.im.mag();
  if (mpfr_zero_p(m.hi())) return -INFINITY;
  long e = 0;
  double d = mpfr_get_d_2exp(&e, m.hi(), MPFR_RNDU);
  return std::log2(d) + (double)e + 1e-9;
}

}  // namespace

bool is_zero(const AlgExpr& e, long max_bits) {
  if (auto q = e.as_rational()) return *q == 0;
  double thr = e.log2_threshold();
  for (long bits = 64;; bits *= 2) {
    CInterval v = e.eval(bits);
    if (!v.contains_zero()) return false;
    if (log2_mag(v) < thr) return true;
    if (bits >= max_bits) throw Error(ErrorCode::PrecisionExhausted, "zero test exceeded its precision budget");
    // jump close to the required precision once the value looks tiny
    double need = -thr + 64;
    if (log2_mag(v) < -bits / 2.0 && need > 2.0 * bits) bits = std::min<long>(max_bits / 2, (long)need / 2 + 1);
  }
}

int sign_of(const AlgExpr& e, long max_bits) {
  if (auto q = e.as_rational()) return sgn(*q);
  if (is_zero(e, max_bits)) return 0;
  for (long bits = 64;; bits *= 2) {
    CInterval v = e.eval(bits);
    if (v.re.positive()) return 1;
    if (v.re.negative()) return -1;
    if (bits >= max_bits) throw Error(ErrorCode::PrecisionExhausted, "sign_of");
  }
}

int compare_moduli(const AlgNum& a, const AlgNum& b) {
  if (b.is_rational()) return compare_modulus(a, abs_q(b.rational()));
  if (a.is_rational()) return -compare_modulus(b, abs_q(a.rational()));
  AlgExpr e = AlgExpr::leaf(a) * AlgExpr::leaf(a, true) - AlgExpr::leaf(b) * AlgExpr::leaf(b, true);
  return sign_of(e);
}

}  // namespace ldsw
