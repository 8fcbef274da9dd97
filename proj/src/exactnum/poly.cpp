#include "ldsw/exactnum/poly.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "ldsw/exactnum/errors.hpp"

namespace ldsw {

QPoly::QPoly(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

QPoly QPoly::constant(const Rational& c) { return QPoly({c}); }

QPoly QPoly::monomial(const Rational& c, int deg) {
  std::vector<Rational> v(deg + 1);
  v[deg] = c;
  return QPoly(std::move(v));
}

QPoly QPoly::x_minus(const Rational& r) { return QPoly({-r, Rational(1)}); }

void QPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

QPoly QPoly::operator+(const QPoly& o) const {
  std::vector<Rational> v(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < c_.size(); ++i) v[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) v[i] += o.c_[i];
  return QPoly(std::move(v));
}

QPoly QPoly::operator-(const QPoly& o) const { return *this + (-o); }

QPoly QPoly::operator-() const {
  QPoly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

QPoly QPoly::operator*(const QPoly& o) const {
  if (is_zero() || o.is_zero()) return QPoly();
  std::vector<Rational> v(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) v[i + j] += c_[i] * o.c_[j];
  }
  return QPoly(std::move(v));
}

QPoly QPoly::operator*(const Rational& s) const {
  if (s == 0) return QPoly();
  QPoly r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

Rational QPoly::eval(const Rational& x) const {
  Rational acc = 0;
  for (int i = degree(); i >= 0; --i) acc = acc * x + c_[i];
  return acc;
}

QPoly QPoly::derivative() const {
  if (c_.size() <= 1) return QPoly();
  std::vector<Rational> v(c_.size() - 1);
  for (size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * Rational((long)i);
  return QPoly(std::move(v));
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  return *this * (Rational(1) / lead());
}

QPoly QPoly::reversed() const {
  std::vector<Rational> v(c_.rbegin(), c_.rend());
  return QPoly(std::move(v));
}

QPoly QPoly::scaled(const Rational& s) const {
  QPoly r = *this;
  Rational p = 1;
  for (auto& x : r.c_) {
    x *= p;
    p *= s;
  }
  r.trim();
  return r;
}

QPoly QPoly::shifted(const Rational& r) const { return compose(QPoly({r, Rational(1)})); }

QPoly QPoly::compose(const QPoly& q) const {
  QPoly acc;
  for (int i = degree(); i >= 0; --i) acc = acc * q + QPoly::constant(c_[i]);
  return acc;
}

std::pair<QPoly, QPoly> divmod(const QPoly& a, const QPoly& b) {
  if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
  int db = b.degree();
  if (a.degree() < db) return {QPoly(), a};
  std::vector<Rational> r = a.coeffs();
  std::vector<Rational> q(a.degree() - db + 1);
  Rational inv = Rational(1) / b.lead();
  for (int i = a.degree(); i >= db; --i) {
    if (r[i] == 0) continue;
    Rational f = r[i] * inv;
    q[i - db] = f;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= f * b[j];
  }
  r.resize(db);
  return {QPoly(std::move(q)), QPoly(std::move(r))};
}

QPoly operator%(const QPoly& a, const QPoly& b) { return divmod(a, b).second; }
QPoly operator/(const QPoly& a, const QPoly& b) { return divmod(a, b).first; }

QPoly gcd(const QPoly& a, const QPoly& b) {
  QPoly x = a, y = b;
  while (!y.is_zero()) {
    QPoly r = x % y;
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

void ext_gcd(const QPoly& a, const QPoly& b, QPoly& g, QPoly& s, QPoly& t) {
  QPoly r0 = a, r1 = b, s0 = QPoly::constant(1), s1, t0, t1 = QPoly::constant(1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    QPoly s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) {
    g = r0;
    s = s0;
    t = t0;
    return;
  }
  Rational inv = Rational(1) / r0.lead();
  g = r0 * inv;
  s = s0 * inv;
  t = t0 * inv;
}

QPoly pow(const QPoly& p, unsigned e) {
  QPoly r = QPoly::constant(1), b = p;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

QPoly powmod(const QPoly& base, unsigned long e, const QPoly& mod) {
  QPoly r = QPoly::constant(1) % mod, b = base % mod;
  while (e) {
    if (e & 1) r = (r * b) % mod;
    e >>= 1;
    if (e) b = (b * b) % mod;
  }
  return r;
}

std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p) {
  std::vector<std::pair<QPoly, int>> out;
  if (p.degree() <= 0) return out;
  QPoly f = p.monic();
  QPoly fp = f.derivative();
  QPoly a = gcd(f, fp);
  QPoly b = f / a;
  QPoly c = fp / a;
  QPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    QPoly g = gcd(b, d);
    if (g.degree() > 0) out.push_back({g, i});
    b = b / g;
    c = d / g;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

QPoly squarefree_part(const QPoly& p) {
  if (p.degree() <= 0) return p.monic();
  return (p / gcd(p, p.derivative())).monic();
}

int euler_phi(int k) {
  int r = k;
  for (int p = 2; p * p <= k; ++p) {
    if (k % p == 0) {
      while (k % p == 0) k /= p;
      r -= r / p;
    }
  }
  if (k > 1) r -= r / k;
  return r;
}

QPoly cyclotomic(int k) {
  static std::mutex mu;
  static std::map<int, QPoly> cache;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
  }
  QPoly p = QPoly::monomial(1, k) - QPoly::constant(1);
  for (int d = 1; d < k; ++d)
    if (k % d == 0) p = p / cyclotomic(d);
  std::lock_guard<std::mutex> lk(mu);
  cache[k] = p;
  return p;
}

Integer IntPoly::content() const {
  Integer g = 0;
  for (auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

Integer IntPoly::height() const {
  Integer h = 0;
  for (auto& x : c)
    if (abs(x) > h) h = abs(x);
  return h;
}

QPoly IntPoly::to_q() const {
  std::vector<Rational> v;
  v.reserve(c.size());
  for (auto& x : c) v.emplace_back(x);
  return QPoly(std::move(v));
}

IntPoly primitive_part(const QPoly& p) {
  IntPoly out;
  if (p.is_zero()) return out;
  Integer l = 1;
  for (auto& x : p.coeffs()) l = lcm_z(l, x.get_den());
  for (auto& x : p.coeffs()) out.c.push_back(Integer(x * l));
  Integer g = out.content();
  if (out.lead() < 0) g = -g;
  for (auto& x : out.c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return out;
}

Rational cauchy_bound(const IntPoly& p) {
  Rational m = 0;
  Integer a = abs(p.lead());
  for (int i = 0; i < p.degree(); ++i) {
    Rational r(abs(p.c[i]), a);
    r.canonicalize();
    if (r > m) m = r;
  }
  return m + 1;
}

Integer norm2_squared(const IntPoly& p) {
  Integer s = 0;
  for (auto& x : p.c) s += x * x;
  return s;
}

}  // namespace ldsw
