#include "ldsw/exactnum/algnum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>

#include "ldsw/exactnum/errors.hpp"
#include "ldsw/exactnum/matrix.hpp"

namespace ldsw {

struct AlgNum::Rep {
  IntPoly poly;
  IsolatedRoot root;
  std::optional<Rational> rational;
  mutable std::mutex mu;
  mutable IsolatedRoot best;
};

namespace {

std::shared_ptr<AlgNum::Rep> make_rational_rep(const Rational& q) {
  auto r = std::make_shared<AlgNum::Rep>();
  r->poly.c = {-q.get_num(), q.get_den()};
  r->root = {Box::point(q), true};
  r->best = r->root;
  r->rational = q;
  return r;
}

long mag_bits(const Box& b) {
  Rational m = abs_q(b.re_lo) + abs_q(b.re_hi) + abs_q(b.im_lo) + abs_q(b.im_hi) + 1;
  return std::max(0L, (long)std::ceil(log2_upper(m)));
}

Rational pow2(long e) {
  Rational r = 1;
  if (e >= 0)
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), e);
  else
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), -e);
  return r;
}

QPoly monic_q(const AlgNum& a) { return a.poly().to_q().monic(); }

}  // namespace

AlgNum::AlgNum() : rep_(make_rational_rep(0)) {}
AlgNum::AlgNum(const Rational& q) : rep_(make_rational_rep(q)) {}

AlgNum AlgNum::from_root(const IntPoly& p, const IsolatedRoot& r0) {
  IsolatedRoot r = r0;
  if (p.degree() == 1) {
    Rational q(-p.c[0], p.c[1]);
    q.canonicalize();
    return AlgNum(q);
  }
  if (r.real && r.box.re_lo == r.box.re_hi) return AlgNum(r.box.re_lo);
  if (r.real) {
    // rational roots have denominators dividing lead(p)
    Rational w(1, 4 * abs(p.lead()));
    r = refine_root(p, r, w);
    Rational mid = (r.box.re_lo + r.box.re_hi) / 2;
    Integer a = abs(p.lead());
    Rational cand(floor_q(mid * a + Rational(1, 2)), a);
    cand.canonicalize();
    if (r.box.re_lo <= cand && cand <= r.box.re_hi && p.to_q().eval(cand) == 0) return AlgNum(cand);
  }
  AlgNum out;
  auto rep = std::make_shared<Rep>();
  rep->poly = p;
  rep->root = r;
  rep->best = r;
  out.rep_ = rep;
  return out;
}

const IntPoly& AlgNum::poly() const { return rep_->poly; }
const Box& AlgNum::isolating_box() const { return rep_->root.box; }

Box AlgNum::box() const {
  std::lock_guard<std::mutex> lk(rep_->mu);
  return rep_->best.box;
}

bool AlgNum::is_rational() const { return rep_->rational.has_value(); }
const Rational& AlgNum::rational() const {
  if (!rep_->rational) throw Error(ErrorCode::InternalInconsistency, "not rational");
  return *rep_->rational;
}
bool AlgNum::is_real() const { return rep_->root.real; }

Box AlgNum::refine(const Rational& width) const {
  IsolatedRoot cur;
  {
    std::lock_guard<std::mutex> lk(rep_->mu);
    if (rep_->best.box.width() <= width) return rep_->best.box;
    cur = rep_->best;
  }
  IsolatedRoot r = refine_root(rep_->poly, cur, width);
  std::lock_guard<std::mutex> lk(rep_->mu);
  if (r.box.width() < rep_->best.box.width()) rep_->best = r;
  return rep_->best.box;
}

CInterval AlgNum::enclosure(long bits) const {
  if (is_rational()) {
    long prec = std::max(64L, bits + 32);
    return CInterval::from_q(rational(), 0, prec);
  }
  Box b = refine(pow2(-bits));
  long prec = std::max(64L, bits + mag_bits(b) + 32);
  return CInterval::from_box(b, prec);
}

double AlgNum::approx_re() const {
  Box b = box();
  return Rational((b.re_lo + b.re_hi) / 2).get_d();
}

double AlgNum::approx_im() const {
  Box b = box();
  return Rational((b.im_lo + b.im_hi) / 2).get_d();
}

AlgNum AlgNum::conj() const {
  if (is_real()) return *this;
  Box b = box();
  AlgNum out;
  auto rep = std::make_shared<Rep>();
  rep->poly = rep_->poly;
  rep->root = {rep_->root.box.conj(), false};
  rep->best = {b.conj(), false};
  out.rep_ = rep;
  return out;
}

AlgNum AlgNum::operator-() const {
  if (is_rational()) return AlgNum(Rational(-rational()));
  IntPoly q = poly();
  for (size_t i = 1; i < q.c.size(); i += 2) q.c[i] = -q.c[i];
  if (q.lead() < 0)
    for (auto& x : q.c) x = -x;
  auto neg = [](const Box& b) { return Box{-b.re_hi, -b.re_lo, -b.im_hi, -b.im_lo}; };
  AlgNum out;
  auto rep = std::make_shared<Rep>();
  rep->poly = q;
  rep->root = {neg(rep_->root.box), rep_->root.real};
  rep->best = {neg(box()), rep_->root.real};
  out.rep_ = rep;
  return out;
}

std::string AlgNum::to_string() const {
  if (is_rational()) return format_rational(rational());
  char buf[128];
  double re = approx_re(), im = approx_im();
  if (is_real())
    std::snprintf(buf, sizeof buf, "%.12g", re);
  else
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", re, im);
  return buf;
}

std::vector<AlgNum> squarefree_roots(const QPoly& p) {
  std::vector<AlgNum> out;
  if (p.degree() < 1) return out;
  IntPoly ip = primitive_part(p);
  for (auto& r : isolate_roots(ip)) out.push_back(AlgNum::from_root(ip, r));
  return out;
}

std::vector<std::pair<AlgNum, int>> poly_roots(const QPoly& p) {
  if (p.is_zero()) throw Error(ErrorCode::PreconditionViolated, "roots of the zero polynomial");
  std::vector<std::pair<AlgNum, int>> out;
  for (auto& [f, m] : squarefree_decomposition(p))
    for (auto& a : squarefree_roots(f)) out.push_back({a, m});
  return out;
}

std::vector<std::pair<AlgNum, int>> poly_roots(const IntPoly& p) { return poly_roots(p.to_q()); }

bool is_root_of(const AlgNum& a, const QPoly& q) {
  if (q.is_zero()) return true;
  if (a.is_rational()) return q.eval(a.rational()) == 0;
  QPoly p = a.poly().to_q();
  QPoly g = gcd(p, q);
  if (g.degree() <= 0) return false;
  QPoly h = p / g;
  if (h.degree() <= 0) return true;
  for (long bits = 32;; bits *= 2) {
    CInterval z = a.enclosure(bits);
    if (!eval_poly(g, z).contains_zero()) return false;
    if (!eval_poly(h, z).contains_zero()) return true;
    if (bits > (1L << 24)) throw Error(ErrorCode::PrecisionExhausted, "is_root_of");
  }
}

namespace {

// is the value enclosed by f inside `ref` (true) or outside (false)? The value must
// not lie on the boundary of ref.
template <class F>
bool inside_box(const Box& ref, F f) {
  for (long bits = 32;; bits *= 2) {
    Box e = f(bits);
    if (ref.contains(e)) return true;
    if (ref.disjoint(e)) return false;
    if (bits > (1L << 24)) throw Error(ErrorCode::PrecisionExhausted, "box membership");
  }
}

}  // namespace

bool alg_equal(const AlgNum& a, const AlgNum& b) {
  if (a.id() == b.id()) return true;
  if (a.is_rational() || b.is_rational()) {
    if (a.is_rational() && b.is_rational()) return a.rational() == b.rational();
    return false;
  }
  if (a.is_real() != b.is_real()) return false;
  if (a.box().disjoint(b.box())) return false;
  if (!is_root_of(a, b.poly().to_q())) return false;
  return inside_box(b.isolating_box(), [&](long bits) { return a.refine(pow2(-bits)); });
}

int compare_real(const AlgNum& a, const AlgNum& b) {
  if (a.is_rational() && b.is_rational()) return a.rational() < b.rational() ? -1 : (a.rational() > b.rational());
  if (alg_equal(a, b)) return 0;
  for (long bits = 32;; bits *= 2) {
    Box x = a.refine(pow2(-bits)), y = b.refine(pow2(-bits));
    if (x.re_hi < y.re_lo) return -1;
    if (y.re_hi < x.re_lo) return 1;
    if (bits > (1L << 24)) throw Error(ErrorCode::PrecisionExhausted, "compare_real");
  }
}

int sign_real(const AlgNum& a) { return compare_real(a, AlgNum(0)); }

namespace {

// is |a| == r exactly (r >= 0)
bool modulus_equals(const AlgNum& a, const Rational& r) {
  if (a.is_rational()) return abs_q(a.rational()) == r;
  if (r == 0) return false;
  // a*conj(a) = r^2  <=>  conj(a) = r^2/a; both are roots of p when a is a root of x^n p(r^2/x)
  QPoly p = a.poly().to_q();
  int n = p.degree();
  Rational r2 = r * r;
  std::vector<Rational> c(n + 1);
  Rational pw = 1;
  for (int i = 0; i <= n; ++i) {
    c[n - i] = p[i] * pw;
    pw *= r2;
  }
  QPoly ps(c);
  if (!is_root_of(a, ps)) return false;
  Box ref = a.isolating_box().conj();
  return inside_box(ref, [&](long bits) {
    CInterval z = a.enclosure(bits + 8);
    CInterval num = CInterval::from_q(r2, 0, z.prec());
    return (num / z).to_box();
  });
}

}  // namespace

int compare_modulus(const AlgNum& a, const Rational& r) {
  if (a.is_rational()) {
    Rational m = abs_q(a.rational());
    return m < r ? -1 : (m > r);
  }
  if (modulus_equals(a, r)) return 0;
  for (long bits = 32;; bits *= 2) {
    Interval m2 = a.enclosure(bits).abs2();
    Rational r2 = r * r;
    if (mpfr_cmp_q(m2.hi(), r2.get_mpq_t()) < 0) return -1;
    if (mpfr_cmp_q(m2.lo(), r2.get_mpq_t()) > 0) return 1;
    if (bits > (1L << 24)) throw Error(ErrorCode::PrecisionExhausted, "compare_modulus");
  }
}

bool is_unit_modulus(const AlgNum& a) { return modulus_equals(a, 1); }

AlgNum identify_root_impl(const QPoly& q0, const std::function<CInterval(long)>& enclose) {
  QPoly q = squarefree_part(q0);
  auto roots = squarefree_roots(q);
  if (roots.size() == 1) return roots[0];
  for (long bits = 32;; bits *= 2) {
    if (bits > (1L << 24)) throw Error(ErrorCode::PrecisionExhausted, "identify_root");
    Box e;
    try {
      e = enclose(bits).to_box();
    } catch (const Error& err) {
      if (err.code() == ErrorCode::DivisionByZero || err.code() == ErrorCode::PrecisionExhausted) continue;
      throw;
    }
    int hit = -1, count = 0;
    for (size_t i = 0; i < roots.size(); ++i)
      if (!roots[i].isolating_box().disjoint(e)) {
        hit = (int)i;
        ++count;
      }
    if (count == 1) return roots[hit];
    if (count == 0) throw Error(ErrorCode::InternalInconsistency, "value is not a root of its defining polynomial");
  }
}

AlgNum alg_arith(const AlgNum& a, const AlgNum& b, ArithOp op) {
  if (op == ArithOp::Div && b.is_zero()) throw Error(ErrorCode::DivisionByZero, "algebraic division by zero");
  if (a.is_rational() && b.is_rational()) {
    const Rational &x = a.rational(), &y = b.rational();
    switch (op) {
      case ArithOp::Add: return AlgNum(Rational(x + y));
      case ArithOp::Sub: return AlgNum(Rational(x - y));
      case ArithOp::Mul: return AlgNum(Rational(x * y));
      case ArithOp::Div: return AlgNum(Rational(x / y));
    }
  }
  if (op == ArithOp::Mul && (a.is_zero() || b.is_zero())) return AlgNum(0);
  if (op == ArithOp::Add && b.is_zero()) return a;
  if (op == ArithOp::Add && a.is_zero()) return b;
  if (op == ArithOp::Sub && b.is_zero()) return a;
  if (op == ArithOp::Mul && b.is_rational() && b.rational() == 1) return a;
  if (op == ArithOp::Mul && a.is_rational() && a.rational() == 1) return b;
  if (op == ArithOp::Div && b.is_rational() && b.rational() == 1) return a;
  if (op == ArithOp::Sub) return alg_arith(a, -b, ArithOp::Add);

  QPoly pa = monic_q(a);
  QPoly pb = monic_q(b);
  QMatrix ca = companion_of(pa);
  QPoly res;
  if (op == ArithOp::Div) pb = pb.reversed().monic();
  QMatrix cb = companion_of(pb);
  if (op == ArithOp::Add)
    res = charpoly(kronecker(ca, QMatrix::identity(cb.rows())) + kronecker(QMatrix::identity(ca.rows()), cb));
  else
    res = charpoly(kronecker(ca, cb));
  return identify_root(res, [&](long bits) {
    CInterval x = a.enclosure(bits + 8), y = b.enclosure(bits + 8);
    switch (op) {
      case ArithOp::Add: return x + y;
      case ArithOp::Mul: return x * y;
      default: return x / y;
    }
  });
}

AlgNum alg_pow(const AlgNum& a, long e) {
  if (e == 0) return AlgNum(1);
  if (e < 0) return alg_pow(alg_arith(AlgNum(1), a, ArithOp::Div), -e);
  if (a.is_rational()) return AlgNum(pow_q(a.rational(), e));
  if (e == 1) return a;
  QPoly res = charpoly(companion_of(monic_q(a)).pow(e));
  return identify_root(res, [&](long bits) { return a.enclosure(bits + 8 + 2 * (long)std::log2((double)e + 1) * 4).pow_ui(e); });
}

AlgNum alg_poly_at(const QPoly& c, const AlgNum& root) {
  if (root.is_rational()) return AlgNum(c.eval(root.rational()));
  QPoly p = monic_q(root);
  QPoly cr = c % p;
  if (cr.degree() <= 0) return AlgNum(cr.coeff(0));
  int n = p.degree();
  QMatrix m(n, n);
  QPoly col = cr;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) m(i, j) = col.coeff(i);
    col = (col * QPoly::monomial(1, 1)) % p;
  }
  return identify_root(charpoly(m), [&](long bits) { return eval_poly(cr, root.enclosure(bits + 16)); });
}

std::optional<int> root_of_unity_order(const AlgNum& a) {
  if (a.is_zero()) throw Error(ErrorCode::PreconditionViolated, "root_of_unity_order(0)");
  if (a.is_rational()) {
    if (a.rational() == 1) return 1;
    if (a.rational() == -1) return 2;
    return std::nullopt;
  }
  if (!is_unit_modulus(a)) return std::nullopt;
  int n = a.degree();
  Interval t = a.enclosure(64).turns();
  for (int k = 3; k <= 2 * n * n + 2; ++k) {
    if (euler_phi(k) > n) continue;
    Interval kt = t * Interval::from_q(k, t.prec());
    if (floor_q(kt.lo_q()) == floor_q(kt.hi_q()) && floor_q(kt.lo_q()) != kt.lo_q()) continue;
    if (is_root_of(a, cyclotomic(k))) return k;
  }
  return std::nullopt;
}

namespace {

std::vector<Integer> divisors(const Integer& n0) {
  Integer n = abs(n0);
  std::vector<std::pair<Integer, int>> f;
  Integer m = n;
  for (unsigned long p = 2; p < 1000000 && Integer(p) * p <= m; ++p) {
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e) f.push_back({Integer(p), e});
  }
  if (m > 1) f.push_back({m, 1});
  std::vector<Integer> d = {1};
  for (auto& [p, e] : f) {
    size_t sz = d.size();
    Integer pw = 1;
    for (int k = 1; k <= e; ++k) {
      pw *= p;
      for (size_t i = 0; i < sz; ++i) d.push_back(d[i] * pw);
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace

IntPoly minimal_polynomial(const AlgNum& a) {
  if (a.is_rational()) return a.poly();
  const IntPoly& p = a.poly();
  int n = p.degree();
  if (n > 24) throw Error(ErrorCode::Unsupported, "minimal polynomial search beyond degree 24");
  auto iso = isolate_roots(p);
  std::vector<AlgNum> roots;
  int self = -1;
  for (auto& r : iso) {
    roots.push_back(AlgNum::from_root(p, r));
    if (!r.box.disjoint(a.isolating_box()) && self < 0 && alg_equal(roots.back(), a)) self = (int)roots.size() - 1;
  }
  if (self < 0) throw Error(ErrorCode::InternalInconsistency, "root not found among its polynomial's roots");
  // conjugate partner indices
  std::vector<int> partner(n, -1);
  for (int i = 0; i < n; ++i) {
    if (roots[i].is_real()) {
      partner[i] = i;
      continue;
    }
    Box cb = roots[i].isolating_box().conj();
    for (int j = 0; j < n; ++j) {
      const Box& bj = roots[j].isolating_box();
      if (j != i && bj.re_lo == cb.re_lo && bj.re_hi == cb.re_hi && bj.im_lo == cb.im_lo && bj.im_hi == cb.im_hi) {
        partner[i] = j;
        break;
      }
    }
    if (partner[i] < 0)
      for (int j = 0; j < n; ++j)
        if (j != i && !roots[j].is_real() && !cb.disjoint(roots[j].isolating_box()) && alg_equal(roots[i].conj(), roots[j])) {
          partner[i] = j;
          break;
        }
  }
  auto lead_divs = divisors(p.lead());
  QPoly pq = p.to_q();
  // orbit units: a real root or a conjugate pair
  std::vector<std::vector<int>> units;
  std::vector<bool> used(n, false);
  int self_unit = -1;
  for (int i = 0; i < n; ++i) {
    if (used[i]) continue;
    std::vector<int> u = {i};
    used[i] = true;
    if (partner[i] >= 0 && partner[i] != i) {
      u.push_back(partner[i]);
      used[partner[i]] = true;
    }
    if (std::find(u.begin(), u.end(), self) != u.end()) self_unit = (int)units.size();
    units.push_back(u);
  }
  int nu = (int)units.size();
  for (long bits = 64; bits <= (1L << 16); bits *= 2) {
    std::vector<CInterval> enc;
    for (auto& r : roots) enc.push_back(r.enclosure(bits));
    long prec = enc[0].prec();
    // subsets of the other units, by total degree
    std::vector<std::pair<int, unsigned long>> subsets;
    for (unsigned long mask = 0; mask < (1UL << (nu - 1)); ++mask) {
      int deg = (int)units[self_unit].size();
      int k = 0;
      for (int u = 0; u < nu; ++u) {
        if (u == self_unit) continue;
        if (mask >> k & 1) deg += (int)units[u].size();
        ++k;
      }
      subsets.push_back({deg, mask});
    }
    std::stable_sort(subsets.begin(), subsets.end());
    bool too_wide = false;
    for (auto& [deg, mask] : subsets) {
      if (deg == n) return p;
      std::vector<int> members = units[self_unit];
      int k = 0;
      for (int u = 0; u < nu; ++u) {
        if (u == self_unit) continue;
        if (mask >> k & 1)
          for (int i : units[u]) members.push_back(i);
        ++k;
      }
      // prod (x - r)
      std::vector<CInterval> c = {CInterval::from_q(1, 0, prec)};
      for (int i : members) {
        std::vector<CInterval> nc(c.size() + 1, CInterval::from_q(0, 0, prec));
        for (size_t j = 0; j < c.size(); ++j) {
          nc[j + 1] = nc[j + 1] + c[j];
          nc[j] = nc[j] - c[j] * enc[i];
        }
        c = nc;
      }
      for (auto& l : lead_divs) {
        Interval li = Interval::from_q(Rational(l), prec);
        IntPoly cand;
        bool ok = true;
        for (auto& x : c) {
          Interval re = x.re * li;
          Integer lo = ceil_q(re.lo_q()), hi = floor_q(re.hi_q());
          if (lo > hi) {
            ok = false;
            break;
          }
          if (lo < hi) {
            too_wide = true;
            ok = false;
            break;
          }
          cand.c.push_back(lo);
        }
        if (!ok) continue;
        if (cand.lead() == 0) continue;
        if ((pq % cand.to_q()).is_zero()) return primitive_part(cand.to_q());
      }
    }
    if (!too_wide) break;
  }
  throw Error(ErrorCode::PrecisionExhausted, "minimal polynomial");
}

Interval weil_height(const AlgNum& a, mpfr_prec_t prec) {
  if (a.is_zero()) throw Error(ErrorCode::PreconditionViolated, "height of 0");
  IntPoly m = minimal_polynomial(a);
  Interval acc = Interval::from_q(Rational(abs(m.lead())), prec).log();
  for (auto& r : isolate_roots(m)) {
    AlgNum x = AlgNum::from_root(m, r);
    Interval mod = x.enclosure(prec).abs().with_prec(prec);
    if (mpfr_cmp_ui(mod.hi(), 1) <= 0) continue;
    if (mpfr_cmp_ui(mod.lo(), 1) >= 0) {
      acc = acc + mod.log();
    } else {
      Interval lg = Interval::from_bounds(1, mod.hi_q(), prec).log();
      acc = acc + lg;
    }
  }
  return acc / Interval::from_q(m.degree(), prec);
}

}  // namespace ldsw
