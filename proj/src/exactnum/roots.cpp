#include "ldsw/exactnum/roots.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "ldsw/exactnum/errors.hpp"

namespace ldsw {

namespace {

// round-to-nearest MPFR scalar
class Mpf {
 public:
  explicit Mpf(mpfr_prec_t p) { mpfr_init2(v, p); mpfr_set_zero(v, 1); }
  Mpf(const Mpf& o) { mpfr_init2(v, mpfr_get_prec(o.v)); mpfr_set(v, o.v, MPFR_RNDN); }
  Mpf& operator=(const Mpf& o) {
    if (this != &o) {
      mpfr_set_prec(v, mpfr_get_prec(o.v));
      mpfr_set(v, o.v, MPFR_RNDN);
    }
    return *this;
  }
  ~Mpf() { mpfr_clear(v); }
  mpfr_prec_t prec() const { return mpfr_get_prec(v); }
  mpfr_t v;
};

struct MpC {
  Mpf re, im;
  explicit MpC(mpfr_prec_t p) : re(p), im(p) {}
  mpfr_prec_t prec() const { return re.prec(); }
};

MpC add(const MpC& a, const MpC& b) {
  MpC r(a.prec());
  mpfr_add(r.re.v, a.re.v, b.re.v, MPFR_RNDN);
  mpfr_add(r.im.v, a.im.v, b.im.v, MPFR_RNDN);
  return r;
}

MpC sub(const MpC& a, const MpC& b) {
  MpC r(a.prec());
  mpfr_sub(r.re.v, a.re.v, b.re.v, MPFR_RNDN);
  mpfr_sub(r.im.v, a.im.v, b.im.v, MPFR_RNDN);
  return r;
}

MpC mul(const MpC& a, const MpC& b) {
  MpC r(a.prec());
  Mpf t(a.prec());
  mpfr_mul(r.re.v, a.re.v, b.re.v, MPFR_RNDN);
  mpfr_mul(t.v, a.im.v, b.im.v, MPFR_RNDN);
  mpfr_sub(r.re.v, r.re.v, t.v, MPFR_RNDN);
  mpfr_mul(r.im.v, a.re.v, b.im.v, MPFR_RNDN);
  mpfr_mul(t.v, a.im.v, b.re.v, MPFR_RNDN);
  mpfr_add(r.im.v, r.im.v, t.v, MPFR_RNDN);
  return r;
}

MpC divc(const MpC& a, const MpC& b) {
  mpfr_prec_t p = a.prec();
  Mpf d(p), t(p);
  mpfr_sqr(d.v, b.re.v, MPFR_RNDN);
  mpfr_sqr(t.v, b.im.v, MPFR_RNDN);
  mpfr_add(d.v, d.v, t.v, MPFR_RNDN);
  MpC bc(p);
  mpfr_set(bc.re.v, b.re.v, MPFR_RNDN);
  mpfr_neg(bc.im.v, b.im.v, MPFR_RNDN);
  MpC r = mul(a, bc);
  mpfr_div(r.re.v, r.re.v, d.v, MPFR_RNDN);
  mpfr_div(r.im.v, r.im.v, d.v, MPFR_RNDN);
  return r;
}

double absd(const MpC& a) {
  return std::hypot(mpfr_get_d(a.re.v, MPFR_RNDN), mpfr_get_d(a.im.v, MPFR_RNDN));
}

// log2 |a| approximately, robust to huge/tiny values
double log2abs(const MpC& a) {
  long er = 0, ei = 0;
  double r = mpfr_get_d_2exp(&er, a.re.v, MPFR_RNDN);
  double i = mpfr_get_d_2exp(&ei, a.im.v, MPFR_RNDN);
  if (r == 0 && i == 0) return -1e300;
  long e = std::max(r != 0 ? er : ei, i != 0 ? ei : er);
  double rr = std::ldexp(r, (int)std::max(-2000L, er - e));
  double ii = std::ldexp(i, (int)std::max(-2000L, ei - e));
  return std::log2(std::hypot(rr, ii)) + (double)e;
}

// p(z), p'(z)
void horner(const std::vector<Mpf>& c, const MpC& z, MpC& pz, MpC& dpz) {
  mpfr_prec_t pr = z.prec();
  pz = MpC(pr);
  dpz = MpC(pr);
  for (int i = (int)c.size() - 1; i >= 0; --i) {
    dpz = add(mul(dpz, z), pz);
    pz = mul(pz, z);
    mpfr_add(pz.re.v, pz.re.v, c[i].v, MPFR_RNDN);
  }
}

std::vector<MpC> aberth(const IntPoly& p, mpfr_prec_t prec, const std::vector<std::complex<long double>>* seed) {
  int n = p.degree();
  std::vector<Mpf> c;
  for (auto& x : p.c) {
    Mpf m(prec);
    mpfr_set_z(m.v, x.get_mpz_t(), MPFR_RNDN);
    c.push_back(m);
  }
  std::vector<MpC> z;
  if (seed) {
    for (auto& s : *seed) {
      MpC m(prec);
      mpfr_set_ld(m.re.v, s.real(), MPFR_RNDN);
      mpfr_set_ld(m.im.v, s.imag(), MPFR_RNDN);
      z.push_back(m);
    }
  } else {
    double la = mpz_sizeinbase(p.lead().get_mpz_t(), 2), l0 = mpz_sizeinbase(p.c[0].get_mpz_t(), 2);
    double r = std::exp2((l0 - la) / n);
    for (int k = 0; k < n; ++k) {
      MpC m(prec);
      double ang = 2 * M_PI * k / n + 0.4;
      mpfr_set_d(m.re.v, r * std::cos(ang), MPFR_RNDN);
      mpfr_set_d(m.im.v, r * std::sin(ang), MPFR_RNDN);
      z.push_back(m);
    }
  }
  MpC pz(prec), dpz(prec), one(prec);
  mpfr_set_ui(one.re.v, 1, MPFR_RNDN);
  int max_it = 60 + 4 * (int)std::log2((double)prec) + 4 * n;
  std::vector<bool> done(n, false);
  for (int it = 0; it < max_it; ++it) {
    bool all = true;
    for (int i = 0; i < n; ++i) {
      if (done[i]) continue;
      horner(c, z[i], pz, dpz);
      if (mpfr_zero_p(pz.re.v) && mpfr_zero_p(pz.im.v)) {
        done[i] = true;
        continue;
      }
      MpC ratio = divc(pz, dpz);
      MpC s(prec);
      for (int j = 0; j < n; ++j)
        if (j != i) s = add(s, divc(one, sub(z[i], z[j])));
      MpC w = divc(ratio, sub(one, mul(ratio, s)));
      z[i] = sub(z[i], w);
      double lw = log2abs(w), lz = log2abs(z[i]);
      if (lw < std::max(lz, -60.0) - (double)prec + 8) done[i] = true;
      else all = false;
    }
    if (all) break;
  }
  return z;
}

std::vector<std::complex<long double>> aberth_ld(const IntPoly& p) {
  int n = p.degree();
  std::vector<long double> c;
  for (auto& x : p.c) c.push_back(mpz_get_d(x.get_mpz_t()));
  for (auto& x : c)
    if (!std::isfinite((double)x)) return {};
  using C = std::complex<long double>;
  long double r = std::pow(std::fabs(c[0] / c[n]), 1.0L / n);
  if (!(r > 0) || !std::isfinite((double)r)) r = 1;
  std::vector<C> z(n);
  for (int k = 0; k < n; ++k) z[k] = std::polar(r, (long double)(2 * M_PI * k / n + 0.4));
  for (int it = 0; it < 500; ++it) {
    long double maxrel = 0;
    for (int i = 0; i < n; ++i) {
      C pz = 0, dp = 0;
      for (int k = n; k >= 0; --k) {
        dp = dp * z[i] + pz;
        pz = pz * z[i] + c[k];
      }
      if (pz == C(0)) continue;
      C ratio = pz / dp;
      C s = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) s += C(1) / (z[i] - z[j]);
      C w = ratio / (C(1) - ratio * s);
      z[i] -= w;
      long double rel = std::abs(w) / std::max(std::abs(z[i]), 1e-300L);
      if (std::isfinite((double)rel)) maxrel = std::max(maxrel, rel);
      else maxrel = 1;
    }
    if (maxrel < 1e-17L) break;
  }
  for (auto& x : z)
    if (!std::isfinite((double)x.real()) || !std::isfinite((double)x.imag())) return {};
  return z;
}

CInterval point(const MpC& z, mpfr_prec_t prec) {
  CInterval r(prec);
  mpfr_set(r.re.lo(), z.re.v, MPFR_RNDD);
  mpfr_set(r.re.hi(), z.re.v, MPFR_RNDU);
  mpfr_set(r.im.lo(), z.im.v, MPFR_RNDD);
  mpfr_set(r.im.hi(), z.im.v, MPFR_RNDU);
  return r;
}

Rational to_q(const Mpf& x) {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), x.v);
  return q;
}

IntPoly derivative(const IntPoly& p) {
  IntPoly d;
  for (int i = 1; i <= p.degree(); ++i) d.c.push_back(p.c[i] * i);
  if (d.c.empty()) d.c.push_back(0);
  return d;
}

// Newton inclusion radius n|p(z)/p'(z)| at the exact point z (upper bound), or -1
bool newton_radius(const IntPoly& p, const IntPoly& dp, const MpC& z, Rational& out) {
  mpfr_prec_t pr = z.prec() + 16;
  CInterval zi = point(z, pr);
  CInterval pz = eval_poly(p, zi), dz = eval_poly(dp, zi);
  Interval num = pz.abs2();
  Interval den = dz.abs2();
  if (!den.positive()) return false;
  if (mpfr_zero_p(num.hi())) {
    out = 0;
    return true;
  }
  Interval r = (num / den).sqrt() * Interval::from_q(p.degree(), pr);
  out = r.hi_q();
  return true;
}

// box with half-width 17/16 r around z; real: symmetric about R
Box make_box(const MpC& z, const Rational& r, bool real) {
  Rational h = r * Rational(17, 16);
  Rational re = to_q(z.re);
  Rational im = real ? Rational(0) : to_q(z.im);
  return {re - h, re + h, im - h, im + h};
}

// try to snap a real root to a rational with denominator dividing lead
bool snap_rational(const IntPoly& p, const Box& b, Rational& out) {
  Rational mid = (b.re_lo + b.re_hi) / 2;
  const Integer& a = p.lead();
  Integer k = floor_q(mid * abs(a) + Rational(1, 2));
  Rational cand(k, abs(a));
  cand.canonicalize();
  if (cand < b.re_lo || cand > b.re_hi) return false;
  if (p.to_q().eval(cand) != 0) return false;
  out = cand;
  return true;
}

bool try_isolate(const IntPoly& p, mpfr_prec_t prec, std::vector<IsolatedRoot>& out) {
  int n = p.degree();
  IntPoly dp = derivative(p);
  std::vector<MpC> z;
  if (prec <= 64) {
    auto seed = aberth_ld(p);
    if ((int)seed.size() != n) return false;
    z = aberth(p, prec, &seed);
  } else {
    z = aberth(p, prec, nullptr);
  }
  double scale = 0;
  for (auto& x : z) scale = std::max(scale, absd(x));
  double tol = std::ldexp(std::max(scale, 1e-30), -(int)prec / 2);
  std::vector<MpC> reals, ups;
  int downs = 0;
  for (auto& x : z) {
    double im = mpfr_get_d(x.im.v, MPFR_RNDN);
    if (std::fabs(im) <= tol) {
      MpC r = x;
      mpfr_set_zero(r.im.v, 1);
      reals.push_back(r);
    } else if (im > 0) {
      ups.push_back(x);
    } else {
      ++downs;
    }
  }
  if ((int)ups.size() != downs) return false;
  std::vector<Mpf> c;
  for (auto& x : p.c) {
    Mpf m(prec);
    mpfr_set_z(m.v, x.get_mpz_t(), MPFR_RNDN);
    c.push_back(m);
  }
  // polish
  auto polish = [&](MpC& x, bool real) {
    MpC pz(prec), dpz(prec);
    for (int it = 0; it < 8; ++it) {
      horner(c, x, pz, dpz);
      if (mpfr_zero_p(dpz.re.v) && mpfr_zero_p(dpz.im.v)) return;
      MpC w = divc(pz, dpz);
      x = sub(x, w);
      if (real) mpfr_set_zero(x.im.v, 1);
    }
  };
  std::vector<IsolatedRoot> res;
  for (auto& x : reals) {
    polish(x, true);
    Rational r;
    if (!newton_radius(p, dp, x, r)) return false;
    res.push_back({make_box(x, r, true), true});
  }
  for (auto& x : ups) {
    polish(x, false);
    Rational r;
    if (!newton_radius(p, dp, x, r)) return false;
    Box b = make_box(x, r, false);
    if (!b.off_real_axis()) return false;
    res.push_back({b, false});
    res.push_back({b.conj(), false});
  }
  if ((int)res.size() != n) return false;
  for (size_t i = 0; i < res.size(); ++i)
    for (size_t j = i + 1; j < res.size(); ++j)
      if (!res[i].box.disjoint(res[j].box)) return false;
  for (auto& r : res) {
    Rational q;
    if (r.real && snap_rational(p, r.box, q)) r.box = Box::point(q);
  }
  out = std::move(res);
  return true;
}

}  // namespace

CInterval eval_poly(const IntPoly& p, const CInterval& z) {
  mpfr_prec_t pr = z.prec();
  CInterval acc(pr);
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * z;
    acc.re = acc.re + Interval::from_q(Rational(p.c[i]), pr);
  }
  return acc;
}

CInterval eval_poly(const QPoly& p, const CInterval& z) {
  mpfr_prec_t pr = z.prec();
  CInterval acc(pr);
  for (int i = p.degree(); i >= 0; --i) {
    acc = acc * z;
    acc.re = acc.re + Interval::from_q(p[i], pr);
  }
  return acc;
}

Interval eval_poly(const QPoly& p, const Interval& x) {
  Interval acc(x.prec());
  for (int i = p.degree(); i >= 0; --i) acc = acc * x + Interval::from_q(p[i], x.prec());
  return acc;
}

std::vector<IsolatedRoot> isolate_roots(const IntPoly& p0) {
  if (p0.degree() < 1) return {};
  IntPoly p = p0;
  std::vector<IsolatedRoot> out;
  if (p.c[0] == 0) {
    out.push_back({Box::point(0), true});
    p.c.erase(p.c.begin());
    if (p.degree() == 0) return out;
  }
  if (p.degree() == 1) {
    Rational r(-p.c[0], p.c[1]);
    r.canonicalize();
    out.push_back({Box::point(r), true});
    return out;
  }
  // precision grows with coefficient size
  long bits = 0;
  for (auto& x : p.c) bits = std::max<long>(bits, (long)mpz_sizeinbase(x.get_mpz_t(), 2));
  mpfr_prec_t prec = 64;
  if (bits > 60) prec = 64 + 2 * bits;
  for (int attempt = 0; attempt < 12; ++attempt) {
    std::vector<IsolatedRoot> res;
    if (try_isolate(p, prec, res)) {
      for (auto& r : res) out.push_back(r);
      return out;
    }
    prec *= 2;
  }
  throw Error(ErrorCode::PrecisionExhausted, "root isolation failed");
}

IsolatedRoot refine_root(const IntPoly& p0, const IsolatedRoot& r, const Rational& width) {
  if (r.box.width() <= width) return r;
  IntPoly p = p0;
  IntPoly dp = derivative(p);
  // precision from target width and location
  Rational mag = abs_q(r.box.re_hi) + abs_q(r.box.im_hi) + abs_q(r.box.re_lo) + abs_q(r.box.im_lo) + 1;
  long need = std::max<long>(64, (long)(-log2_upper(width) + log2_upper(mag) + 40));
  Rational cre = (r.box.re_lo + r.box.re_hi) / 2, cim = r.real ? Rational(0) : (r.box.im_lo + r.box.im_hi) / 2;
  for (mpfr_prec_t prec = 64; prec < 4 * need + 256; prec *= 2) {
    mpfr_prec_t pr = std::min<mpfr_prec_t>(prec, need + 64);
    std::vector<Mpf> c;
    for (auto& x : p.c) {
      Mpf m(pr);
      mpfr_set_z(m.v, x.get_mpz_t(), MPFR_RNDN);
      c.push_back(m);
    }
    MpC z(pr);
    mpfr_set_q(z.re.v, cre.get_mpq_t(), MPFR_RNDN);
    mpfr_set_q(z.im.v, cim.get_mpq_t(), MPFR_RNDN);
    MpC pz(pr), dpz(pr);
    for (int it = 0; it < 200; ++it) {
      horner(c, z, pz, dpz);
      if (mpfr_zero_p(dpz.re.v) && mpfr_zero_p(dpz.im.v)) break;
      MpC w = divc(pz, dpz);
      z = sub(z, w);
      if (r.real) mpfr_set_zero(z.im.v, 1);
      if (log2abs(w) < log2abs(z) - (double)pr + 4 || (mpfr_zero_p(w.re.v) && mpfr_zero_p(w.im.v))) break;
      Rational rad;
      if (it % 4 == 3 && newton_radius(p, dp, z, rad)) {
        Box b = make_box(z, rad, r.real);
        if (r.box.contains(b) && b.width() <= width) return {b, r.real};
      }
    }
    Rational rad;
    if (newton_radius(p, dp, z, rad)) {
      Box b = make_box(z, rad, r.real);
      if (r.box.contains(b) && b.width() <= width) return {b, r.real};
      if (r.box.contains(b)) {
        cre = (b.re_lo + b.re_hi) / 2;
        cim = r.real ? Rational(0) : (b.im_lo + b.im_hi) / 2;
        need += 32;
      }
    }
  }
  throw Error(ErrorCode::PrecisionExhausted, "root refinement failed");
}

}  // namespace ldsw
