#include "ldsw/exactnum/interval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "ldsw/exactnum/errors.hpp"

namespace ldsw {

namespace {

struct Tmp {
  mpfr_t v;
  explicit Tmp(mpfr_prec_t p) { mpfr_init2(v, p); }
  ~Tmp() { mpfr_clear(v); }
  Tmp(const Tmp&) = delete;
  Tmp& operator=(const Tmp&) = delete;
};

Rational mpfr_to_q(const __mpfr_struct* x) {
  Rational q;
  mpfr_get_q(q.get_mpq_t(), x);
  return q;
}

}  // namespace

Interval::Interval(mpfr_prec_t prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) {
  mpfr_init2(lo_, o.prec());
  mpfr_init2(hi_, o.prec());
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval::Interval(Interval&& o) noexcept {
  mpfr_init2(lo_, mpfr_get_prec(o.lo_));
  mpfr_init2(hi_, mpfr_get_prec(o.hi_));
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

Interval& Interval::operator=(const Interval& o) {
  if (this == &o) return *this;
  mpfr_set_prec(lo_, o.prec());
  mpfr_set_prec(hi_, o.prec());
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
  return *this;
}

Interval& Interval::operator=(Interval&& o) noexcept {
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::from_q(const Rational& q, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_, q.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, q.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::from_bounds(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::log2_const(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_log2(r.lo_, MPFR_RNDD);
  mpfr_const_log2(r.hi_, MPFR_RNDU);
  return r;
}

Rational Interval::lo_q() const { return mpfr_to_q(lo_); }
Rational Interval::hi_q() const { return mpfr_to_q(hi_); }
Rational Interval::mid_q() const { return (lo_q() + hi_q()) / 2; }

double Interval::mid_d() const {
  Tmp t(prec() + 1);
  mpfr_add(t.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(t.v, t.v, 1, MPFR_RNDN);
  return mpfr_get_d(t.v, MPFR_RNDN);
}

double Interval::width_d() const {
  Tmp t(64);
  mpfr_sub(t.v, hi_, lo_, MPFR_RNDU);
  return mpfr_get_d(t.v, MPFR_RNDU);
}

long Interval::width_log2() const {
  Tmp t(64);
  mpfr_sub(t.v, hi_, lo_, MPFR_RNDU);
  if (mpfr_zero_p(t.v)) return -(1L << 40);
  return mpfr_get_exp(t.v);
}

bool Interval::contains(const Rational& q) const {
  return mpfr_cmp_q(lo_, q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi_, q.get_mpq_t()) >= 0;
}

bool Interval::subset_of(const Interval& o) const {
  return mpfr_cmp(o.lo_, lo_) <= 0 && mpfr_cmp(hi_, o.hi_) <= 0;
}

bool Interval::disjoint(const Interval& o) const {
  return mpfr_cmp(hi_, o.lo_) < 0 || mpfr_cmp(o.hi_, lo_) < 0;
}

Interval Interval::mag() const {
  Interval a = abs();
  mpfr_set(a.lo_, a.hi_, MPFR_RNDD);
  return a;
}

Interval Interval::operator+(const Interval& o) const {
  Interval r(std::max(prec(), o.prec()));
  mpfr_add(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-(const Interval& o) const {
  Interval r(std::max(prec(), o.prec()));
  mpfr_sub(r.lo_, lo_, o.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, hi_, o.lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator-() const {
  Interval r(prec());
  mpfr_neg(r.lo_, hi_, MPFR_RNDD);
  mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  return r;
}

Interval Interval::operator*(const Interval& o) const {
  mpfr_prec_t p = std::max(prec(), o.prec());
  Interval r(p);
  if (nonnegative() && o.nonnegative()) {
    mpfr_mul(r.lo_, lo_, o.lo_, MPFR_RNDD);
    mpfr_mul(r.hi_, hi_, o.hi_, MPFR_RNDU);
    return r;
  }
  Tmp t(p);
  const __mpfr_struct* a[2] = {lo_, hi_};
  const __mpfr_struct* b[2] = {o.lo_, o.hi_};
  bool first = true;
  for (auto x : a)
    for (auto y : b) {
      mpfr_mul(t.v, x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t.v, r.lo_) < 0) mpfr_set(r.lo_, t.v, MPFR_RNDD);
      mpfr_mul(t.v, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t.v, r.hi_) > 0) mpfr_set(r.hi_, t.v, MPFR_RNDU);
      first = false;
    }
  return r;
}

Interval Interval::operator/(const Interval& o) const {
  if (o.contains_zero()) throw Error(ErrorCode::DivisionByZero, "interval division by an interval containing 0");
  mpfr_prec_t p = std::max(prec(), o.prec());
  Interval r(p);
  Tmp t(p);
  const __mpfr_struct* a[2] = {lo_, hi_};
  const __mpfr_struct* b[2] = {o.lo_, o.hi_};
  bool first = true;
  for (auto x : a)
    for (auto y : b) {
      mpfr_div(t.v, x, y, MPFR_RNDD);
      if (first || mpfr_cmp(t.v, r.lo_) < 0) mpfr_set(r.lo_, t.v, MPFR_RNDD);
      mpfr_div(t.v, x, y, MPFR_RNDU);
      if (first || mpfr_cmp(t.v, r.hi_) > 0) mpfr_set(r.hi_, t.v, MPFR_RNDU);
      first = false;
    }
  return r;
}

Interval Interval::abs() const {
  if (nonnegative()) return *this;
  if (mpfr_sgn(hi_) <= 0) return -*this;
  Interval r(prec());
  mpfr_set_zero(r.lo_, 1);
  if (mpfr_cmpabs(lo_, hi_) > 0)
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
  else
    mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::sqr() const {
  Interval a = abs();
  Interval r(prec());
  mpfr_sqr(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqr(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::sqrt() const {
  Interval r(prec());
  if (mpfr_sgn(hi_) < 0) throw Error(ErrorCode::InternalInconsistency, "sqrt of negative interval");
  if (mpfr_sgn(lo_) <= 0)
    mpfr_set_zero(r.lo_, 1);
  else
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
  mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::exp() const {
  Interval r(prec());
  mpfr_exp(r.lo_, lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::log() const {
  if (!positive()) throw Error(ErrorCode::InternalInconsistency, "log of non-positive interval");
  Interval r(prec());
  mpfr_log(r.lo_, lo_, MPFR_RNDD);
  mpfr_log(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::pow_ui(unsigned long e) const {
  if (e == 0) return from_q(1, prec());
  Interval base = (e % 2 == 0) ? abs() : *this;
  Interval r(prec());
  mpfr_pow_ui(r.lo_, base.lo_, e, MPFR_RNDD);
  mpfr_pow_ui(r.hi_, base.hi_, e, MPFR_RNDU);
  return r;
}

namespace {

// f Lipschitz-1 with |f| <= 1: [f(m) - r, f(m) + r]
template <class F>
Interval lip1(const Interval& x, F f) {
  mpfr_prec_t p = x.prec();
  Tmp m(p + 2), r(p + 2), a(p + 2);
  mpfr_add(m.v, x.lo(), x.hi(), MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  mpfr_sub(r.v, x.hi(), m.v, MPFR_RNDU);
  mpfr_sub(a.v, m.v, x.lo(), MPFR_RNDU);
  if (mpfr_cmp(a.v, r.v) > 0) mpfr_set(r.v, a.v, MPFR_RNDU);
  Interval out(p);
  f(out.lo(), m.v, MPFR_RNDD);
  f(out.hi(), m.v, MPFR_RNDU);
  mpfr_sub(out.lo(), out.lo(), r.v, MPFR_RNDD);
  mpfr_add(out.hi(), out.hi(), r.v, MPFR_RNDU);
  if (mpfr_cmp_si(out.lo(), -1) < 0) mpfr_set_si(out.lo(), -1, MPFR_RNDD);
  if (mpfr_cmp_si(out.hi(), 1) > 0) mpfr_set_si(out.hi(), 1, MPFR_RNDU);
  return out;
}

}  // namespace

Interval Interval::cos() const {
  return lip1(*this, [](mpfr_ptr o, mpfr_srcptr m, mpfr_rnd_t rnd) { mpfr_cos(o, m, rnd); });
}

Interval Interval::sin() const {
  return lip1(*this, [](mpfr_ptr o, mpfr_srcptr m, mpfr_rnd_t rnd) { mpfr_sin(o, m, rnd); });
}

Interval Interval::atan() const {
  Interval r(prec());
  mpfr_atan(r.lo_, lo_, MPFR_RNDD);
  mpfr_atan(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::hull(const Interval& o) const {
  Interval r(std::max(prec(), o.prec()));
  mpfr_min(r.lo_, lo_, o.lo_, MPFR_RNDD);
  mpfr_max(r.hi_, hi_, o.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::with_prec(mpfr_prec_t p) const {
  Interval r(p);
  mpfr_set(r.lo_, lo_, MPFR_RNDD);
  mpfr_set(r.hi_, hi_, MPFR_RNDU);
  return r;
}

Interval Interval::inflate(const Interval& rad) const {
  Interval r(prec());
  mpfr_sub(r.lo_, lo_, rad.hi_, MPFR_RNDD);
  mpfr_add(r.hi_, hi_, rad.hi_, MPFR_RNDU);
  return r;
}

std::string Interval::to_string(int digits) const {
  char buf[256];
  mpfr_snprintf(buf, sizeof buf, "[%.*RDe, %.*RUe]", digits, lo_, digits, hi_);
  return buf;
}

Interval max_iv(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec(), b.prec()));
  mpfr_max(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_max(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
  return r;
}

Rational Box::width() const {
  Rational a = re_hi - re_lo, b = im_hi - im_lo;
  return a > b ? a : b;
}

bool Box::contains(const Box& o) const {
  return re_lo <= o.re_lo && o.re_hi <= re_hi && im_lo <= o.im_lo && o.im_hi <= im_hi;
}

bool Box::disjoint(const Box& o) const {
  return re_hi < o.re_lo || o.re_hi < re_lo || im_hi < o.im_lo || o.im_hi < im_lo;
}

bool Box::contains_point(const Rational& re, const Rational& im) const {
  return re_lo <= re && re <= re_hi && im_lo <= im && im <= im_hi;
}

CInterval CInterval::from_q(const Rational& re, const Rational& im, mpfr_prec_t p) {
  return {Interval::from_q(re, p), Interval::from_q(im, p)};
}

CInterval CInterval::from_box(const Box& b, mpfr_prec_t p) {
  return {Interval::from_bounds(b.re_lo, b.re_hi, p), Interval::from_bounds(b.im_lo, b.im_hi, p)};
}

CInterval CInterval::unit(const Interval& x) {
  Interval t = x * (Interval::pi(x.prec()) * Interval::from_q(2, x.prec()));
  return {t.cos(), t.sin()};
}

CInterval CInterval::operator+(const CInterval& o) const { return {re + o.re, im + o.im}; }
CInterval CInterval::operator-(const CInterval& o) const { return {re - o.re, im - o.im}; }
CInterval CInterval::operator-() const { return {-re, -im}; }
CInterval CInterval::conj() const { return {re, -im}; }
CInterval CInterval::operator*(const Interval& s) const { return {re * s, im * s}; }

CInterval CInterval::operator*(const CInterval& o) const {
  return {re * o.re - im * o.im, re * o.im + im * o.re};
}

CInterval CInterval::operator/(const CInterval& o) const {
  Interval d = o.abs2();
  CInterval n = *this * o.conj();
  return {n.re / d, n.im / d};
}

CInterval CInterval::pow_ui(unsigned long e) const {
  if (im.contains_zero() && mpfr_zero_p(im.lo()) && mpfr_zero_p(im.hi()))
    return {re.pow_ui(e), Interval(prec())};
  CInterval r = from_q(1, 0, prec()), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Interval CInterval::abs2() const { return re.sqr() + im.sqr(); }
Interval CInterval::abs() const { return abs2().sqrt(); }

Interval CInterval::turns() const {
  mpfr_prec_t p = prec();
  Tmp cr(p + 2), ci(p + 2), w(p + 2), v(p + 2), rad(p + 2), cm(p + 2);
  mpfr_add(cr.v, re.lo(), re.hi(), MPFR_RNDN);
  mpfr_div_2ui(cr.v, cr.v, 1, MPFR_RNDN);
  mpfr_add(ci.v, im.lo(), im.hi(), MPFR_RNDN);
  mpfr_div_2ui(ci.v, ci.v, 1, MPFR_RNDN);
  // rad >= max distance from (cr, ci) to a corner
  mpfr_sub(w.v, re.hi(), re.lo(), MPFR_RNDU);
  mpfr_sub(v.v, im.hi(), im.lo(), MPFR_RNDU);
  mpfr_add(rad.v, w.v, v.v, MPFR_RNDU);
  // |c| lower bound
  mpfr_hypot(cm.v, cr.v, ci.v, MPFR_RNDD);
  if (mpfr_cmp(rad.v, cm.v) >= 0) throw Error(ErrorCode::PrecisionExhausted, "argument of a box near 0");
  Interval out(p);
  mpfr_atan2(out.lo(), ci.v, cr.v, MPFR_RNDD);
  mpfr_atan2(out.hi(), ci.v, cr.v, MPFR_RNDU);
  mpfr_mul_2ui(rad.v, rad.v, 1, MPFR_RNDU);
  mpfr_div(rad.v, rad.v, cm.v, MPFR_RNDU);
  mpfr_sub(out.lo(), out.lo(), rad.v, MPFR_RNDD);
  mpfr_add(out.hi(), out.hi(), rad.v, MPFR_RNDU);
  Interval twopi = Interval::pi(p) * Interval::from_q(2, p);
  return out / twopi;
}

Box CInterval::to_box() const { return {re.lo_q(), re.hi_q(), im.lo_q(), im.hi_q()}; }

double CInterval::width_d() const { return std::max(re.width_d(), im.width_d()); }

}  // namespace ldsw
