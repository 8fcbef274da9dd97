#pragma once

#include <mpfr.h>

#include <string>

#include "ldsw/exactnum/rational.hpp"

namespace ldsw {

// Closed real interval [lo, hi] with MPFR endpoints and outward rounding.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128);
  Interval(const Interval& o);
  Interval(Interval&& o) noexcept;
  Interval& operator=(const Interval& o);
  Interval& operator=(Interval&& o) noexcept;
  ~Interval();

  static Interval from_q(const Rational& q, mpfr_prec_t prec);
  static Interval from_bounds(const Rational& lo, const Rational& hi, mpfr_prec_t prec);
  static Interval pi(mpfr_prec_t prec);
  static Interval log2_const(mpfr_prec_t prec);

  mpfr_prec_t prec() const { return mpfr_get_prec(lo_); }
  const __mpfr_struct* lo() const { return lo_; }
  const __mpfr_struct* hi() const { return hi_; }
  __mpfr_struct* lo() { return lo_; }
  __mpfr_struct* hi() { return hi_; }

  Rational lo_q() const;
  Rational hi_q() const;
  Rational mid_q() const;
  double lo_d() const { return mpfr_get_d(lo_, MPFR_RNDD); }
  double hi_d() const { return mpfr_get_d(hi_, MPFR_RNDU); }
  double mid_d() const;
  // upper bound of hi - lo
  double width_d() const;
  // upper bound of log2(hi - lo); very negative when degenerate
  long width_log2() const;

  bool contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }
  bool positive() const { return mpfr_sgn(lo_) > 0; }
  bool negative() const { return mpfr_sgn(hi_) < 0; }
  bool nonnegative() const { return mpfr_sgn(lo_) >= 0; }
  bool contains(const Rational& q) const;
  bool subset_of(const Interval& o) const;
  bool disjoint(const Interval& o) const;
  // |x| <= returned upper bound
  Interval mag() const;

  Interval operator+(const Interval& o) const;
  Interval operator-(const Interval& o) const;
  Interval operator*(const Interval& o) const;
  Interval operator/(const Interval& o) const;  // throws if o contains 0
  Interval operator-() const;
  Interval sqr() const;
  Interval abs() const;
  Interval sqrt() const;
  Interval exp() const;
  Interval log() const;  // requires positive
  Interval pow_ui(unsigned long e) const;
  Interval cos() const;
  Interval sin() const;
  Interval atan() const;
  Interval hull(const Interval& o) const;
  Interval with_prec(mpfr_prec_t p) const;
  // [lo - r, hi + r]
  Interval inflate(const Interval& r) const;

  std::string to_string(int digits = 20) const;

 private:
  mpfr_t lo_, hi_;
};

Interval max_iv(const Interval& a, const Interval& b);

// Axis-aligned rational rectangle in C.
struct Box {
  Rational re_lo, re_hi, im_lo, im_hi;
  static Box point(const Rational& re, const Rational& im = 0) { return {re, re, im, im}; }
  Rational width() const;  // max side length
  bool contains(const Box& o) const;
  bool disjoint(const Box& o) const;
  bool contains_point(const Rational& re, const Rational& im) const;
  Box conj() const { return {re_lo, re_hi, -im_hi, -im_lo}; }
  bool symmetric_about_real() const { return im_lo == -im_hi; }
  bool off_real_axis() const { return im_lo > 0 || im_hi < 0; }
};

// Complex rectangle enclosure.
struct CInterval {
  Interval re, im;
  CInterval() = default;
  explicit CInterval(mpfr_prec_t p) : re(p), im(p) {}
  CInterval(Interval r, Interval i) : re(std::move(r)), im(std::move(i)) {}
  static CInterval from_q(const Rational& re, const Rational& im, mpfr_prec_t p);
  static CInterval from_box(const Box& b, mpfr_prec_t p);
  // e^{2 pi i x}
  static CInterval unit(const Interval& x);

  mpfr_prec_t prec() const { return re.prec(); }
  CInterval operator+(const CInterval& o) const;
  CInterval operator-(const CInterval& o) const;
  CInterval operator*(const CInterval& o) const;
  CInterval operator*(const Interval& s) const;
  CInterval operator/(const CInterval& o) const;
  CInterval operator-() const;
  CInterval conj() const;
  CInterval pow_ui(unsigned long e) const;
  Interval abs2() const;
  Interval abs() const;
  // argument / (2 pi), requires the rectangle to avoid 0; result has unspecified integer offset
  Interval turns() const;
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  Box to_box() const;
  // upper bound of max side length
  double width_d() const;
};

}  // namespace ldsw
