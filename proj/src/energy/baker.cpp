#include <cmath>

#include "ldsw/energy/energy.hpp"
#include "ldsw/exactnum/errors.hpp"

namespace ldsw::energy {

namespace {

constexpr mpfr_prec_t kPrec = 128;

Interval iv(const Rational& q) { return Interval::from_q(q, kPrec); }

Integer ceil_iv(const Interval& x) { return ceil_q(x.hi_q()); }

// lower bound of h(a), refined until positive
Interval positive_height(const AlgNum& a) {
  for (mpfr_prec_t p = kPrec; p <= 4096; p *= 2) {
    Interval h = weil_height(a, p);
    if (h.positive()) return h;
  }
  throw Error(ErrorCode::PrecisionExhausted, "height lower bound stays at 0");
}

}  // namespace

BakerBound baker_lower_bound(int m, long D, const Rational& A, const Rational& Bp) {
  if (m < 1 || D < 1) throw Error(ErrorCode::InvalidParameters, "Baker bound needs m, D >= 1");
  if (A < 3 || Bp < 3) throw Error(ErrorCode::InvalidParameters, "Baker bound needs A, B' >= 3");
  Interval base = iv(Rational(16L * m * D)).pow_ui(2UL * (m + 2));
  Interval v = base * iv(A).log().pow_ui(m) * iv(Bp).log();
  return {m, D, A, Bp, (-v).lo_q()};
}

BakerThreshold baker_threshold(const AlgNum& alpha, const AlgNum& beta) {
  if (!is_unit_modulus(alpha)) throw Error(ErrorCode::PreconditionViolated, "alpha must have modulus 1");
  if (root_of_unity_order(alpha)) throw Error(ErrorCode::PreconditionViolated, "alpha is a root of unity");
  if (beta.is_zero()) throw Error(ErrorCode::PreconditionViolated, "beta must be nonzero");
  BakerThreshold out;
  Interval ha = positive_height(alpha), hb = weil_height(beta, kPrec);
  // alpha^n = beta forces h(beta) = n h(alpha)
  Integer n = ceil_q(hb.hi_q() / ha.lo_q());
  out.N = n < 1 ? 1 : n.get_ui();
  out.D = (long)alpha.degree() * beta.degree();
  Rational A = 3;
  for (const AlgNum* x : {&alpha, &beta}) {
    Rational h = Rational(minimal_polynomial(*x).height() + 1);
    if (h > A) A = h;
    Interval hx = x == &alpha ? ha : hb;
    Rational e = Rational(ceil_iv(hx.exp()) + 1);
    if (e > A) A = e;
  }
  out.A = A;
  if (!is_unit_modulus(beta)) {
    // |alpha^n - beta| >= ||beta| - 1|
    Interval gap;
    for (long bits = 64;; bits *= 2) {
      gap = (beta.enclosure(bits).abs() - iv(1)).abs();
      if (gap.positive()) break;
      if (bits > 1 << 16) throw Error(ErrorCode::PrecisionExhausted, "modulus gap of beta");
    }
    Integer c = ceil_q(Rational(-std::floor(std::log2(gap.lo_d())))) + 1;
    out.C = c < 1 ? Integer(1) : c;
    return out;
  }
  // three logarithms: n Log alpha - Log beta + 2k Log(-1), |k| <= n + 1
  Interval W = iv(Rational(48 * out.D)).pow_ui(10) * iv(A).log().pow_ui(3);
  Interval l5 = iv(5).log() / Interval::log2_const(kPrec);
  out.C = ceil_iv(iv(1) + l5 * W);
  return out;
}

}  // namespace ldsw::energy
