#include <cmath>

#include "ldsw/energy/energy.hpp"
#include "ldsw/exactnum/errors.hpp"

namespace ldsw::energy {

namespace {

constexpr long kBits = 96;
constexpr int kMaxGridLog = 17;

struct Gauss {
  Rational re, im;
};

std::optional<Rational> perfect_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  mpz_class n = q.get_num(), d = q.get_den(), rn, rd;
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

std::optional<Gauss> as_gaussian(const AlgNum& b) {
  if (b.is_rational()) return Gauss{b.rational(), 0};
  if (b.degree() > 2) return std::nullopt;
  AlgNum s = alg_arith(b, b.conj(), ArithOp::Add), p = alg_arith(b, b.conj(), ArithOp::Mul);
  if (!s.is_rational() || !p.is_rational()) return std::nullopt;
  Rational re = s.rational() / 2;
  auto im = perfect_sqrt(p.rational() - re * re);
  if (!im) return std::nullopt;
  if (b.approx_im() < 0) *im = -*im;
  return Gauss{re, *im};
}

void check_symmetric(const std::vector<AlgNum>& b) {
  if (b.size() % 2 == 0) throw Error(ErrorCode::DimensionMismatch, "coefficient vector must have odd length");
  size_t n = b.size();
  for (size_t k = 0; k < n; ++k)
    if (!alg_equal(b[n - 1 - k], b[k].conj())) throw Error(ErrorCode::NotRealValued, "coefficients are not conjugate symmetric");
}

struct Grid {
  double lower = 0;    // certified lower bound of the minimum
  bool negative = false;  // some sample certainly < 0
};

// f(theta) = b0 + sum_k 2 Re(b_k e^{i k theta}), sampled on G points with a Lipschitz bound between them
Grid grid_scan(const std::vector<CInterval>& b, int K, long G) {
  mpfr_prec_t p = 96;
  Interval lip = Interval::from_q(0, p);
  for (int k = 1; k <= K; ++k) lip = lip + b[K + k].abs() * Interval::from_q(2 * k, p);
  Interval two_pi = Interval::pi(p) * Interval::from_q(2, p);
  Interval half_step = Interval::pi(p) / Interval::from_q(G, p);
  Grid g;
  double mn = INFINITY;
  for (long j = 0; j < G; ++j) {
    Interval th = two_pi * Interval::from_q(Rational(j, G), p);
    Interval f = b[K].re;
    for (int k = 1; k <= K; ++k) {
      Interval a = th * Interval::from_q(k, p);
      f = f + Interval::from_q(2, p) * (b[K + k].re * a.cos() - b[K + k].im * a.sin());
    }
    if (f.negative()) g.negative = true;
    mn = std::min(mn, f.lo_d());
  }
  g.lower = (Interval::from_q(Rational(mn), p) - lip * half_step).lo_d();
  return g;
}

std::vector<CInterval> enclose(const std::vector<AlgNum>& b) {
  std::vector<CInterval> out;
  for (auto& x : b) out.push_back(x.enclosure(kBits));
  return out;
}

// real and imaginary parts of (1 + i t)^n
std::pair<QPoly, QPoly> one_plus_it(int n) {
  QPoly re = QPoly::constant(1), im;
  for (int j = 0; j < n; ++j) {
    QPoly r2 = re - im * QPoly::monomial(1, 1);
    im = im + re * QPoly::monomial(1, 1);
    re = r2;
  }
  return {re, im};
}

std::optional<CircleSign> exact_sign(const std::vector<AlgNum>& b, int K) {
  std::vector<Gauss> g;
  for (int k = 0; k <= K; ++k) {
    auto x = as_gaussian(b[K + k]);
    if (!x) return std::nullopt;
    g.push_back(*x);
  }
  QPoly one_t2({1, 0, 1});
  QPoly P = pow(one_t2, K) * g[0].re;
  Rational at_minus_one = g[0].re;
  for (int k = 1; k <= K; ++k) {
    auto [re, im] = one_plus_it(2 * k);
    P = P + (re * g[k].re - im * g[k].im) * pow(one_t2, K - k) * Rational(2);
    at_minus_one += 2 * g[k].re * (k % 2 ? -1 : 1);
  }
  if (P.is_zero()) return CircleSign::Zero;
  if (at_minus_one < 0 || P.lead() < 0) return CircleSign::Negative;
  bool touches = at_minus_one == 0;
  if (P.degree() > 0)
    for (auto& [r, mult] : poly_roots(P)) {
      if (!r.is_real()) continue;
      if (mult % 2) return CircleSign::Negative;
      touches = true;
    }
  return touches ? CircleSign::Zero : CircleSign::Positive;
}

}  // namespace

CircleSign min_on_circle(const std::vector<AlgNum>& b) {
  check_symmetric(b);
  int K = (int)b.size() / 2;
  if (K == 0) {
    int s = sign_real(b[0]);
    return s < 0 ? CircleSign::Negative : s == 0 ? CircleSign::Zero : CircleSign::Positive;
  }
  std::vector<CInterval> e = enclose(b);
  for (int lg = 6; lg <= 12; ++lg) {
    Grid g = grid_scan(e, K, (16L * K) << (lg - 6));
    if (g.negative) return CircleSign::Negative;
    if (g.lower > 0) return CircleSign::Positive;
  }
  if (auto s = exact_sign(b, K)) return *s;
  for (int lg = 13; lg <= kMaxGridLog; ++lg) {
    Grid g = grid_scan(e, K, (16L * K) << (lg - 6));
    if (g.negative) return CircleSign::Negative;
    if (g.lower > 0) return CircleSign::Positive;
  }
  throw Error(ErrorCode::PrecisionExhausted, "minimum on the circle is too close to 0");
}

double min_on_circle_lower(const std::vector<AlgNum>& b) {
  check_symmetric(b);
  int K = (int)b.size() / 2;
  std::vector<CInterval> e = enclose(b);
  if (K == 0) return e[0].re.lo_d();
  double best = -INFINITY, prev = -INFINITY;
  for (int lg = 6; lg <= kMaxGridLog; ++lg) {
    Grid g = grid_scan(e, K, (16L * K) << (lg - 6));
    best = std::max(best, g.lower);
    if (g.negative) break;
    // stop once doubling the grid gains little
    if (best > 0 && best - prev < best / 16) break;
    prev = best;
  }
  return best;
}

}  // namespace ldsw::energy
