#include <cmath>
#include <sstream>

#include "ldsw/energy/energy.hpp"
#include "ldsw/exactnum/algexpr.hpp"
#include "ldsw/exactnum/errors.hpp"

namespace ldsw::energy {

namespace {

constexpr mpfr_prec_t kPrec = 128;
constexpr unsigned long kThresholdCap = 1UL << 62;

Interval iv(const Rational& q) { return Interval::from_q(q, kPrec); }
Interval iv_n(unsigned long n) { return iv(Rational(n)); }

struct Term {
  AlgNum root;
  std::vector<AlgNum> coeffs;  // coefficient of n^e
};

// |x| enclosure
Interval mag(const AlgNum& x) { return x.enclosure(96).abs().with_prec(kPrec); }

Interval mag_lower_positive(const AlgNum& x) {
  for (long bits = 64; bits <= (1L << 14); bits *= 2) {
    Interval m = x.enclosure(bits).abs().with_prec(kPrec);
    if (m.positive()) return m;
  }
  throw Error(ErrorCode::PrecisionExhausted, "nonzero coefficient not separated from 0");
}

// S n^k r^n, r <= 1 (r == 1 flagged exactly)
struct Tail {
  Interval S;
  Interval r;
  bool r_is_one = false;
  int k = 0;
};

// |x| / |y| with upper bound below 1, given |x| < |y|
Interval ratio_below_one(const AlgNum& x, const AlgNum& y) {
  for (long bits = 64; bits <= (1L << 14); bits *= 2) {
    Interval r = x.enclosure(bits).abs().with_prec(kPrec) / y.enclosure(bits).abs().with_prec(kPrec);
    if (mpfr_cmp_ui(r.hi(), 1) < 0) return r;
  }
  throw Error(ErrorCode::PrecisionExhausted, "modulus ratio not separated from 1");
}

// smallest N with S n^k r^n <= m / (T + 1) for every n >= N
std::optional<unsigned long> tail_threshold(const Tail& t, const Interval& K) {
  if (!t.S.positive() && mpfr_sgn(t.S.hi()) == 0) return 1;
  Interval lk = K.log();
  if (t.r_is_one) {
    if (t.k >= 0) throw Error(ErrorCode::InternalInconsistency, "non-decaying tail term");
    if (mpfr_cmp_ui(K.hi(), 1) <= 0) return 1;
    Interval e = (lk / iv(-t.k)).exp();
    Rational n = Rational(ceil_q(e.hi_q()));
    if (n >= Rational(kThresholdCap)) return std::nullopt;
    return std::max<unsigned long>(1, n.get_num().get_ui());
  }
  Interval lr = t.r.log();
  auto g_ok = [&](unsigned long n) {
    Interval ln = iv_n(n).log();
    Interval g = iv(t.k) * ln + iv_n(n) * lr + lk;
    return mpfr_sgn(g.hi()) <= 0;
  };
  unsigned long start = 1;
  if (t.k > 0) {
    double s = std::ceil(t.k / (-lr).lo_d()) + 1;
    if (!(s < 1e18)) return std::nullopt;
    start = (unsigned long)s;
  }
  unsigned long hi = start;
  while (!g_ok(hi)) {
    if (hi > kThresholdCap / 2) return std::nullopt;
    hi *= 2;
  }
  unsigned long lo = std::max(start, hi / 2);
  if (g_ok(lo)) return lo;
  while (hi - lo > 1) {
    unsigned long mid = lo + (hi - lo) / 2;
    (g_ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

// N with sum of tails < m for every n >= N
std::optional<unsigned long> threshold(const std::vector<Tail>& tails, const Interval& m) {
  unsigned long N = 1;
  Interval T1 = iv(Rational((long)tails.size() + 1));
  for (auto& t : tails) {
    Interval K = T1 * t.S / m;
    if (!K.positive()) continue;
    auto n = tail_threshold(t, K);
    if (!n) return std::nullopt;
    N = std::max(N, *n);
  }
  return N;
}

std::string fmt_iv(const Interval& x) {
  std::ostringstream os;
  os.precision(6);
  os << x.lo_d();
  return os.str();
}

SignAnalysis real_branch(const std::vector<Term>& ts, unsigned long offset) {
  for (auto& t : ts)
    if (!t.root.is_real() || sign_real(t.root) <= 0) throw Error(ErrorCode::HypothesisViolated, "real branch needs positive real roots");
  size_t dom = 0;
  for (size_t i = 1; i < ts.size(); ++i) {
    int c = compare_real(ts[i].root, ts[dom].root);
    if (c > 0) dom = i;
  }
  const Term& D = ts[dom];
  int l = (int)D.coeffs.size() - 1;
  const AlgNum& a = D.coeffs[l];
  Interval am = mag_lower_positive(a);
  std::vector<Tail> tails;
  for (int e = 0; e < l; ++e)
    if (!D.coeffs[e].is_zero()) tails.push_back({mag(D.coeffs[e]), iv(1), true, e - l});
  for (size_t i = 0; i < ts.size(); ++i) {
    if (i == dom) continue;
    Interval r = ratio_below_one(ts[i].root, D.root);
    for (size_t e = 0; e < ts[i].coeffs.size(); ++e)
      if (!ts[i].coeffs[e].is_zero()) tails.push_back({mag(ts[i].coeffs[e]), r, false, (int)e - l});
  }
  auto N = threshold(tails, am);
  SignAnalysis out;
  std::ostringstream cert;
  cert << "dominant root " << D.root.to_string() << " degree " << l << ", |lead| >= " << fmt_iv(am);
  out.certificate = cert.str();
  if (!N) {
    out.certificate += ", threshold overflow";
    return out;
  }
  out.kind = sign_real(a) > 0 ? SignKind::NonnegFrom : SignKind::NegativeFrom;
  out.N = std::max(*N, offset);
  return out;
}

// k with root * conj(g)^k real positive, |k| <= P
std::optional<int> argument_power(const AlgNum& root, const AlgNum& g, int P) {
  AlgExpr r = AlgExpr::leaf(root);
  double tr = std::atan2(root.approx_im(), root.approx_re()), tg = std::atan2(g.approx_im(), g.approx_re());
  std::vector<int> order;
  for (int k = -P; k <= P; ++k) order.push_back(k);
  auto dist = [&](int k) {
    double d = std::remainder(tr - k * tg, 2 * M_PI);
    return std::fabs(d);
  };
  std::sort(order.begin(), order.end(), [&](int x, int y) { return dist(x) < dist(y); });
  for (int k : order) {
    if (dist(k) > 1e-3) break;
    AlgExpr e = k >= 0 ? r * AlgExpr::leaf(g, true).pow(k) : r * AlgExpr::leaf(g).pow(-k);
    if (!is_zero(e - e.conj())) continue;
    if (sign_of(e) > 0) return k;
  }
  return std::nullopt;
}

bool is_one(const AlgNum& x) { return x.is_rational() && x.rational() == 1; }

SignAnalysis complex_branch(const std::vector<Term>& ts0, const AlgNum& g, int P, unsigned long offset) {
  std::optional<AlgNum> c;
  std::vector<Term> ts;
  for (auto& t : ts0) {
    if (is_one(t.root) && t.coeffs.size() == 2) {
      if (!t.coeffs[1].is_zero()) c = t.coeffs[1];
      ts.push_back({t.root, {t.coeffs[0]}});
    } else {
      if (t.coeffs.size() != 1) throw Error(ErrorCode::HypothesisViolated, "repeated non-trivial root");
      ts.push_back(t);
    }
  }
  SignAnalysis out;
  std::ostringstream cert;
  if (c) {
    bool inside = true;
    for (auto& t : ts)
      if (compare_modulus(t.root, 1) > 0) inside = false;
    if (inside) {
      Interval S = iv(0);
      for (auto& t : ts) S = S + mag(t.coeffs[0]);
      Interval N = S / mag_lower_positive(*c);
      out.kind = sign_real(*c) > 0 ? SignKind::NonnegFrom : SignKind::NegativeFrom;
      out.N = std::max<unsigned long>(ceil_q(N.hi_q()).get_ui() + 1, offset);
      cert << "linear term dominates bounded part";
      out.certificate = cert.str();
      return out;
    }
  }
  if (ts.empty()) {
    out.kind = SignKind::NonnegFrom;
    out.N = offset;
    out.certificate = "eventually zero";
    return out;
  }
  size_t top = 0;
  for (size_t i = 1; i < ts.size(); ++i)
    if (compare_moduli(ts[i].root, ts[top].root) > 0) top = i;
  std::vector<size_t> block;
  std::vector<Tail> tails;
  for (size_t i = 0; i < ts.size(); ++i) {
    if (i == top || compare_moduli(ts[i].root, ts[top].root) == 0) {
      block.push_back(i);
    } else {
      tails.push_back({mag(ts[i].coeffs[0]), ratio_below_one(ts[i].root, ts[top].root), false, 0});
    }
  }
  if (c) {
    // c n against L^n, L > 1 here
    Interval L = mag(ts[top].root);
    tails.push_back({mag(*c), iv(1) / L, false, 1});
  }
  std::vector<int> ks;
  int K = 0;
  for (size_t i : block) {
    auto k = argument_power(ts[i].root, g, P);
    if (!k) throw Error(ErrorCode::HypothesisViolated, "root is not a positive multiple of a generator power");
    ks.push_back(*k);
    K = std::max(K, std::abs(*k));
  }
  std::vector<AlgNum> b(2 * K + 1, AlgNum(0));
  for (size_t j = 0; j < block.size(); ++j) b[K + ks[j]] = ts[block[j]].coeffs[0];
  CircleSign s;
  try {
    s = min_on_circle(b);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PrecisionExhausted) throw;
    out.certificate = "minimum on the circle undecided";
    return out;
  }
  cert << "dominant modulus block of " << block.size() << " terms, K = " << K;
  if (s == CircleSign::Negative) {
    out.kind = K == 0 ? SignKind::NegativeFrom : SignKind::NegativeOften;
    out.certificate = cert.str() + ", minimum on the circle < 0";
    if (K == 0) {
      auto N = threshold(tails, mag_lower_positive(b[0]));
      if (!N) {
        out.kind = SignKind::Inconclusive;
        return out;
      }
      out.N = std::max(*N, offset);
    }
    return out;
  }
  if (s == CircleSign::Zero) {
    if (tails.empty()) {
      out.kind = SignKind::NonnegFrom;
      out.N = offset;
      out.certificate = cert.str() + ", minimum 0 without tail";
    } else {
      out.certificate = cert.str() + ", minimum 0 with a tail";
    }
    return out;
  }
  double lo = min_on_circle_lower(b);
  if (!(lo > 0)) {
    out.certificate = cert.str() + ", no positive lower bound";
    return out;
  }
  Interval m = iv(Rational(lo));
  auto N = threshold(tails, m);
  cert << ", minimum >= " << lo;
  out.certificate = cert.str();
  if (!N) return out;
  out.kind = SignKind::NonnegFrom;
  out.N = std::max(*N, offset);
  return out;
}

SignAnalysis analyze_terms(const std::vector<Term>& ts, const std::optional<AlgNum>& g, int P, unsigned long offset) {
  if (ts.empty()) return {SignKind::NonnegFrom, offset, "eventually zero"};
  bool all_real = true;
  for (auto& t : ts)
    if (!t.root.is_real()) all_real = false;
  if (all_real) return real_branch(ts, offset);
  if (!g) throw Error(ErrorCode::HypothesisViolated, "non-real roots need a generator");
  return complex_branch(ts, *g, P, offset);
}

}  // namespace

SignAnalysis eventual_sign(const lrs::ExpPolyForm& f, const std::optional<AlgNum>& generator, int max_power) {
  std::vector<Term> ts;
  for (auto& t : f.terms()) {
    Term x{t.root, {}};
    for (int e = 0; e <= t.degree; ++e) x.coeffs.push_back(t.coeff(e));
    ts.push_back(std::move(x));
  }
  return analyze_terms(ts, generator, std::max(1, max_power), f.offset());
}

RestrictedSign restricted_sign_decision(const std::vector<std::pair<AlgNum, AlgNum>>& terms, const AlgNum& gamma) {
  std::vector<Term> ts;
  for (auto& [c, L] : terms) {
    if (c.is_zero()) continue;
    if (L.is_zero()) throw Error(ErrorCode::HypothesisViolated, "zero root");
    bool merged = false;
    for (auto& t : ts)
      if (alg_equal(t.root, L)) {
        t.coeffs[0] = alg_arith(t.coeffs[0], c, ArithOp::Add);
        merged = true;
      }
    if (!merged) ts.push_back({L, {c}});
  }
  std::erase_if(ts, [](const Term& t) { return t.coeffs[0].is_zero(); });
  RestrictedSign out;
  SignAnalysis a = analyze_terms(ts, gamma, 16, 0);
  out.N = a.N;
  out.certificate = a.certificate;
  auto value_sign = [&](unsigned long n) {
    AlgExpr s;
    for (auto& t : ts) s = s + AlgExpr::leaf(t.coeffs[0]) * AlgExpr::leaf(t.root).pow(n);
    return sign_of(s);
  };
  constexpr unsigned long kScan = 5000;
  auto first_negative = [&](unsigned long upto) -> std::optional<unsigned long> {
    for (unsigned long n = 0; n < upto; ++n)
      if (value_sign(n) < 0) return n;
    return std::nullopt;
  };
  switch (a.kind) {
    case SignKind::NonnegFrom:
      if (a.N > kScan) return out;
      out.n = first_negative(a.N);
      out.decision = out.n ? SignDecision::NegativeAt : SignDecision::AlwaysNonneg;
      return out;
    case SignKind::NegativeFrom:
      out.n = first_negative(std::min(a.N, kScan) + 1);
      out.decision = SignDecision::NegativeAt;
      return out;
    case SignKind::NegativeOften:
      out.decision = SignDecision::NegInfinitelyOften;
      out.n = first_negative(kScan);
      return out;
    case SignKind::Inconclusive:
      return out;
  }
  return out;
}

}  // namespace ldsw::energy
