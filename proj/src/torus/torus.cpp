#include "ldsw/torus/torus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>

#include "ldsw/exactnum/algexpr.hpp"
#include "ldsw/exactnum/errors.hpp"
#include "ldsw/kernels/kernels.hpp"
#include "ldsw/lrs/lrs.hpp"

namespace ldsw::torus {

Boundedness is_bounded(const QMatrix& M, const RVec& q) {
  Boundedness b;
  for (int i = 0; i < M.rows(); ++i) {
    lrs::Lrs s = lrs::lds_coordinate(M, q, i);
    if (lrs::is_zero(s)) continue;
    lrs::ExpPolyForm f = lrs::exp_poly(s);
    for (auto& t : f.terms()) {
      int c = compare_modulus(t.root, 1);
      if (c > 0 || (c == 0 && t.degree > 0)) {
        b.bounded = false;
        b.coordinate = i;
        b.root = t.root;
        b.degree = t.degree;
        b.witness = "coordinate " + std::to_string(i) + ": root " + t.root.to_string() +
                    (c > 0 ? " has modulus > 1" : " on the unit circle with polynomial degree " + std::to_string(t.degree));
        return b;
      }
    }
  }
  return b;
}

long default_search_bound() {
  if (const char* e = std::getenv("LDSW_SEARCH_BOUND")) {
    char* end = nullptr;
    long v = std::strtol(e, &end, 10);
    if (end != e && *end == 0 && v > 0) return v;
  }
  return 64;
}

bool satisfies_relation(const std::vector<AlgNum>& gammas, const std::vector<long>& v) {
  AlgExpr p = AlgExpr::rational(1);
  for (size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    // unit modulus: the inverse is the conjugate
    p = p * AlgExpr::leaf(gammas[i], v[i] < 0).pow((unsigned long)std::labs(v[i]));
  }
  return is_zero(p - AlgExpr::rational(1));
}

namespace {

using IVec = std::vector<long>;

// Hermite normal form of the row lattice, zero rows removed
std::vector<IVec> hnf(const std::vector<IVec>& rows, int n) {
  std::vector<std::vector<Integer>> a;
  for (auto& r : rows) {
    std::vector<Integer> x(n);
    for (int j = 0; j < n; ++j) x[j] = r[j];
    a.push_back(x);
  }
  size_t top = 0;
  for (int c = 0; c < n && top < a.size(); ++c) {
    // Euclid on column c over rows top..end
    while (true) {
      size_t piv = a.size();
      for (size_t i = top; i < a.size(); ++i)
        if (a[i][c] != 0 && (piv == a.size() || abs(a[i][c]) < abs(a[piv][c]))) piv = i;
      if (piv == a.size()) break;
      std::swap(a[top], a[piv]);
      bool done = true;
      for (size_t i = top + 1; i < a.size(); ++i) {
        if (a[i][c] == 0) continue;
        Integer qt = a[i][c] / a[top][c];
        for (int j = c; j < n; ++j) a[i][j] -= qt * a[top][j];
        if (a[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (a[top][c] == 0) continue;
    if (a[top][c] < 0)
      for (int j = c; j < n; ++j) a[top][j] = -a[top][j];
    for (size_t i = 0; i < top; ++i) {
      Integer qt;
      mpz_fdiv_q(qt.get_mpz_t(), a[i][c].get_mpz_t(), a[top][c].get_mpz_t());
      for (int j = c; j < n; ++j) a[i][j] -= qt * a[top][j];
    }
    ++top;
  }
  std::vector<IVec> out;
  for (size_t i = 0; i < top; ++i) {
    IVec r(n);
    for (int j = 0; j < n; ++j) {
      if (!a[i][j].fits_slong_p()) throw Error(ErrorCode::InternalInconsistency, "relation entry overflow");
      r[j] = a[i][j].get_si();
    }
    out.push_back(r);
  }
  return out;
}

bool in_lattice(const std::vector<IVec>& h, IVec v) {
  size_t k = 0;
  for (size_t c = 0; c < v.size(); ++c) {
    bool pivot = k < h.size() && h[k][c] != 0;
    if (pivot) {
      if (v[c] % h[k][c] != 0) return false;
      long t = v[c] / h[k][c];
      for (size_t j = c; j < v.size(); ++j) v[j] -= t * h[k][j];
      ++k;
    } else if (v[c] != 0) {
      return false;
    }
  }
  return true;
}

// theta = arg(g) / 2 pi as a 64-bit fixed-point fraction, within 2 units
uint64_t fixed_turns(const AlgNum& g) {
  for (long bits = 96;; bits *= 2) {
    Interval t = g.enclosure(bits).turns();
    mpfr_t w, m;
    mpfr_init2(w, 64);
    mpfr_init2(m, t.prec() + 8);
    mpfr_sub(w, t.hi(), t.lo(), MPFR_RNDU);
    bool tight = mpfr_cmp_d(w, std::ldexp(1.0, -70)) < 0;
    uint64_t out = 0;
    if (tight) {
      mpfr_add(m, t.lo(), t.hi(), MPFR_RNDN);
      mpfr_div_2ui(m, m, 1, MPFR_RNDN);
      mpfr_mul_2ui(m, m, 64, MPFR_RNDN);
      Integer z;
      mpfr_get_z(z.get_mpz_t(), m, MPFR_RNDN);
      mpz_fdiv_r_2exp(z.get_mpz_t(), z.get_mpz_t(), 64);
      out = mpz_get_ui(z.get_mpz_t());
    }
    mpfr_clear(w);
    mpfr_clear(m);
    if (tight) return out;
    if (bits > 4096) throw Error(ErrorCode::PrecisionExhausted, "argument of a relation generator");
  }
}

}  // namespace

RelationBasis relation_basis(const std::vector<AlgNum>& gammas, long bound) {
  if (bound <= 0) bound = default_search_bound();
  int n = (int)gammas.size();
  for (auto& g : gammas)
    if (g.is_zero() || !is_unit_modulus(g)) throw Error(ErrorCode::PreconditionViolated, "relation_basis needs unit-modulus inputs");
  std::vector<IVec> rel;
  // scan variables: index, range
  struct Var {
    int i;
    long lo, hi;
  };
  std::vector<Var> vars;
  std::vector<int> weight(n, 1);
  for (int i = 0; i < n; ++i) {
    if (auto k = root_of_unity_order(gammas[i])) {
      IVec v(n, 0);
      v[i] = *k;
      rel.push_back(v);
      if (*k > 1) vars.push_back({i, 0, *k - 1});
      continue;
    }
    bool merged = false;
    for (auto& var : vars) {
      const AlgNum& g = gammas[var.i];
      if (root_of_unity_order(g)) continue;
      int sgn = alg_equal(gammas[i], g) ? -1 : alg_equal(gammas[i], g.conj()) ? 1 : 0;
      if (sgn == 0) continue;
      IVec v(n, 0);
      v[i] = 1;
      v[var.i] = sgn;
      rel.push_back(v);
      ++weight[var.i];
      merged = true;
      break;
    }
    if (!merged) vars.push_back({i, -bound, bound});
  }
  // a relation with entries <= bound folds onto the kept index with entries <= bound * (copies)
  for (auto& var : vars)
    if (var.lo < 0) var.lo = -bound * weight[var.i], var.hi = bound * weight[var.i];

  std::vector<IVec> cand;
  if (vars.size() >= 2 || (vars.size() == 1 && vars[0].lo < 0)) {
    double work = 1;
    for (auto& v : vars) work *= (double)(v.hi - v.lo + 1);
    if (work > 4.3e9)
      throw Error(ErrorCode::RelationSearchInconclusive,
                  "relation search box of " + std::to_string((long long)work) + " points; lower the search bound");
    std::vector<uint64_t> th;
    for (auto& v : vars) th.push_back(fixed_turns(gammas[v.i]));
    // accumulated error is at most 2 units per unit of exponent
    double tot = 0;
    for (auto& v : vars) tot += std::max(std::labs(v.lo), std::labs(v.hi));
    uint64_t tol = std::max<uint64_t>(uint64_t(1) << 24, (uint64_t)(8 * tot));
    size_t L = vars.size();
    IVec cur(L);
    for (size_t k = 0; k + 1 < L; ++k) cur[k] = vars[k].lo;
    std::vector<int64_t> hits;
    while (true) {
      uint64_t base = 0;
      for (size_t k = 0; k + 1 < L; ++k) base += (uint64_t)cur[k] * th[k];
      hits.clear();
      const Var& last = vars[L - 1];
      kernels::relation_scan(base, th[L - 1], last.lo, last.hi - last.lo + 1, tol, hits);
      for (int64_t h : hits) {
        IVec v(n, 0);
        for (size_t k = 0; k + 1 < L; ++k) v[vars[k].i] = cur[k];
        v[last.i] = h;
        if (std::any_of(v.begin(), v.end(), [](long x) { return x != 0; })) cand.push_back(v);
      }
      size_t k = 0;
      for (; k + 1 < L; ++k) {
        if (++cur[k] <= vars[k].hi) break;
        cur[k] = vars[k].lo;
      }
      if (k + 1 >= L) break;
    }
  }
  auto norm = [](const IVec& v) {
    long s = 0, m = 0;
    for (long x : v) s += std::labs(x), m = std::max(m, std::labs(x));
    return std::make_pair(m, s);
  };
  std::sort(cand.begin(), cand.end(), [&](const IVec& a, const IVec& b) { return norm(a) < norm(b); });
  std::vector<IVec> basis = hnf(rel, n);
  for (auto& v : cand) {
    if (in_lattice(basis, v)) continue;
    if (!satisfies_relation(gammas, v)) continue;  // near miss, certified nonzero
    rel.push_back(v);
    basis = hnf(rel, n);
  }
  RelationBasis rb;
  rb.generators = basis;
  rb.search_bound = bound;
  return rb;
}

namespace {

struct Polar {
  AlgNum rho, gamma;
};

Polar polar(const AlgNum& l) {
  if (l.is_zero()) throw Error(ErrorCode::PreconditionViolated, "dense_subsequence_data needs nonzero roots");
  if (l.is_rational()) {
    Rational r = l.rational();
    return {AlgNum(abs_q(r)), AlgNum(r > 0 ? 1 : -1)};
  }
  if (compare_modulus(l, 1) == 0) return {AlgNum(1), l};
  AlgNum n2 = alg_arith(l, l.conj(), ArithOp::Mul);
  if (!n2.is_rational())
    throw Error(ErrorCode::Unsupported, "modulus of " + l.to_string() + " is not the square root of a rational");
  QPoly x2({-n2.rational(), 0, 1});
  AlgNum rho;
  for (auto& r : squarefree_roots(x2))
    if (r.is_real() && sign_real(r) > 0) rho = r;
  return {rho, alg_arith(l, rho, ArithOp::Div)};
}

}  // namespace

DenseSubsequenceData dense_subsequence_data(const std::vector<AlgNum>& lambdas, long bound) {
  if (bound <= 0) bound = default_search_bound();
  DenseSubsequenceData ds;
  ds.search_bound = bound;
  size_t n = lambdas.size();
  std::vector<AlgNum> gam(n);
  std::vector<int> gen_of(n, -1);  // generator index for independent inputs
  std::vector<long> k(n, 1);
  std::vector<IVec> kij(n);  // gamma_i^k_i = prod_j gen_j^kij[j]
  for (size_t i = 0; i < n; ++i) {
    Polar p = polar(lambdas[i]);
    ds.rho.push_back(p.rho);
    gam[i] = p.gamma;
    if (auto o = root_of_unity_order(gam[i])) {
      k[i] = *o;
      continue;
    }
    std::vector<AlgNum> trial = ds.gamma;
    trial.push_back(gam[i]);
    RelationBasis rb = relation_basis(trial, bound);
    if (rb.generators.empty()) {
      gen_of[i] = (int)ds.gamma.size();
      ds.gamma.push_back(gam[i]);
      continue;
    }
    // the generators are independent, so the lattice has rank one
    if (rb.generators.size() != 1) throw Error(ErrorCode::InternalInconsistency, "independent set admits a relation");
    IVec v = rb.generators[0];
    if (v.back() < 0)
      for (auto& x : v) x = -x;
    k[i] = v.back();
    v.pop_back();
    for (auto& x : v) x = -x;
    kij[i] = v;
  }
  ds.m = (int)ds.gamma.size();
  long R = 1;
  for (size_t i = 0; i < n; ++i)
    if (gen_of[i] < 0) R = std::lcm(R, k[i]);
  ds.R = R;
  ds.p.resize(n);
  for (size_t i = 0; i < n; ++i) {
    IVec e(ds.m, 0);
    if (gen_of[i] >= 0) {
      e[gen_of[i]] = R;
    } else {
      for (size_t j = 0; j < kij[i].size(); ++j) e[j] = R / k[i] * kij[i][j];
    }
    for (long r = 0; r < R; ++r) ds.p[i].push_back({gam[i], r, e});
  }
  return ds;
}

namespace {

CInterval power_enclosure(const AlgNum& a, long e, long bits) {
  CInterval z = a.enclosure(bits + 16 + 2 * (long)std::log2((double)std::labs(e) + 2));
  CInterval v = z.pow_ui((unsigned long)std::labs(e));
  return e < 0 ? CInterval::from_q(1, 0, v.prec()) / v : v;
}

bool overlap(const Interval& a, const Interval& b) { return !a.disjoint(b); }

}  // namespace

std::optional<std::string> audit_identity(const DenseSubsequenceData& ds, const std::vector<AlgNum>& lambdas,
                                          long nmax) {
  const long bits = 80;
  for (size_t i = 0; i < lambdas.size(); ++i)
    for (long r = 0; r < ds.R; ++r)
      for (long n = 0; n <= nmax; ++n) {
        long e = n * ds.R + r;
        CInterval lhs = power_enclosure(lambdas[i], e, bits);
        const TorusMonomial& t = ds.p[i][r];
        CInterval rhs = power_enclosure(ds.rho[i], e, bits) * power_enclosure(t.base, t.power, bits);
        for (int j = 0; j < ds.m; ++j) rhs = rhs * power_enclosure(ds.gamma[j], n * t.exps[j], bits);
        if (!overlap(lhs.re, rhs.re) || !overlap(lhs.im, rhs.im) || lhs.width_d() > 1e-15 * (1 + lhs.abs().hi_d()))
          return "identity fails for input " + std::to_string(i) + ", r = " + std::to_string(r) + ", n = " +
                 std::to_string(n);
      }
  return std::nullopt;
}

namespace {

struct UnitPart {
  std::vector<AlgNum> roots;
  // coef[i] = (root index, coefficient)
  std::vector<std::vector<std::pair<int, AlgNum>>> coef;
  double decay = 0;
};

UnitPart unit_part(const QMatrix& M, const RVec& q) {
  Boundedness b = is_bounded(M, q);
  if (!b.bounded) throw Error(ErrorCode::NotBounded, b.witness);
  UnitPart u;
  u.coef.resize(M.rows());
  for (int i = 0; i < M.rows(); ++i) {
    lrs::Lrs s = lrs::lds_coordinate(M, q, i);
    if (lrs::is_zero(s)) continue;
    lrs::ExpPolyForm f = lrs::exp_poly(s);
    for (auto& t : f.terms()) {
      if (compare_modulus(t.root, 1) < 0) {
        u.decay = std::max(u.decay, std::hypot(t.root.approx_re(), t.root.approx_im()));
        continue;
      }
      int idx = -1;
      for (size_t j = 0; j < u.roots.size() && idx < 0; ++j)
        if (alg_equal(u.roots[j], t.root)) idx = (int)j;
      if (idx < 0) {
        idx = (int)u.roots.size();
        u.roots.push_back(t.root);
      }
      u.coef[i].push_back({idx, t.coeff(0)});
    }
  }
  return u;
}

TorusIntegrand build(const QMatrix& M, const RVec& q, long bound) {
  UnitPart u = unit_part(M, q);
  DenseSubsequenceData ds = dense_subsequence_data(u.roots, bound);
  TorusIntegrand f;
  f.d = M.rows();
  f.m = ds.m;
  f.R = ds.R;
  f.gamma = ds.gamma;
  f.decay_radius = u.decay;
  f.maps.assign(f.R, std::vector<std::vector<PhaseMonomial>>(f.d));
  for (long r = 0; r < f.R; ++r)
    for (int i = 0; i < f.d; ++i)
      for (auto& [j, c] : u.coef[i]) {
        const TorusMonomial& t = ds.p[j][r];
        PhaseMonomial pm{c, t.base, t.power, t.exps, {}};
        CInterval v = c.enclosure(60) * power_enclosure(t.base, t.power, 60);
        pm.value = {v.re.mid_d(), v.im.mid_d()};
        f.maps[r][i].push_back(std::move(pm));
      }
  // x_k -> g x_k preserves the measure of the torus, so common factors of an axis can go
  for (int k = 0; k < f.m; ++k) {
    long g = 0;
    for (auto& mr : f.maps)
      for (auto& mi : mr)
        for (auto& t : mi) g = std::gcd(g, std::labs(t.exps[k]));
    if (g > 1)
      for (auto& mr : f.maps)
        for (auto& mi : mr)
          for (auto& t : mi) t.exps[k] /= g;
  }
  return f;
}

const std::complex<double>& approx(const PhaseMonomial& t) { return t.value; }

}  // namespace

TorusIntegrand integrand(const QMatrix& M, const RVec& q, const PolyWeight& w, long bound) {
  if (w.arity() != M.rows()) throw Error(ErrorCode::DimensionMismatch, "weight arity differs from the dimension");
  TorusIntegrand f = build(M, q, bound);
  f.poly = w;
  f.weight = [w](const std::vector<double>& y) { return w.eval_d(y); };
  return f;
}

TorusIntegrand integrand(const QMatrix& M, const RVec& q, std::function<double(const std::vector<double>&)> w,
                         long bound) {
  TorusIntegrand f = build(M, q, bound);
  f.weight = std::move(w);
  return f;
}

std::vector<double> TorusIntegrand::point(long r, const std::vector<double>& x) const {
  std::vector<double> y(d, 0);
  for (int i = 0; i < d; ++i)
    for (auto& t : maps[r][i]) {
      double ph = 0;
      for (int k = 0; k < m; ++k) ph += (double)t.exps[k] * x[k];
      std::complex<double> a = approx(t);
      y[i] += a.real() * std::cos(2 * M_PI * ph) - a.imag() * std::sin(2 * M_PI * ph);
    }
  return y;
}

std::vector<CInterval> TorusIntegrand::point_enclosure(long r, const std::vector<Rational>& x, long bits) const {
  long prec = bits + 32;
  std::vector<CInterval> y(d, CInterval::from_q(0, 0, prec));
  for (int i = 0; i < d; ++i)
    for (auto& t : maps[r][i]) {
      Rational ph = 0;
      for (int k = 0; k < m; ++k) ph += t.exps[k] * x[k];
      CInterval v = t.coeff.enclosure(bits) * power_enclosure(t.base, t.power, bits) *
                    CInterval::unit(Interval::from_q(ph, prec));
      y[i] = y[i] + v;
    }
  return y;
}

double TorusIntegrand::operator()(const std::vector<double>& x) const {
  double s = 0;
  for (long r = 0; r < R; ++r) s += weight(point(r, x));
  return s / (double)R;
}

std::vector<double> TorusIntegrand::coordinate_bound() const {
  std::vector<double> a(d, 0);
  for (auto& mr : maps)
    for (int i = 0; i < d; ++i) {
      double s = 0;
      for (auto& t : mr[i]) s += std::abs(approx(t));
      a[i] = std::max(a[i], s * (1 + 1e-12));
    }
  return a;
}

std::vector<double> TorusIntegrand::coordinate_slope() const {
  std::vector<double> s(m, 0);
  for (auto& mr : maps)
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < m; ++k) {
        double v = 0;
        for (auto& t : mr[i]) v += std::abs(approx(t)) * 2 * M_PI * std::labs(t.exps[k]);
        s[k] = std::max(s[k], v * (1 + 1e-12));
      }
  return s;
}

namespace {

// per axis: sup |df/dx_k|
std::vector<double> axis_lipschitz(const TorusIntegrand& f, double weight_lipschitz) {
  std::vector<double> L(f.m, 0);
  if (!f.poly) {
    std::vector<double> s = f.coordinate_slope();
    for (int k = 0; k < f.m; ++k) L[k] = weight_lipschitz * s[k];
    return L;
  }
  std::vector<double> A = f.coordinate_bound();
  std::vector<double> G(f.d, 0);
  for (auto& mono : f.poly->monomials())
    for (int i = 0; i < f.d; ++i) {
      if (mono.exps[i] == 0) continue;
      double g = std::fabs(mono.coeff.get_d()) * mono.exps[i];
      for (int j = 0; j < f.d; ++j) g *= std::pow(A[j], mono.exps[j] - (i == j ? 1 : 0));
      G[i] += g;
    }
  for (auto& mr : f.maps)
    for (int k = 0; k < f.m; ++k) {
      double v = 0;
      for (int i = 0; i < f.d; ++i) {
        double dk = 0;
        for (auto& t : mr[i]) dk += std::abs(approx(t)) * 2 * M_PI * std::labs(t.exps[k]);
        v += G[i] * dk;
      }
      L[k] = std::max(L[k], v * (1 + 1e-9));
    }
  return L;
}

}  // namespace

double lipschitz_bound(const TorusIntegrand& f) {
  double s = 0;
  for (double x : axis_lipschitz(f, 1)) s += x;
  return s;
}

IntegralEnclosure approximate_integral(const TorusIntegrand& f, double eps, double weight_lipschitz) {
  if (!(eps > 0)) throw Error(ErrorCode::InvalidParameters, "eps must be positive");
  if (!f.poly && !(weight_lipschitz >= 0)) throw Error(ErrorCode::InvalidParameters, "Lipschitz bound required");
  std::vector<double> L = axis_lipschitz(f, weight_lipschitz);
  double Lsum = std::accumulate(L.begin(), L.end(), 0.0);
  // midpoint rule on cells of side h: error <= sum_k L_k h / 4
  long N = 1;
  if (f.m > 0) N = std::max(1L, (long)std::ceil(Lsum / (4 * (eps / 2))));
  const long two_n = 2 * N;
  std::vector<double> ctab(two_n), stab(two_n);
  const long double pi = 3.141592653589793238462643383279502884L;
  for (long t = 0; t < two_n; ++t) {
    long double a = pi * (long double)t / (long double)N;
    ctab[t] = (double)cosl(a);
    stab[t] = (double)sinl(a);
  }
  struct Term {
    int coord;
    std::complex<double> a;
    std::vector<long> e;
  };
  std::vector<std::vector<Term>> terms(f.R);
  size_t nterms = 0;
  for (long r = 0; r < f.R; ++r)
    for (int i = 0; i < f.d; ++i)
      for (auto& t : f.maps[r][i]) {
        std::vector<long> e(f.m);
        for (int k = 0; k < f.m; ++k) e[k] = ((t.exps[k] % two_n) + two_n) % two_n;
        terms[r].push_back({i, approx(t), e});
        ++nterms;
      }
  long inner = f.m > 0 ? N : 1;
  long outer = 1;
  for (int k = 0; k + 1 < f.m; ++k) outer *= N;
  std::vector<long> j(std::max(0, f.m - 1), 0);
  std::vector<double> buf(inner * f.d);
  std::vector<double> y(f.d);
  std::vector<kernels::PhaseTerm> pts;
  double sum = 0, comp = 0, abs_sum = 0;
  for (long o = 0; o < outer; ++o) {
    for (long r = 0; r < f.R; ++r) {
      pts.clear();
      for (auto& t : terms[r]) {
        long base = 0;
        for (int k = 0; k + 1 < f.m; ++k) base = (base + t.e[k] * (2 * j[k] + 1)) % two_n;
        long step = 0;
        if (f.m > 0) {
          base = (base + t.e[f.m - 1]) % two_n;
          step = (2 * t.e[f.m - 1]) % two_n;
        }
        pts.push_back({t.coord, t.a.real(), t.a.imag(), base, step});
      }
      std::fill(buf.begin(), buf.end(), 0.0);
      kernels::coord_batch(pts, ctab.data(), stab.data(), two_n, inner, f.d, buf.data());
      for (long p = 0; p < inner; ++p) {
        for (int i = 0; i < f.d; ++i) y[i] = buf[p * f.d + i];
        double v = f.weight(y);
        abs_sum += std::fabs(v);
        double t = v - comp, s2 = sum + t;
        comp = (s2 - sum) - t;
        sum = s2;
      }
    }
    for (int k = 0; k + 1 < f.m; ++k) {
      if (++j[k] < N) break;
      j[k] = 0;
    }
  }
  double count = (double)outer * (double)inner * (double)f.R;
  double mean = sum / count;
  double quad = 0;
  for (double l : L) quad += l / (4.0 * (double)N);
  // rounding: coordinates carry about (terms + 4) ulps of their magnitude bound
  const double u = std::ldexp(1.0, -53);
  std::vector<double> A = f.coordinate_bound();
  double ycoord = 0;
  for (double a : A) ycoord = std::max(ycoord, a * (double)(nterms + 4) * 4 * u);
  double wl = weight_lipschitz;
  double wround = 0;
  if (f.poly) {
    wl = 0;
    double wabs = 0;
    for (auto& mono : f.poly->monomials()) {
      double g = std::fabs(mono.coeff.get_d()), gd = 0;
      int deg = 0;
      for (int i = 0; i < f.d; ++i) deg += mono.exps[i];
      for (int i = 0; i < f.d; ++i) {
        if (mono.exps[i] == 0) continue;
        double h = g * mono.exps[i];
        for (int k = 0; k < f.d; ++k) h *= std::pow(A[k] + 1e-9, mono.exps[k] - (i == k ? 1 : 0));
        gd += h;
      }
      wl += gd;
      for (int k = 0; k < f.d; ++k) g *= std::pow(A[k] + 1e-9, mono.exps[k]);
      wabs += g * (deg + 2);
    }
    wround = wabs * 4 * u * (double)(f.poly->monomials().size() + 1);
  } else {
    wround = 1e-12 * (1 + abs_sum / count);
  }
  double round = wl * ycoord + wround + 4 * u * abs_sum / count;
  IntegralEnclosure out;
  out.lo = mean - quad - round;
  out.hi = mean + quad + round;
  out.grid = N;
  out.lipschitz = Lsum;
  return out;
}

std::vector<ShapeSample> limit_shape_sample(const QMatrix& M, const RVec& q, long count, long bound) {
  TorusIntegrand f = build(M, q, bound);
  std::vector<ShapeSample> out;
  long per = f.m == 0 ? 1 : std::max(1L, (count + f.R - 1) / f.R);
  long side = 1;
  if (f.m > 0)
    while (std::pow((double)side, f.m) < (double)per) ++side;
  for (long r = 0; r < f.R; ++r)
    for (long s = 0; s < per; ++s) {
      std::vector<Rational> x(f.m);
      long idx = s;
      for (int k = 0; k < f.m; ++k) {
        x[k] = Rational(idx % side, side);
        x[k].canonicalize();
        idx /= side;
      }
      std::vector<CInterval> v = f.point_enclosure(r, x);
      ShapeSample sm;
      sm.residue = r;
      for (auto& c : v) {
        if (!c.im.contains_zero()) throw Error(ErrorCode::InternalInconsistency, "limit point is not real");
        sm.x.push_back(c.re);
      }
      out.push_back(std::move(sm));
    }
  return out;
}

}  // namespace ldsw::torus
