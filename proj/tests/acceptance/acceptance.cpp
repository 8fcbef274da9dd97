// One PASS/FAIL line per acceptance criterion.
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "ldsw/analysis/analysis.hpp"
#include "ldsw/cli/cli.hpp"
#include "ldsw/energy/energy.hpp"
#include "ldsw/exactnum/errors.hpp"
#include "ldsw/io/json_io.hpp"
#include "ldsw/lrs/lrs.hpp"
#include "ldsw/stochastic/stochastic.hpp"
#include "ldsw/torus/torus.hpp"

using namespace ldsw;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

bool run_criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& fn) {
  auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = fn();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool ok = o.pass && s < limit_s;
  if (o.pass && !ok) o.detail += " (over the " + std::to_string((int)limit_s) + " s limit)";
  std::printf("%s [%d] %s: %s [%.2f s]\n", ok ? "PASS" : "FAIL", id, name, o.detail.c_str(), s);
  std::fflush(stdout);
  return ok;
}

Rational q(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

QMatrix rotation_system() {
  return QMatrix::from_rows({{q(3, 5), q(-4, 5), 0}, {q(4, 5), q(3, 5), 0}, {0, 0, q(1, 2)}});
}
const RVec kQ{1, 0, 1};

std::string temp_file(const std::string& name, const std::string& text) {
  fs::path p = fs::temp_directory_path() / ("ldsw_acc_" + std::to_string(::getpid()) + "_" + name);
  std::ofstream(p) << text;
  return p.string();
}

std::string cli_value(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = cli::run_cli(args, out, err);
  auto j = io::Json::parse(out.str());
  return j.value("value", std::string("?"));
}

Outcome worked_example() {
  io::SystemFile f{rotation_system(), kQ, PolyWeight::variable(3, 2), std::nullopt, std::nullopt, io::SystemKind::General};
  std::string x3 = temp_file("x3.json", io::emit_system(f));
  f.weight = PolyWeight(3, {{1, {2, 0, 0}}, {1, {0, 2, 0}}});
  std::string circ = temp_file("circ.json", io::emit_system(f));
  int c1, c2, c3;
  std::string a = cli_value({"meanpayoff", x3, "--method", "exact"}, c1);
  std::string b = cli_value({"total", x3}, c2);
  std::string c = cli_value({"meanpayoff", circ, "--method", "exact"}, c3);
  fs::remove(x3);
  fs::remove(circ);
  bool ok = a == "0/1" && b == "2/1" && c == "1/1" && c1 == 0 && c2 == 0 && c3 == 0;
  return {ok, "meanpayoff x3 = " + a + ", total x3 = " + b + ", meanpayoff x1^2+x2^2 = " + c};
}

Outcome cross_method() {
  PolyWeight w(3, {{1, {2, 0, 0}}});
  torus::TorusIntegrand f = torus::integrand(rotation_system(), kQ, w);
  torus::IntegralEnclosure e = torus::approximate_integral(f, 1e-3);
  analysis::LimitVerdict v = analysis::mean_payoff(rotation_system(), kQ, w);
  bool ok = e.contains(0.5) && e.hi - e.lo <= 2e-3 + 1e-12 && f.m == 1;
  if (v.exists()) ok = ok && e.contains(v.value.get_d());
  char buf[200];
  std::snprintf(buf, sizeof buf, "integral in [%.6f, %.6f] (m = %d), exact %s", e.lo, e.hi, f.m,
                v.exists() ? format_rational_full(v.value).c_str() : "does not exist");
  return {ok, buf};
}

// rational in [-2, 2] with denominator <= 4, zero half the time
Rational small_entry(std::mt19937& rng) {
  if (rng() % 2) return 0;
  int den = 1 + rng() % 4;
  int num = (int)(rng() % (4 * den + 1)) - 2 * den;
  return q(num, den);
}

PolyWeight random_weight(std::mt19937& rng, int d, int max_deg) {
  std::vector<Monomial> ms;
  int k = 1 + rng() % 3;
  for (int t = 0; t < k; ++t) {
    std::vector<int> e(d, 0);
    int deg = rng() % (max_deg + 1);
    for (int j = 0; j < deg; ++j) e[rng() % d] += 1;
    ms.push_back({q((int)(rng() % 7) - 3, 1 + rng() % 2), e});
  }
  return PolyWeight(d, ms);
}

// a zero factor kills the monomial, so an underflowed coordinate never meets an overflowed one
long double eval_ld(const PolyWeight& w, const std::vector<long double>& x) {
  long double s = 0;
  for (const Monomial& m : w.monomials()) {
    long double t = m.coeff.get_d();
    for (size_t i = 0; i < x.size(); ++i)
      if (m.exps[i] > 0) {
        if (x[i] == 0) {
          t = 0;
          break;
        }
        t *= std::pow(x[i], (long double)m.exps[i]);
      }
    s += t;
  }
  return s;
}

Outcome mean_payoff_oracle() {
  std::mt19937 rng(2024);
  int exists = 0, diverge = 0, osc = 0, bad = 0;
  std::string first_bad;
  for (int it = 0; it < 100; ++it) {
    int d = 1 + it % 3;
    QMatrix M(d, d);
    RVec x0(d);
    for (int i = 0; i < d; ++i) {
      x0[i] = (int)(rng() % 5) - 2;
      for (int j = 0; j < d; ++j) M(i, j) = small_entry(rng);
    }
    PolyWeight w = random_weight(rng, d, 2);
    analysis::LimitVerdict v = analysis::mean_payoff(M, x0, w);
    std::vector<long double> x(d), y(d);
    for (int i = 0; i < d; ++i) x[i] = x0[i].get_d();
    long double s = 0, lo = INFINITY, hi = -INFINITY;
    bool escaped = false;
    const int N = 10000;
    for (int n = 1; n <= N; ++n) {
      s += eval_ld(w, x);
      long double avg = s / n;
      if (!std::isfinite((double)avg)) {
        escaped = true;
        break;
      }
      if (n == N) escaped = std::fabs((double)avg) > 10;
      if (n > N / 2) {
        lo = std::min(lo, avg);
        hi = std::max(hi, avg);
      }
      for (int i = 0; i < d; ++i) {
        y[i] = 0;
        for (int j = 0; j < d; ++j) y[i] += (long double)M(i, j).get_d() * x[j];
      }
      x = y;
    }
    bool ok;
    if (v.exists()) {
      ++exists;
      ok = !escaped && std::fabs((double)(s / N) - v.value.get_d()) <= 0.05;
    } else {
      (v.diagnostic == "diverges" ? diverge : osc) += 1;
      ok = escaped || hi - lo >= 0.1;
    }
    if (!ok && ++bad == 1) first_bad = "case " + std::to_string(it) + " (" + (v.exists() ? "exists" : v.diagnostic) + ")";
  }
  std::string det = std::to_string(exists) + " exist, " + std::to_string(diverge) + " diverge, " + std::to_string(osc) +
                    " oscillate, " + std::to_string(bad) + " disagreements";
  if (bad) det += ", first " + first_bad;
  return {bad == 0, det};
}

lrs::Lrs random_lrs(std::mt19937& rng, int maxd) {
  int d = 1 + rng() % maxd;
  RVec a(d), init(d);
  for (int i = 0; i < d; ++i) {
    a[i] = q((int)(rng() % 7) - 3, 1 + rng() % 3);
    init[i] = (int)(rng() % 7) - 3;
  }
  return lrs::Lrs(a, init);
}

Outcome lrs_algebra() {
  std::mt19937 rng(77);
  int fails = 0;
  std::string first;
  auto fail = [&](const std::string& what, int it) {
    if (++fails == 1) first = what + " at case " + std::to_string(it);
  };
  for (int it = 0; it < 500; ++it) {
    lrs::Lrs s = random_lrs(rng, 3), t = random_lrs(rng, 3);
    RVec a = lrs::terms(s, 50), b = lrs::terms(t, 50);
    RVec sum = lrs::terms(lrs::add(s, t), 50), prod = lrs::terms(lrs::mul(s, t), 50);
    for (int n = 0; n < 50; ++n) {
      if (sum[n] != a[n] + b[n]) {
        fail("add", it);
        break;
      }
      if (prod[n] != a[n] * b[n]) {
        fail("mul", it);
        break;
      }
    }
    lrs::Lrs m = lrs::minimize(s);
    if (!(lrs::minimize(m) == m) || lrs::terms(m, 50) != a) fail("minimize", it);
    if (lrs::is_zero(m)) continue;
    lrs::ExpPolyForm f = lrs::exp_poly(m);
    for (unsigned long n = f.offset(); n < f.offset() + 2 * (unsigned long)m.order() + 2; ++n) {
      CInterval v = f.eval(n, 96);
      if (!v.re.contains(lrs::term(m, n)) || !v.im.contains_zero()) {
        fail("exp-poly bracketing", it);
        break;
      }
    }
    for (auto& x : f.terms()) {
      bool found = false;
      for (auto& y : f.terms())
        if (alg_equal(y.root, x.root.conj()) && y.degree == x.degree) {
          found = true;
          for (int e = 0; e <= x.degree; ++e)
            if (!alg_equal(y.coeff(e), x.coeff(e).conj())) found = false;
        }
      if (!found) {
        fail("conjugation closure", it);
        break;
      }
    }
  }
  return {fails == 0, "500 cases, " + std::to_string(fails) + " failures" + (fails ? ", first " + first : "")};
}

QMatrix random_chain(std::mt19937& rng, int d) {
  QMatrix P(d, d);
  for (int j = 0; j < d; ++j) {
    std::vector<int> c(d);
    int s = 0;
    for (auto& x : c) s += x = (rng() % 2) ? (int)(rng() % 4) : 0;
    if (s == 0) c[rng() % d] = s = 1;
    for (int i = 0; i < d; ++i) P(i, j) = q(c[i], s);
  }
  return P;
}

Outcome stochastic_suite() {
  std::mt19937 rng(5150);
  int bad = 0, irreducible = 0;
  for (int it = 0; it < 100; ++it) {
    int d = 1 + it % 5;
    QMatrix P = random_chain(rng, d);
    RVec iota(d, 0);
    int s = 0;
    std::vector<int> c(d);
    for (auto& x : c) s += x = rng() % 3;
    if (s == 0) c[0] = s = 1;
    for (int i = 0; i < d; ++i) iota[i] = q(c[i], s);
    PolyWeight w = random_weight(rng, d, 2);
    stochastic::MarkovChain ch{P, iota};
    auto st = stochastic::mean_payoff_stochastic(ch, w);
    auto an = analysis::mean_payoff(P, iota, w);
    bool ok = an.exists() && an.value == *st.exact;
    stochastic::ChainStructure cs = stochastic::analyze(P);
    if (cs.irreducible) {
      ++irreducible;
      ok = ok && st.points.l <= d;
    } else {
      long l = 1;
      for (size_t k = 0; k < cs.sccs.size(); ++k)
        if (cs.bottom[k] && cs.state_period[cs.sccs[k][0]] > 0) l = std::lcm(l, cs.state_period[cs.sccs[k][0]]);
      ok = ok && st.points.l <= l;
    }
    if (!ok) ++bad;
  }
  return {bad == 0, "100 chains (" + std::to_string(irreducible) + " irreducible), " + std::to_string(bad) + " mismatches"};
}

// triangular (real spectrum) or a root-of-unity rotation block plus a real entry
energy::EnergyInstance random_energy(std::mt19937& rng, int it) {
  int d = 1 + it % 3;
  QMatrix M(d, d);
  bool rot = d >= 2 && rng() % 2;
  if (rot) {
    static const Rational blocks[3][4] = {{0, -1, 1, 0}, {0, -1, 1, -1}, {1, -1, 1, 0}};
    const Rational* b = blocks[rng() % 3];
    M(0, 0) = b[0];
    M(0, 1) = b[1];
    M(1, 0) = b[2];
    M(1, 1) = b[3];
    if (d == 3) {
      M(2, 2) = q((int)(rng() % 5) - 2, 2);
      M(0, 2) = q((int)(rng() % 3) - 1, 2);
    }
  } else {
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) M(i, j) = i == j ? q((int)(rng() % 7) - 3, 1 + rng() % 3) : small_entry(rng);
  }
  RVec x(d);
  for (auto& v : x) v = (int)(rng() % 5) - 2;
  PolyWeight w = random_weight(rng, d, 1 + rng() % 2);
  return {M, x, w, (int)(rng() % 6)};
}

Outcome energy_suite() {
  std::mt19937 rng(31337);
  int sat = 0, vio = 0, inc = 0, bad = 0;
  std::string first;
  for (int it = 0; it < 200; ++it) {
    energy::EnergyInstance inst = random_energy(rng, it);
    energy::EnergyVerdict v = energy::decide_energy_3d(inst);
    auto w = energy::prefix_check(inst, 100000);
    bool ok = true;
    switch (v.status) {
      case energy::Status::Satisfied:
        ++sat;
        ok = !w;
        break;
      case energy::Status::Violated:
        ++vio;
        ok = w.has_value() && (!v.witness || v.witness == w) && (!v.witness || v.horizon >= *v.witness);
        break;
      case energy::Status::Inconclusive:
        ++inc;
        ok = !w;
        break;
    }
    if (!ok && ++bad == 1) first = "case " + std::to_string(it);
  }
  std::string det = std::to_string(sat) + " satisfied, " + std::to_string(vio) + " violated, " + std::to_string(inc) +
                    " inconclusive, " + std::to_string(bad) + " contradictions";
  if (bad) det += ", first " + first;
  return {bad == 0, det};
}

AlgNum gauss(const Rational& re, const Rational& im) {
  if (im == 0) return re;
  for (auto& [r, m] : poly_roots(QPoly({re * re + im * im, -2 * re, 1})))
    if ((r.approx_im() > 0) == (im > 0)) return r;
  throw std::logic_error("gauss");
}

Outcome baker_audit() {
  const long triples[5][3] = {{3, 4, 5}, {5, 12, 13}, {8, 15, 17}, {7, 24, 25}, {20, 21, 29}};
  std::vector<std::pair<AlgNum, AlgNum>> pairs;
  for (int t = 0; t < 5; ++t) {
    AlgNum a = gauss(q(triples[t][0], triples[t][2]), q(triples[t][1], triples[t][2]));
    AlgNum other = gauss(q(triples[(t + 1) % 5][0], triples[(t + 1) % 5][2]), q(-triples[(t + 1) % 5][1], triples[(t + 1) % 5][2]));
    pairs.push_back({a, 1});
    pairs.push_back({a, alg_pow(a, 3)});
    pairs.push_back({a, other});
    pairs.push_back({a, t % 2 ? AlgNum(2) : AlgNum(q(1, 3))});
  }
  int bad = 0;
  unsigned long maxN = 0;
  for (auto& [a, b] : pairs) {
    energy::BakerThreshold th = energy::baker_threshold(a, b);
    maxN = std::max(maxN, th.N);
    Interval C = Interval::from_q(Rational(th.C), 128);
    CInterval an = a.enclosure(200), bn = b.enclosure(200);
    for (unsigned long n = th.N + 1; n <= th.N + 500; ++n) {
      // fresh binary powering each step; a running product wraps too much on the rotation
      CInterval p = an.pow_ui(n);
      Interval lhs = (p - bn).abs();
      // |a^n - b| > n^-C, compared as logarithms
      bool ok = lhs.positive() && mpfr_cmp(lhs.log().lo(), (-(C * Interval::from_q(Rational(n), 128).log())).hi()) > 0;
      if (!ok) ++bad;
    }
  }
  return {bad == 0, "20 pairs, N <= " + std::to_string(maxN) + ", " + std::to_string(bad) + " violations over 500 steps each"};
}

Outcome generator_suite() {
  std::mt19937 rng(99);
  int bad = 0;
  for (int it = 0; it < 20; ++it) {
    int d = 1 + it % 3;
    QMatrix P = random_chain(rng, d);
    RVec iota(d, 0);
    iota[rng() % d] = 1;
    if (it % 4 == 3) iota.assign(d, q(1, d));
    energy::EnergyInstance inst = energy::gen_positivity_reduction({P, iota});
    RVec x = iota;
    for (unsigned long n = 0; n <= 100; ++n) {
      x = P * x;
      bool lhs = inst.budget + energy::partial_sum(inst, n) >= 0;
      bool rhs = x[0] >= q(1, 2);
      if (lhs != rhs) ++bad;
    }
  }
  for (int it = 0; it < 20; ++it) {
    Rational a = q((int)(rng() % 9) - 4, 1 + rng() % 5), b = q((int)(rng() % 9) - 4, 1 + rng() % 5);
    if (a == 0 && b == 0) a = 1;
    Rational r = q((int)(rng() % 21) - 10, 1 + rng() % 3);
    energy::EnergyInstance inst = energy::gen_diophantine_instance(a, b, r);
    Rational re = a, im = b;
    for (unsigned long n = 0; n <= 100; ++n) {
      if (energy::partial_sum(inst, n) != r * im - Rational(n + 1) * re + Rational(n + 1)) ++bad;
      Rational t = re * a - im * b;
      im = re * b + im * a;
      re = t;
    }
  }
  return {bad == 0, "20 chains and 20 (lambda, r) choices, " + std::to_string(bad) + " mismatches for n <= 100"};
}

// numeric oracle: 1 bounded, -1 unbounded, 0 inconclusive
int orbit_oracle(const QMatrix& M, const RVec& x0) {
  int d = M.rows();
  std::vector<long double> x(d), y(d);
  for (int i = 0; i < d; ++i) x[i] = x0[i].get_d();
  long double first = 0, second = 0, start = 0;
  for (int n = 0; n <= 1000; ++n) {
    long double nm = 0;
    for (auto v : x) nm = std::max(nm, std::fabs(v));
    if (!std::isfinite((double)nm) || nm > 1e12) return -1;
    if (n == 0) start = nm;
    (n <= 500 ? first : second) = std::max(n <= 500 ? first : second, nm);
    for (int i = 0; i < d; ++i) {
      y[i] = 0;
      for (int j = 0; j < d; ++j) y[i] += (long double)M(i, j).get_d() * x[j];
    }
    x = y;
  }
  if (second > 1.5 * std::max(first, (long double)1e-300) && second > 1e-9) return -1;
  if (second <= 1.0001 * first || second < 1e-9 * std::max((long double)1, start)) return 1;
  return 0;
}

Outcome boundedness_suite() {
  std::mt19937 rng(4242);
  int conclusive = 0, bounded = 0, bad = 0, tried = 0;
  std::string first;
  while (conclusive < 100 && tried < 1000) {
    ++tried;
    int d = 1 + tried % 3;
    QMatrix M(d, d);
    int kind = rng() % 4;
    if (kind == 0 && d >= 2) {
      static const long trip[3][3] = {{3, 4, 5}, {5, 12, 13}, {8, 15, 17}};
      const long* t = trip[rng() % 3];
      M(0, 0) = M(1, 1) = q(t[0], t[2]);
      M(0, 1) = q(-t[1], t[2]);
      M(1, 0) = q(t[1], t[2]);
      if (d == 3) M(2, 2) = q((int)(rng() % 5) - 2, 2);
    } else if (kind == 1) {
      for (int i = 0; i < d; ++i) {
        M(i, i) = rng() % 2 ? Rational(1) : Rational(-1);
        if (i + 1 < d && rng() % 2) M(i, i + 1) = 1;
      }
    } else {
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) M(i, j) = small_entry(rng) / (kind == 2 ? 2 : 1);
    }
    RVec x(d);
    for (auto& v : x) v = (int)(rng() % 5) - 2;
    int o = orbit_oracle(M, x);
    if (o == 0) continue;
    ++conclusive;
    bool b = torus::is_bounded(M, x).bounded;
    if (b) ++bounded;
    if (b != (o == 1) && ++bad == 1) first = "system " + std::to_string(tried);
  }
  std::string det = std::to_string(conclusive) + " conclusive systems (" + std::to_string(bounded) + " bounded), " +
                    std::to_string(bad) + " disagreements";
  if (bad) det += ", first " + first;
  return {bad == 0 && conclusive == 100, det};
}

}  // namespace

int main() {
  int failed = 0;
  failed += !run_criterion(1, "worked example through the CLI", 1, worked_example);
  failed += !run_criterion(2, "integral and exact mean payoff agree", 30, cross_method);
  failed += !run_criterion(3, "mean payoff vs orbit averages (100 systems)", 300, mean_payoff_oracle);
  failed += !run_criterion(4, "LRS algebra (500 cases)", 120, lrs_algebra);
  failed += !run_criterion(5, "stochastic suite (100 chains)", 120, stochastic_suite);
  failed += !run_criterion(6, "energy d <= 3 vs prefix at 1e5 (200 instances)", 600, energy_suite);
  failed += !run_criterion(7, "Baker threshold finite audit (20 pairs)", 120, baker_audit);
  failed += !run_criterion(8, "hardness generators (20 + 20)", 60, generator_suite);
  failed += !run_criterion(9, "boundedness vs numeric oracle (100 systems)", 60, boundedness_suite);
  return failed ? 1 : 0;
}
