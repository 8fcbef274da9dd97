#include <random>

#include "doctest.h"
#include "ldsw/analysis/analysis.hpp"
#include "ldsw/exactnum/errors.hpp"
#include "ldsw/stochastic/stochastic.hpp"

using namespace ldsw;
using namespace ldsw::stochastic;

namespace {

QMatrix swap_chain() { return QMatrix::from_rows({{0, 1}, {1, 0}}); }
QMatrix half() { return QMatrix::from_rows({{Rational(1, 2), Rational(1, 2)}, {Rational(1, 2), Rational(1, 2)}}); }

// random column-stochastic matrix with some zero entries
QMatrix random_chain(std::mt19937& rng, int d) {
  std::uniform_int_distribution<int> w(0, 3);
  QMatrix P(d, d);
  for (int j = 0; j < d; ++j) {
    std::vector<int> c(d);
    int s = 0;
    for (int i = 0; i < d; ++i) s += c[i] = (rng() % 2) ? w(rng) : 0;
    if (s == 0) {
      c[rng() % d] = 1;
      s = 1;
    }
    for (int i = 0; i < d; ++i) {
      P(i, j) = Rational(c[i], s);
      P(i, j).canonicalize();
    }
  }
  return P;
}

RVec random_dist(std::mt19937& rng, int d) {
  std::vector<int> c(d);
  int s = 0;
  for (auto& x : c) s += x = rng() % 4;
  if (s == 0) {
    c[0] = 1;
    s = 1;
  }
  RVec v(d);
  for (int i = 0; i < d; ++i) {
    v[i] = Rational(c[i], s);
    v[i].canonicalize();
  }
  return v;
}

}  // namespace

TEST_CASE("analyze") {
  ChainStructure a = analyze(swap_chain());
  CHECK(a.irreducible);
  CHECK(a.period == 2);
  CHECK_FALSE(a.aperiodic);
  ChainStructure b = analyze(QMatrix::from_rows({{1, Rational(1, 2)}, {0, Rational(1, 2)}}));
  CHECK_FALSE(b.irreducible);
  CHECK(b.aperiodic);
  int bottoms = 0;
  for (size_t k = 0; k < b.sccs.size(); ++k)
    if (b.bottom[k]) {
      ++bottoms;
      CHECK(b.sccs[k] == std::vector<int>{0});
    }
  CHECK(bottoms == 1);
  ChainStructure c = analyze(QMatrix::identity(3));
  CHECK(c.sccs.size() == 3);
  CHECK(std::count(c.bottom.begin(), c.bottom.end(), true) == 3);
  CHECK(c.aperiodic);
  CHECK_THROWS_AS(analyze(QMatrix::from_rows({{1, 1}, {1, 0}})), Error);
}

TEST_CASE("stationary") {
  CHECK(stationary(half()) == RVec{Rational(1, 2), Rational(1, 2)});
  CHECK(stationary(swap_chain()) == RVec{Rational(1, 2), Rational(1, 2)});
  QMatrix P = QMatrix::from_rows({{Rational(3, 4), Rational(1, 2)}, {Rational(1, 4), Rational(1, 2)}});
  CHECK(stationary(P) == RVec{Rational(2, 3), Rational(1, 3)});
  CHECK_THROWS_AS(stationary(QMatrix::identity(2)), Error);
}

TEST_CASE("limit_projection") {
  CHECK(limit_projection(QMatrix::identity(2), {3, 4}) == RVec{3, 4});
  QMatrix A = QMatrix::from_rows({{1, Rational(1, 2)}, {0, Rational(1, 2)}});
  CHECK(limit_projection(A, {0, 1}) == RVec{1, 0});
  CHECK(limit_projection(half(), {1, 0}) == RVec{Rational(1, 2), Rational(1, 2)});
  CHECK_THROWS_AS(limit_projection(swap_chain(), {1, 0}), Error);
  CHECK_THROWS_AS(limit_projection(QMatrix::from_rows({{1, 1}, {0, 1}}), {0, 1}), Error);
}

TEST_CASE("evaluation_points") {
  EvaluationPoints a = evaluation_points({swap_chain(), {1, 0}});
  CHECK(a.l == 2);
  REQUIRE(a.points.size() == 2);
  CHECK(a.points[0] == RVec{1, 0});
  CHECK(a.points[1] == RVec{0, 1});
  EvaluationPoints b = evaluation_points({half(), {1, 0}});
  CHECK(b.l == 1);
  CHECK(b.points[0] == RVec{Rational(1, 2), Rational(1, 2)});
  // state 0 transient, feeding 1 and 2 with 1/3, 2/3
  QMatrix P = QMatrix::from_rows({{0, 0, 0}, {Rational(1, 3), 1, 0}, {Rational(2, 3), 0, 1}});
  EvaluationPoints c = evaluation_points({P, {1, 0, 0}});
  CHECK(c.l == 1);
  CHECK(c.points[0] == RVec{0, Rational(1, 3), Rational(2, 3)});
}

TEST_CASE("mean_payoff_stochastic examples") {
  MarkovChain sw{swap_chain(), {1, 0}};
  CHECK(*mean_payoff_stochastic(sw, PolyWeight::variable(2, 0)).exact == Rational(1, 2));
  CHECK(*mean_payoff_stochastic(sw, PolyWeight::constant(2, 7)).exact == 7);
  MarkovChain h{half(), {1, 0}};
  CHECK(*mean_payoff_stochastic(h, PolyWeight(2, {{1, {2, 0}}})).exact == Rational(1, 4));
  auto cb = mean_payoff_stochastic(sw, [](const RVec& x) { return x[0].get_d() * 3; });
  CHECK(cb.value == doctest::Approx(1.5));
}

TEST_CASE("random chains: exact agreement, distributions, convergence") {
  std::mt19937 rng(17);
  for (int it = 0; it < 30; ++it) {
    int d = 1 + it % 5;
    MarkovChain c{random_chain(rng, d), random_dist(rng, d)};
    ChainStructure cs = analyze(c.P);
    EvaluationPoints ep = evaluation_points(c);
    if (cs.irreducible) CHECK(ep.l <= d);
    for (auto& p : ep.points) {
      Rational s = 0;
      for (auto& x : p) {
        CHECK(x >= 0);
        s += x;
      }
      CHECK(s == 1);
    }
    // fixed point and image condition
    QMatrix Pl = c.P.pow(ep.l);
    RVec x = c.iota;
    for (long r = 0; r < ep.l; ++r) {
      CHECK(Pl * ep.points[r] == ep.points[r]);
      RVec res(d);
      for (int i = 0; i < d; ++i) res[i] = x[i] - ep.points[r][i];
      CHECK(solve(Pl - QMatrix::identity(d), res).has_value());
      x = c.P * x;
    }
    // L1 distance to the limit is nonincreasing along each residue
    for (long r = 0; r < ep.l; ++r) {
      std::vector<double> v(d), pr(d);
      RVec xr = c.iota;
      for (long k = 0; k < r; ++k) xr = c.P * xr;
      for (int i = 0; i < d; ++i) {
        v[i] = xr[i].get_d();
        pr[i] = ep.points[r][i].get_d();
      }
      double prev = 1e9;
      for (int n = 0; n < 200; ++n) {
        double dist = 0;
        for (int i = 0; i < d; ++i) dist += std::fabs(v[i] - pr[i]);
        CHECK(dist <= prev + 1e-12);
        prev = dist;
        for (long k = 0; k < ep.l; ++k) {
          std::vector<double> y(d, 0);
          for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) y[i] += c.P(i, j).get_d() * v[j];
          v = y;
        }
      }
      CHECK(prev < 1e-6);
    }
    PolyWeight w(d, {{Rational(1, 2), std::vector<int>(d, 0)}, {2, [&] {
                                                                  std::vector<int> e(d, 0);
                                                                  e[0] = 2;
                                                                  return e;
                                                                }()}});
    auto st = mean_payoff_stochastic(c, w);
    auto an = analysis::mean_payoff(c.P, c.iota, w);
    REQUIRE(an.exists());
    CHECK(an.value == *st.exact);
  }
}
