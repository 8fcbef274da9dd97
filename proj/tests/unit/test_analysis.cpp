#include <cmath>
#include <random>

#include "doctest.h"
#include "ldsw/analysis/analysis.hpp"
#include "ldsw/exactnum/errors.hpp"

using namespace ldsw;
using namespace ldsw::analysis;
using lrs::Lrs;

namespace {

QMatrix example_system() {
  return QMatrix::from_rows({{Rational(3, 5), Rational(-4, 5), 0},
                             {Rational(4, 5), Rational(3, 5), 0},
                             {0, 0, Rational(1, 2)}});
}
const RVec kQ{1, 0, 1};

Lrs fib() { return Lrs({1, 1}, {0, 1}); }

}  // namespace

TEST_CASE("limit_over_n examples") {
  LimitVerdict a = limit_over_n(Lrs::index());
  REQUIRE(a.exists());
  CHECK(a.value == 1);
  LimitVerdict b = limit_over_n(fib());
  CHECK_FALSE(b.exists());
  CHECK(b.diagnostic == "diverges");
  for (int n = 1; n <= 40; ++n)
    if (n > 20) CHECK(lrs::term(fib(), n) / n > 100);
  // n (-1)^n + n
  Lrs c = lrs::add(lrs::mul(Lrs::index(), Lrs::geometric(-1)), Lrs::index());
  LimitVerdict cv = limit_over_n(c);
  CHECK_FALSE(cv.exists());
  CHECK(cv.diagnostic == "oscillates");
  // u_n / n alternates between 0 and 2
  RVec t = lrs::terms(c, 10001);
  CHECK(t[10000] / 10000 == 2);
  CHECK(t[9999] == 0);
  CHECK(limit_over_n(Lrs()).value == 0);
  CHECK(limit_over_n(lrs::mul(Lrs::index(), Lrs::index())).diagnostic == "diverges");
}

TEST_CASE("limit examples") {
  CHECK(limit(Lrs::geometric(Rational(1, 2))).value == 0);
  Lrs s = lrs::sub(Lrs::constant(2), Lrs::geometric(Rational(1, 2)));
  LimitVerdict v = limit(s);
  REQUIRE(v.exists());
  CHECK(v.value == 2);
  CHECK_FALSE(limit(Lrs::geometric(-1)).exists());
}

TEST_CASE("mean_payoff examples") {
  PolyWeight circle(3, {{1, {2, 0, 0}}, {1, {0, 2, 0}}});
  LimitVerdict a = mean_payoff(example_system(), kQ, circle);
  REQUIRE(a.exists());
  CHECK(a.value == 1);
  LimitVerdict b = mean_payoff(example_system(), kQ, PolyWeight::variable(3, 2));
  REQUIRE(b.exists());
  CHECK(b.value == 0);
  LimitVerdict c = mean_payoff(QMatrix::from_rows({{2}}), {1}, PolyWeight::variable(1, 0));
  CHECK_FALSE(c.exists());
  CHECK_THROWS_AS(mean_payoff(example_system(), {1, 0}, circle), Error);
}

TEST_CASE("x1 squared on the rotation system has mean payoff 1/2") {
  PolyWeight w(3, {{1, {2, 0, 0}}});
  LimitVerdict v = mean_payoff(example_system(), kQ, w);
  REQUIRE(v.exists());
  CHECK(v.value == Rational(1, 2));
}

TEST_CASE("total and discounted rewards") {
  LimitVerdict t = total_reward(example_system(), kQ, PolyWeight::variable(3, 2));
  REQUIRE(t.exists());
  CHECK(t.value == 2);
  CHECK(total_reward(example_system(), kQ, PolyWeight(3, {})).value == 0);
  LimitVerdict d = discounted_reward(QMatrix::from_rows({{1}}), {1}, PolyWeight::variable(1, 0), Rational(1, 2));
  REQUIRE(d.exists());
  CHECK(d.value == 2);
  CHECK_FALSE(total_reward(QMatrix::from_rows({{1}}), {1}, PolyWeight::variable(1, 0)).exists());
  CHECK_THROWS_AS(discounted_reward(QMatrix::from_rows({{1}}), {1}, PolyWeight::variable(1, 0), 1), Error);
  CHECK_THROWS_AS(discounted_reward(QMatrix::from_rows({{1}}), {1}, PolyWeight::variable(1, 0), 0), Error);
}

TEST_CASE("total reward agrees with partial sums at n = 200") {
  QMatrix M = QMatrix::from_rows({{Rational(1, 2), Rational(1, 4)}, {0, Rational(-1, 3)}});
  RVec q{1, 2};
  PolyWeight w(2, {{1, {1, 0}}, {3, {0, 1}}, {-1, {1, 1}}});
  LimitVerdict v = total_reward(M, q, w);
  REQUIRE(v.exists());
  Rational s = 0;
  RVec x = q;
  for (int n = 0; n <= 200; ++n) {
    s += w.eval(x);
    x = M * x;
  }
  // dominant decaying root 1/2: tail below 100 * 2^-200
  CHECK(std::fabs(Rational(s - v.value).get_d()) < 100 * std::pow(2.0, -200));
}

TEST_CASE("scale equivariance and simulation sanity") {
  std::mt19937 rng(21);
  std::uniform_int_distribution<int> e(-4, 4);
  int checked = 0;
  for (int it = 0; it < 20; ++it) {
    int d = 1 + it % 3;
    QMatrix M(d, d);
    RVec q(d);
    for (int i = 0; i < d; ++i) {
      q[i] = e(rng);
      for (int j = 0; j < d; ++j) M(i, j) = Rational(e(rng), 4);
    }
    std::vector<Monomial> ms;
    for (int k = 0; k < 2; ++k) {
      std::vector<int> ex(d, 0);
      ex[rng() % d] += 1;
      if (k == 1) ex[rng() % d] += 1;
      ms.push_back({Rational(e(rng), 2), ex});
    }
    PolyWeight w(d, ms);
    LimitVerdict v = mean_payoff(M, q, w);
    LimitVerdict v3 = mean_payoff(M, q, w * Rational(-3, 2));
    CHECK(v.exists() == v3.exists());
    if (v.exists()) {
      CHECK(v3.value == v.value * Rational(-3, 2));
      // floating orbit average
      std::vector<double> x(d);
      for (int i = 0; i < d; ++i) x[i] = q[i].get_d();
      double s = 0;
      const int N = 10000;
      for (int n = 0; n < N; ++n) {
        s += w.eval_d(x);
        std::vector<double> y(d, 0);
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j) y[i] += M(i, j).get_d() * x[j];
        x = y;
      }
      CHECK(std::fabs(s / N - v.value.get_d()) <= 10 * std::max(1.0, std::fabs(v.value.get_d())) / std::sqrt(N));
      ++checked;
    }
  }
  CHECK(checked > 0);
}
