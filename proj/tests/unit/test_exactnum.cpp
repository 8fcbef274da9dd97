#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "ldsw/exactnum/algexpr.hpp"
#include "ldsw/exactnum/algnum.hpp"
#include "ldsw/exactnum/errors.hpp"
#include "ldsw/exactnum/matrix.hpp"

using namespace ldsw;

namespace {

QPoly qp(std::vector<long> c) {
  std::vector<Rational> r;
  for (long x : c) r.emplace_back(x);
  return QPoly(r);
}

// root of p nearest to (re, im)
AlgNum root_near(const QPoly& p, double re, double im) {
  auto rs = poly_roots(p);
  AlgNum best;
  double bd = 1e300;
  for (auto& [a, m] : rs) {
    double d = std::hypot(a.approx_re() - re, a.approx_im() - im);
    if (d < bd) {
      bd = d;
      best = a;
    }
  }
  return best;
}

AlgNum rot() { return root_near(qp({25, -30, 25}), 0.6, 0.8); }

}  // namespace

TEST_CASE("rational formatting and parsing") {
  CHECK(format_rational(Rational(3, 4)) == "3/4");
  CHECK(format_rational(Rational(-2)) == "-2");
  CHECK(format_rational_full(Rational(2)) == "2/1");
  CHECK(parse_rational("-6/8") == Rational(-3, 4));
  CHECK(parse_rational("5") == 5);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK_THROWS_AS(parse_rational("abc"), Error);
}

TEST_CASE("polynomial arithmetic") {
  QPoly p = qp({-1, 0, 1});
  auto [q, r] = divmod(p, qp({-1, 1}));
  CHECK(q == qp({1, 1}));
  CHECK(r.is_zero());
  CHECK(gcd(qp({0, 1, -2, 1}), qp({-1, 1})) == qp({-1, 1}));
  auto sf = squarefree_decomposition(qp({0, 1, -2, 1}));
  REQUIRE(sf.size() == 2);
  CHECK(sf[0].first == qp({0, 1}));
  CHECK(sf[0].second == 1);
  CHECK(sf[1].first == qp({-1, 1}));
  CHECK(sf[1].second == 2);
  CHECK(cyclotomic(3) == qp({1, 1, 1}));
  CHECK(cyclotomic(12) == qp({1, 0, -1, 0, 1}));
  CHECK(euler_phi(12) == 4);
}

TEST_CASE("matrix charpoly and solve") {
  QMatrix m = QMatrix::from_rows({{Rational(3, 5), Rational(-4, 5), 0},
                                  {Rational(4, 5), Rational(3, 5), 0},
                                  {0, 0, Rational(1, 2)}});
  QPoly cp = charpoly(m);
  CHECK(cp == QPoly({Rational(-1, 2), Rational(8, 5), Rational(-17, 10), 1}));
  auto x = solve(m, {1, 0, 1});
  REQUIRE(x);
  CHECK(m * *x == RVec{1, 0, 1});
  CHECK(rank(QMatrix::from_rows({{1, 2}, {2, 4}})) == 1);
  CHECK(nullspace(QMatrix::from_rows({{1, 2}, {2, 4}})).size() == 1);
}

TEST_CASE("poly_roots examples") {
  auto a = poly_roots(qp({-1, 0, 1}));
  REQUIRE(a.size() == 2);
  for (auto& [r, m] : a) {
    CHECK(m == 1);
    CHECK(r.is_rational());
    CHECK(abs(r.rational()) == 1);
  }
  auto b = poly_roots(qp({25, -30, 25}));
  REQUIRE(b.size() == 2);
  for (auto& [r, m] : b) {
    CHECK(m == 1);
    CHECK(std::fabs(r.approx_re() - 0.6) < 1e-9);
    CHECK(std::fabs(std::fabs(r.approx_im()) - 0.8) < 1e-9);
    CHECK_FALSE(r.is_real());
  }
  auto c = poly_roots(qp({0, 1, -2, 1}));
  REQUIRE(c.size() == 2);
  int total = 0;
  for (auto& [r, m] : c) {
    total += m;
    CHECK(r.is_rational());
    CHECK(m == (r.rational() == 0 ? 1 : 2));
  }
  CHECK(total == 3);
}

TEST_CASE("poly_roots boxes disjoint, multiplicities sum to degree") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-5, 5);
  for (int it = 0; it < 40; ++it) {
    int n = 1 + it % 6;
    std::vector<long> c(n + 1);
    for (auto& x : c) x = d(rng);
    if (c.back() == 0) c.back() = 1;
    QPoly p = qp(c);
    auto rs = poly_roots(p);
    int total = 0;
    for (size_t i = 0; i < rs.size(); ++i) {
      total += rs[i].second;
      for (size_t j = i + 1; j < rs.size(); ++j) CHECK(rs[i].first.box().disjoint(rs[j].first.box()));
      // p vanishes on the refined box
      CInterval v = eval_poly(p, rs[i].first.enclosure(200));
      CHECK(v.contains_zero());
      CHECK(v.width_d() < 1e-40);
    }
    CHECK(total == n);
  }
}

TEST_CASE("alg_arith examples") {
  AlgNum g = rot();
  AlgNum prod = alg_arith(g, g.conj(), ArithOp::Mul);
  REQUIRE(prod.is_rational());
  CHECK(prod.rational() == 1);
  CHECK(alg_equal(alg_arith(g, AlgNum(0), ArithOp::Add), g));
  AlgNum s2 = root_near(qp({-2, 0, 1}), 1.414, 0);
  AlgNum a = alg_arith(AlgNum(1), s2, ArithOp::Add);
  AlgNum b = alg_arith(AlgNum(1), s2, ArithOp::Sub);
  AlgNum p = alg_arith(a, b, ArithOp::Mul);
  REQUIRE(p.is_rational());
  CHECK(p.rational() == -1);
  CHECK_THROWS_AS(alg_arith(a, AlgNum(0), ArithOp::Div), Error);
}

TEST_CASE("alg_arith agrees with rational arithmetic") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> d(-20, 20), e(1, 9);
  for (int it = 0; it < 100; ++it) {
    Rational x(d(rng), e(rng)), y(d(rng), e(rng));
    x.canonicalize();
    y.canonicalize();
    CHECK(alg_arith(x, y, ArithOp::Add).rational() == x + y);
    CHECK(alg_arith(x, y, ArithOp::Sub).rational() == x - y);
    CHECK(alg_arith(x, y, ArithOp::Mul).rational() == x * y);
    if (y != 0) CHECK(alg_arith(x, y, ArithOp::Div).rational() == x / y);
  }
}

TEST_CASE("is_unit_modulus") {
  CHECK(is_unit_modulus(rot()));
  CHECK_FALSE(is_unit_modulus(AlgNum(Rational(1, 2))));
  CHECK_FALSE(is_unit_modulus(root_near(qp({-1, -1, 1}), 1.618, 0)));
  CHECK(is_unit_modulus(AlgNum(-1)));
}

TEST_CASE("root_of_unity_order") {
  CHECK(root_of_unity_order(AlgNum(-1)) == 2);
  CHECK(root_of_unity_order(AlgNum(1)) == 1);
  AlgNum w = root_near(qp({1, 1, 1}), -0.5, 0.866);
  CHECK(root_of_unity_order(w) == 3);
  CHECK_FALSE(root_of_unity_order(rot()).has_value());
  AlgNum i = root_near(qp({1, 0, 1}), 0, 1);
  CHECK(root_of_unity_order(i) == 4);
  // order k implies a^k = 1
  AlgNum z = root_near(cyclotomic(10), 0.809, 0.588);
  auto k = root_of_unity_order(z);
  REQUIRE(k);
  CHECK(*k == 10);
  AlgNum zk = alg_pow(z, *k);
  REQUIRE(zk.is_rational());
  CHECK(zk.rational() == 1);
}

TEST_CASE("weil_height") {
  Interval h2 = weil_height(AlgNum(2));
  CHECK(h2.lo_d() <= std::log(2.0));
  CHECK(h2.hi_d() >= std::log(2.0));
  Interval hr = weil_height(rot());
  // minimal polynomial 5x^2 - 6x + 5 has Mahler measure 5
  CHECK(hr.lo_d() <= std::log(5.0) / 2);
  CHECK(hr.hi_d() >= std::log(5.0) / 2);
  CHECK(hr.width_d() < 1e-20);
  Interval hz = weil_height(root_near(qp({1, 1, 1}), -0.5, 0.866));
  CHECK(hz.lo_d() <= 0);
  CHECK(hz.hi_d() >= 0);
  Interval hphi = weil_height(root_near(qp({-1, -1, 1}), 1.618, 0));
  CHECK(std::fabs(hphi.mid_d() - std::log((1 + std::sqrt(5.0)) / 2) / 2) < 1e-12);
}

TEST_CASE("refine") {
  AlgNum s2 = root_near(qp({-2, 0, 1}), 1.414, 0);
  Box b = s2.refine(Rational(1, 1024));
  CHECK(b.width() <= Rational(1, 1024));
  CHECK(b.re_lo * b.re_lo <= 2);
  CHECK(b.re_hi * b.re_hi >= 2);
  Box one = AlgNum(1).refine(Rational(1, 2));
  CHECK(one.re_lo == 1);
  CHECK(one.re_hi == 1);
  Box g = rot().refine(Rational(1, 1 << 20));
  CHECK(g.width() <= Rational(1, 1 << 20));
  CHECK(g.contains_point(Rational(3, 5), Rational(4, 5)));
}

TEST_CASE("conjugation properties") {
  AlgNum g = rot();
  CHECK(alg_equal(g.conj().conj(), g));
  CHECK_FALSE(alg_equal(g.conj(), g));
  AlgNum s2 = root_near(qp({-2, 0, 1}), 1.414, 0);
  AlgNum x = alg_arith(g, s2, ArithOp::Add);
  AlgNum n2 = alg_arith(x, x.conj(), ArithOp::Mul);
  CHECK(n2.is_real());
  CHECK(sign_real(n2) >= 0);
}

TEST_CASE("minimal_polynomial and comparisons") {
  AlgNum s2 = root_near(qp({-2, 0, 1}), 1.414, 0);
  AlgNum a = alg_pow(s2, 2);
  REQUIRE(a.is_rational());
  CHECK(a.rational() == 2);
  CHECK(compare_real(s2, AlgNum(Rational(3, 2))) < 0);
  CHECK(compare_modulus(rot(), 1) == 0);
  CHECK(compare_modulus(s2, 1) > 0);
  IntPoly mp = minimal_polynomial(root_near(qp({-2, 0, -1, 0, 1}), 1.414, 0));
  CHECK(mp.degree() == 2);
}

TEST_CASE("algexpr zero test") {
  AlgNum g = rot();
  AlgExpr e = AlgExpr::leaf(g) * AlgExpr::leaf(g, true) - AlgExpr::rational(1);
  CHECK(is_zero(e));
  AlgExpr f = AlgExpr::leaf(g).pow(7) - AlgExpr::leaf(g, true).pow(7);
  CHECK_FALSE(is_zero(f));
  AlgNum s2 = root_near(qp({-2, 0, 1}), 1.414, 0);
  AlgExpr h = AlgExpr::leaf(s2).pow(10) - AlgExpr::rational(32);
  CHECK(is_zero(h));
  CHECK(sign_of(AlgExpr::leaf(s2) - AlgExpr::rational(Rational(141, 100))) == 1);
  CHECK(is_zero(AlgExpr::poly_at(qp({-2, 0, 1}), s2)));
}
