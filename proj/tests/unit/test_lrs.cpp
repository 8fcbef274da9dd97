#include <cmath>
#include <random>

#include "doctest.h"
#include "ldsw/exactnum/errors.hpp"
#include "ldsw/lrs/lrs.hpp"

using namespace ldsw;
using namespace ldsw::lrs;

namespace {

Lrs fib() { return Lrs({1, 1}, {0, 1}); }

QMatrix example_system() {
  return QMatrix::from_rows({{Rational(3, 5), Rational(-4, 5), 0},
                             {Rational(4, 5), Rational(3, 5), 0},
                             {0, 0, Rational(1, 2)}});
}

// rank of the k x k Hankel matrix of t
int hankel_rank(const RVec& t, int k) {
  QMatrix H(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) H(i, j) = t[i + j];
  return rank(H);
}

Lrs random_lrs(std::mt19937& rng, int maxd) {
  std::uniform_int_distribution<int> dd(1, maxd), c(-3, 3), den(1, 3);
  int d = dd(rng);
  RVec a(d), init(d);
  for (int i = 0; i < d; ++i) {
    a[i] = Rational(c(rng), den(rng));
    a[i].canonicalize();
    init[i] = c(rng);
  }
  return Lrs(a, init);
}

}  // namespace

TEST_CASE("term") {
  CHECK(term(fib(), 10) == 55);
  CHECK(term(Lrs::constant(1), 100) == 1);
  Lrs sq({1, -3, 3}, {0, 1, 4});
  CHECK(term(sq, 7) == 49);
  for (unsigned long n : {0ul, 5ul, 37ul, 200ul}) CHECK(term_fast(fib(), n) == term(fib(), n));
}

TEST_CASE("minimize") {
  // Fibonacci padded: charpoly (x^2-x-1)(x^2+1)
  RVec t = terms(fib(), 4);
  Lrs pad({1, 1, 0, 1}, t);
  Lrs m = minimize(pad);
  CHECK(m.order() == 2);
  CHECK(m == fib());
  Lrs z({1, 2, 3}, {0, 0, 0});
  CHECK(minimize(z).order() == 0);
  // 2^n with the redundant root 3
  Lrs g({-6, 5}, {1, 2});
  Lrs mg = minimize(g);
  CHECK(mg.order() == 1);
  CHECK(mg.coeffs() == RVec{2});
  for (int n = 0; n < 6; ++n) CHECK(term(mg, n) == pow_q(2, n));
}

TEST_CASE("minimize is idempotent and the Hankel rank equals the order") {
  std::mt19937 rng(11);
  for (int it = 0; it < 50; ++it) {
    Lrs s = random_lrs(rng, 4);
    Lrs m = minimize(s);
    CHECK(minimize(m) == m);
    RVec t = terms(m, 2 * m.order() + 2);
    if (m.order() > 0) CHECK(hankel_rank(t, m.order()) == m.order());
    RVec t2 = terms(s, 30), t3 = terms(m, 30);
    CHECK(t2 == t3);
  }
}

TEST_CASE("companion") {
  Companion c = companion(fib());
  CHECK(c.C == QMatrix::from_rows({{0, 1}, {1, 1}}));
  CHECK(c.q == RVec{0, 1});
  Companion g = companion(Lrs::geometric(2, 3));
  CHECK(g.C == QMatrix::from_rows({{2}}));
  CHECK(g.q == RVec{3});
  Companion n = companion(Lrs::index());
  CHECK(n.C == QMatrix::from_rows({{0, 1}, {-1, 2}}));
  for (int k = 0; k < 5; ++k) CHECK((n.C.pow(k) * n.q)[0] == k);
  CHECK_THROWS_AS(companion(Lrs()), Error);
}

TEST_CASE("add and mul") {
  CHECK(add(fib(), fib()) == scale(fib(), 2));
  Lrs p = mul(Lrs::geometric(2), Lrs::geometric(3));
  CHECK(p.order() == 1);
  for (int n = 0; n < 5; ++n) CHECK(term(p, n) == pow_q(6, n));
  Lrs q = mul(fib(), Lrs::geometric(-1));
  CHECK(q.order() == 2);
  for (int n = 0; n < 8; ++n) CHECK(term(q, n) == term(fib(), n) * pow_q(-1, n));
}

TEST_CASE("closure soundness on random sequences") {
  std::mt19937 rng(5);
  for (int it = 0; it < 40; ++it) {
    Lrs s = random_lrs(rng, 3), t = random_lrs(rng, 3);
    RVec a = terms(s, 50), b = terms(t, 50);
    RVec x = terms(add(s, t), 50), y = terms(mul(s, t), 50);
    for (int n = 0; n < 50; ++n) {
      CHECK(x[n] == a[n] + b[n]);
      CHECK(y[n] == a[n] * b[n]);
    }
  }
}

TEST_CASE("lds_coordinate and weight_sequence") {
  QMatrix M = example_system();
  RVec q{1, 0, 1};
  Lrs c3 = lds_coordinate(M, q, 2);
  CHECK(c3 == Lrs::geometric(Rational(1, 2)));
  Lrs id = lds_coordinate(QMatrix::identity(3), {4, 5, 6}, 1);
  CHECK(id == Lrs::constant(5));
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> e(-4, 4);
  QMatrix R(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) R(i, j) = Rational(e(rng), 2 + (i + j) % 3);
  RVec v{1, -1, 2};
  Lrs r0 = lds_coordinate(R, v, 0);
  RVec x = v;
  for (int n = 0; n < 20; ++n) {
    CHECK(term(r0, n) == x[0]);
    x = R * x;
  }
  PolyWeight w(3, {{1, {2, 0, 0}}, {1, {0, 2, 0}}});
  CHECK(weight_sequence(M, q, w) == Lrs::constant(1));
  CHECK(weight_sequence(M, q, PolyWeight::constant(3, 7)) == Lrs::constant(7));
  CHECK(weight_sequence(M, q, PolyWeight::variable(3, 2)) == Lrs::geometric(Rational(1, 2)));
  CHECK_THROWS_AS(lds_coordinate(M, {1, 2}, 0), Error);
  CHECK_THROWS_AS(weight_sequence(M, q, PolyWeight::variable(2, 0)), Error);
}

TEST_CASE("partial_sums") {
  Lrs h = partial_sums(Lrs::geometric(Rational(1, 2)));
  for (int n = 0; n < 10; ++n) CHECK(term(h, n) == 2 - pow_q(Rational(1, 2), n));
  CHECK(h.order() <= 2);
  CHECK(partial_sums(Lrs()).order() == 0);
  Lrs one = partial_sums(Lrs::constant(1));
  for (int n = 0; n < 10; ++n) CHECK(term(one, n) == n + 1);
}

TEST_CASE("exp_poly examples") {
  ExpPolyForm f = exp_poly(fib());
  REQUIRE(f.terms().size() == 2);
  for (auto& t : f.terms()) {
    CHECK(t.degree == 0);
    double r = t.root.approx_re();
    // c = +-1/sqrt 5, sign following the root
    AlgNum c = t.coeff(0);
    CHECK(std::fabs(c.approx_re() - (r > 0 ? 1 : -1) / std::sqrt(5.0)) < 1e-12);
    AlgNum c2 = alg_pow(c, 2);
    REQUIRE(c2.is_rational());
    CHECK(c2.rational() == Rational(1, 5));
  }
  // n 2^n
  Lrs n2({-4, 4}, {0, 2});
  ExpPolyForm g = exp_poly(n2);
  REQUIRE(g.terms().size() == 1);
  CHECK(g.terms()[0].root.rational() == 2);
  CHECK(g.terms()[0].degree == 1);
  CHECK(g.terms()[0].coeff(0).rational() == 0);
  CHECK(g.terms()[0].coeff(1).rational() == 1);
  ExpPolyForm h = exp_poly(Lrs::geometric(Rational(1, 2)));
  REQUIRE(h.terms().size() == 1);
  CHECK(h.terms()[0].root.rational() == Rational(1, 2));
  CHECK(h.terms()[0].coeff(0).rational() == 1);
  CHECK_THROWS_AS(exp_poly(Lrs()), Error);
}

TEST_CASE("exp_poly with a zero root keeps the prefix out") {
  // 5, 3, then 2^n shifted: u = 5, 3, 1, 2, 4, ...
  Lrs s({0, 0, 2}, {5, 3, 1});
  ExpPolyForm f = exp_poly(s);
  CHECK(f.offset() == 2);
  for (unsigned long n = 2; n < 12; ++n) CHECK(f.value(n) == term(s, n));
}

TEST_CASE("exp_poly round trip and conjugation closure") {
  std::mt19937 rng(9);
  for (int it = 0; it < 30; ++it) {
    Lrs s = random_lrs(rng, 4);
    if (is_zero(minimize(s))) continue;
    ExpPolyForm f = exp_poly(s);
    int d = minimize(s).order();
    for (unsigned long n = f.offset(); n <= f.offset() + 2 * d; ++n) {
      CInterval v = f.eval(n, 128);
      Rational u = term(s, n);
      CHECK(v.re.contains(u));
      CHECK(v.im.contains_zero());
      CHECK(f.value(n) == u);
    }
    for (auto& t : f.terms()) {
      bool found = false;
      AlgNum c = t.root.conj();
      for (auto& o : f.terms())
        if (alg_equal(o.root, c) && o.degree == t.degree) found = true;
      CHECK(found);
    }
  }
}

TEST_CASE("first_nonzero") {
  CHECK(first_nonzero(exp_poly(Lrs::geometric(Rational(1, 2)))) == 0ul);
  CHECK(first_nonzero(exp_poly(Lrs::index())) == 1ul);
  // 2^n - (-2)^n
  Lrs s = sub(Lrs::geometric(2), Lrs::geometric(-2));
  CHECK(first_nonzero(exp_poly(s)) == 1ul);
}

TEST_CASE("nondegenerate_split examples") {
  NondegenerateSplit a = nondegenerate_split(Lrs::geometric(-1));
  CHECK(a.R == 2);
  REQUIRE(a.subsequences.size() == 2);
  CHECK(a.subsequences[0] == Lrs::constant(1));
  CHECK(a.subsequences[1] == Lrs::constant(-1));
  NondegenerateSplit b = nondegenerate_split(add(Lrs::geometric(2), Lrs::geometric(-2, 3)));
  CHECK(b.R == 2);
  Lrs rot = lds_coordinate(QMatrix::from_rows({{Rational(3, 5), Rational(-4, 5)}, {Rational(4, 5), Rational(3, 5)}}),
                           {1, 0}, 0);
  CHECK(nondegenerate_split(rot).R == 1);
  // 2i and -2i: ratio -1 and (2i)^2 = -4, so the split needs 4
  Lrs c({-4, 0}, {1, 1});
  NondegenerateSplit cs = nondegenerate_split(c);
  CHECK(cs.R == 4);
  for (auto& sub : cs.subsequences)
    if (!is_zero(sub)) CHECK(is_nondegenerate(exp_poly(sub)));
}

TEST_CASE("nondegenerate_split subsequences pass the audit") {
  std::mt19937 rng(13);
  for (int it = 0; it < 25; ++it) {
    Lrs s = random_lrs(rng, 3);
    if (is_zero(minimize(s))) continue;
    NondegenerateSplit sp = nondegenerate_split(s);
    for (unsigned long r = 0; r < sp.R; ++r) {
      auto& sub = sp.subsequences[r];
      for (int n = 0; n < 6; ++n) CHECK(term(sub, n) == term(s, n * sp.R + r));
      if (!is_zero(sub)) CHECK(is_nondegenerate(exp_poly(sub)));
    }
  }
}

TEST_CASE("growth sanity for a non-degenerate sequence") {
  // roots 3 and 1/2: |u_n| > (3 - 1/2)^n on a suffix window
  Lrs s = add(Lrs::geometric(3), Lrs::geometric(Rational(1, 2), 5));
  for (int n = 20; n < 60; ++n) CHECK(abs_q(term(s, n)) > pow_q(Rational(5, 2), n));
}
