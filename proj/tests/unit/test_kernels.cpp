#include <cmath>
#include <random>

#include "doctest.h"
#include "ldsw/kernels/kernels.hpp"

using namespace ldsw::kernels;

TEST_CASE("relation_scan scalar and avx2 agree bitwise") {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 300; ++it) {
    uint64_t base = rng(), step = rng() >> (rng() % 64);
    int64_t lo = -(int64_t)(rng() % 200), count = (int64_t)(rng() % 403);
    uint64_t tol = rng() >> (2 + rng() % 62);
    if (it % 7 == 0) base = (uint64_t)(-(int64_t)(step * (uint64_t)(lo + 5)));  // exact hit at lo + 5
    std::vector<int64_t> a, b;
    relation_scan_scalar(base, step, lo, count, tol, a);
    relation_scan_avx2(base, step, lo, count, tol, b);
    CHECK(a == b);
    for (int64_t k : a) {
      uint64_t v = base + (uint64_t)k * step;
      CHECK(v + tol <= 2 * tol);
    }
  }
  std::vector<int64_t> h;
  relation_scan(0, uint64_t(1) << 62, -8, 17, 0, h);
  CHECK(h == std::vector<int64_t>{-8, -4, 0, 4, 8});
}

TEST_CASE("coord_batch scalar and avx2 agree bitwise") {
  std::mt19937 rng(9);
  for (int it = 0; it < 50; ++it) {
    int64_t N = 1 + rng() % 300, two_n = 2 * N;
    std::vector<double> c(two_n), s(two_n);
    for (int64_t t = 0; t < two_n; ++t) {
      c[t] = std::cos(M_PI * t / N);
      s[t] = std::sin(M_PI * t / N);
    }
    int dim = 1 + rng() % 4;
    std::vector<PhaseTerm> terms;
    for (int k = 0; k < 6; ++k)
      terms.push_back({(int)(rng() % dim), (rng() % 1000) / 300.0 - 1.5, (rng() % 1000) / 700.0 - 0.7,
                       (int64_t)(rng() % two_n), (int64_t)(rng() % two_n)});
    int64_t count = 1 + rng() % 40;
    std::vector<double> a(count * dim, 0.25), b(count * dim, 0.25);
    coord_batch_scalar(terms, c.data(), s.data(), two_n, count, dim, a.data());
    coord_batch_avx2(terms, c.data(), s.data(), two_n, count, dim, b.data());
    CHECK(a == b);
  }
}
