#include "ldsw/kernels/kernels.hpp"

#include <immintrin.h>

#include <cstdlib>

namespace ldsw::kernels {

bool have_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

bool simd_enabled() {
  static const bool off = [] {
    const char* e = std::getenv("LDSW_NO_SIMD");
    return e && *e && *e != '0';
  }();
  return !off && have_avx2();
}

void relation_scan_scalar(uint64_t base, uint64_t step, int64_t lo, int64_t count, uint64_t tol,
                          std::vector<int64_t>& hits) {
  uint64_t v = base + (uint64_t)lo * step;
  uint64_t span = 2 * tol;
  for (int64_t k = 0; k < count; ++k, v += step)
    if (v + tol <= span) hits.push_back(lo + k);
}

void coord_batch_scalar(const std::vector<PhaseTerm>& terms, const double* cos_tab, const double* sin_tab,
                        int64_t two_n, int64_t count, int dim, double* out) {
  for (const PhaseTerm& t : terms) {
    int64_t idx = t.base;
    for (int64_t j = 0; j < count; ++j) {
      out[j * dim + t.coord] += t.re * cos_tab[idx] - t.im * sin_tab[idx];
      idx += t.step;
      if (idx >= two_n) idx -= two_n;
    }
  }
}

#if defined(__x86_64__)

__attribute__((target("avx2"))) void relation_scan_avx2(uint64_t base, uint64_t step, int64_t lo, int64_t count,
                                                         uint64_t tol, std::vector<int64_t>& hits) {
  uint64_t v0 = base + (uint64_t)lo * step;
  const __m256i flip = _mm256_set1_epi64x((long long)0x8000000000000000ULL);
  const __m256i vtol = _mm256_set1_epi64x((long long)tol);
  // unsigned (x + tol) <= 2 tol  <=>  signed (x + tol) ^ flip < (2 tol + 1) ^ flip
  const __m256i lim = _mm256_xor_si256(_mm256_set1_epi64x((long long)(2 * tol + 1)), flip);
  const __m256i st4 = _mm256_set1_epi64x((long long)(4 * step));
  __m256i v = _mm256_set_epi64x((long long)(v0 + 3 * step), (long long)(v0 + 2 * step), (long long)(v0 + step),
                                (long long)v0);
  int64_t k = 0;
  for (; k + 4 <= count; k += 4) {
    __m256i s = _mm256_xor_si256(_mm256_add_epi64(v, vtol), flip);
    int mask = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpgt_epi64(lim, s)));
    if (mask)
      for (int b = 0; b < 4; ++b)
        if (mask & (1 << b)) hits.push_back(lo + k + b);
    v = _mm256_add_epi64(v, st4);
  }
  if (k < count) relation_scan_scalar(base, step, lo + k, count - k, tol, hits);
}

__attribute__((target("avx2"))) void coord_batch_avx2(const std::vector<PhaseTerm>& terms, const double* cos_tab,
                                                       const double* sin_tab, int64_t two_n, int64_t count, int dim,
                                                       double* out) {
  const __m256i n2 = _mm256_set1_epi64x(two_n);
  const __m256i n2m1 = _mm256_set1_epi64x(two_n - 1);
  for (const PhaseTerm& t : terms) {
    const __m256d ar = _mm256_set1_pd(t.re), ai = _mm256_set1_pd(t.im);
    int64_t i0 = t.base, i1 = (i0 + t.step) % two_n, i2 = (i1 + t.step) % two_n, i3 = (i2 + t.step) % two_n;
    __m256i idx = _mm256_set_epi64x(i3, i2, i1, i0);
    const __m256i st4 = _mm256_set1_epi64x((4 * t.step) % two_n);
    int64_t j = 0;
    for (; j + 4 <= count; j += 4) {
      __m256d c = _mm256_i64gather_pd(cos_tab, idx, 8);
      __m256d s = _mm256_i64gather_pd(sin_tab, idx, 8);
      __m256d val = _mm256_sub_pd(_mm256_mul_pd(ar, c), _mm256_mul_pd(ai, s));
      alignas(32) double tmp[4];
      _mm256_store_pd(tmp, val);
      for (int b = 0; b < 4; ++b) out[(j + b) * dim + t.coord] += tmp[b];
      idx = _mm256_add_epi64(idx, st4);
      idx = _mm256_sub_epi64(idx, _mm256_and_si256(_mm256_cmpgt_epi64(idx, n2m1), n2));
    }
    if (j < count) {
      int64_t rest = (t.base + (j % two_n) * t.step) % two_n;
      for (; j < count; ++j) {
        out[j * dim + t.coord] += t.re * cos_tab[rest] - t.im * sin_tab[rest];
        rest += t.step;
        if (rest >= two_n) rest -= two_n;
      }
    }
  }
}

#else

void relation_scan_avx2(uint64_t base, uint64_t step, int64_t lo, int64_t count, uint64_t tol,
                        std::vector<int64_t>& hits) {
  relation_scan_scalar(base, step, lo, count, tol, hits);
}

void coord_batch_avx2(const std::vector<PhaseTerm>& terms, const double* cos_tab, const double* sin_tab,
                      int64_t two_n, int64_t count, int dim, double* out) {
  coord_batch_scalar(terms, cos_tab, sin_tab, two_n, count, dim, out);
}

#endif

void relation_scan(uint64_t base, uint64_t step, int64_t lo, int64_t count, uint64_t tol,
                   std::vector<int64_t>& hits) {
  if (simd_enabled()) relation_scan_avx2(base, step, lo, count, tol, hits);
  else relation_scan_scalar(base, step, lo, count, tol, hits);
}

void coord_batch(const std::vector<PhaseTerm>& terms, const double* cos_tab, const double* sin_tab, int64_t two_n,
                 int64_t count, int dim, double* out) {
  if (simd_enabled()) coord_batch_avx2(terms, cos_tab, sin_tab, two_n, count, dim, out);
  else coord_batch_scalar(terms, cos_tab, sin_tab, two_n, count, dim, out);
}

}  // namespace ldsw::kernels
