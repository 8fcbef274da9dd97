#pragma once

#include <cstdint>
#include <vector>

namespace ldsw::kernels {

// Reports every k in [lo, lo + count) with |base + k * step| <= tol, arithmetic
// wrapping mod 2^64 and read as signed. Values are fixed-point turns (2^64 = 1).
void relation_scan(uint64_t base, uint64_t step, int64_t lo, int64_t count, uint64_t tol,
                   std::vector<int64_t>& hits);
void relation_scan_scalar(uint64_t base, uint64_t step, int64_t lo, int64_t count, uint64_t tol,
                          std::vector<int64_t>& hits);
void relation_scan_avx2(uint64_t base, uint64_t step, int64_t lo, int64_t count, uint64_t tol,
                        std::vector<int64_t>& hits);

// One term a * e^{i pi idx / N} of a coordinate map, idx = base + j * step (mod 2N)
// along the innermost grid axis.
struct PhaseTerm {
  int coord;
  double re, im;
  int64_t base, step;
};

// out[j * dim + coord] += Re(sum of terms) for grid points j = 0..count-1.
// cos_tab/sin_tab have 2N entries.
void coord_batch(const std::vector<PhaseTerm>& terms, const double* cos_tab, const double* sin_tab, int64_t two_n,
                 int64_t count, int dim, double* out);
void coord_batch_scalar(const std::vector<PhaseTerm>& terms, const double* cos_tab, const double* sin_tab,
                        int64_t two_n, int64_t count, int dim, double* out);
void coord_batch_avx2(const std::vector<PhaseTerm>& terms, const double* cos_tab, const double* sin_tab,
                      int64_t two_n, int64_t count, int dim, double* out);

bool have_avx2();
// LDSW_NO_SIMD=1 forces the scalar paths
bool simd_enabled();

}  // namespace ldsw::kernels
