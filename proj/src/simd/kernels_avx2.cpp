// Compiled with -mavx2 only; reached through the runtime dispatcher. The
// operation order matches kernels_scalar.cpp exactly and no FMA is used, so
// results are bit-identical to the scalar reference.
#include "essnorm/simd.hpp"

#include <immintrin.h>

#include <vector>

namespace essnorm::simd::kernels {

void rotate_rows_avx2(double* xr, double* xi, double* yr, double* yi, std::size_t n, double c, double s, double sr,
                      double si) {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  const __m256d vsr = _mm256_set1_pd(sr);
  const __m256d vsi = _mm256_set1_pd(si);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d ar = _mm256_loadu_pd(xr + k);
    const __m256d ai = _mm256_loadu_pd(xi + k);
    const __m256d br = _mm256_loadu_pd(yr + k);
    const __m256d bi = _mm256_loadu_pd(yi + k);
    const __m256d tr = _mm256_sub_pd(_mm256_mul_pd(vsr, br), _mm256_mul_pd(vsi, bi));
    const __m256d ti = _mm256_add_pd(_mm256_mul_pd(vsr, bi), _mm256_mul_pd(vsi, br));
    _mm256_storeu_pd(xr + k, _mm256_sub_pd(_mm256_mul_pd(vc, ar), _mm256_mul_pd(vs, tr)));
    _mm256_storeu_pd(xi + k, _mm256_sub_pd(_mm256_mul_pd(vc, ai), _mm256_mul_pd(vs, ti)));
    _mm256_storeu_pd(yr + k, _mm256_add_pd(_mm256_mul_pd(vs, ar), _mm256_mul_pd(vc, tr)));
    _mm256_storeu_pd(yi + k, _mm256_add_pd(_mm256_mul_pd(vs, ai), _mm256_mul_pd(vc, ti)));
  }
  rotate_rows_scalar(xr + k, xi + k, yr + k, yi + k, n - k, c, s, sr, si);
}

void poly_abs2_avx2(const PackedPoly& q, const double* zr, const double* zi, double* out, std::size_t n) {
  const int P = q.max_power;
  std::vector<__m256d> pr(P + 1);
  std::vector<__m256d> pi(P + 1);
  std::vector<__m256d> cr(q.size());
  std::vector<__m256d> ci(q.size());
  for (std::size_t t = 0; t < q.size(); ++t) {
    cr[t] = _mm256_set1_pd(q.cre[t]);
    ci[t] = _mm256_set1_pd(q.cim[t]);
  }
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d xr = _mm256_loadu_pd(zr + k);
    const __m256d xi = _mm256_loadu_pd(zi + k);
    pr[0] = _mm256_set1_pd(1.0);
    pi[0] = _mm256_setzero_pd();
    for (int j = 1; j <= P; ++j) {
      pr[j] = _mm256_sub_pd(_mm256_mul_pd(pr[j - 1], xr), _mm256_mul_pd(pi[j - 1], xi));
      pi[j] = _mm256_add_pd(_mm256_mul_pd(pr[j - 1], xi), _mm256_mul_pd(pi[j - 1], xr));
    }
    __m256d accr = _mm256_setzero_pd();
    __m256d acci = _mm256_setzero_pd();
    for (std::size_t t = 0; t < q.size(); ++t) {
      const int a = q.a[t];
      const int b = q.b[t];
      const __m256d mr = _mm256_add_pd(_mm256_mul_pd(pr[a], pr[b]), _mm256_mul_pd(pi[a], pi[b]));
      const __m256d mi = _mm256_sub_pd(_mm256_mul_pd(pi[a], pr[b]), _mm256_mul_pd(pr[a], pi[b]));
      accr = _mm256_add_pd(accr, _mm256_sub_pd(_mm256_mul_pd(cr[t], mr), _mm256_mul_pd(ci[t], mi)));
      acci = _mm256_add_pd(acci, _mm256_add_pd(_mm256_mul_pd(cr[t], mi), _mm256_mul_pd(ci[t], mr)));
    }
    _mm256_storeu_pd(out + k, _mm256_add_pd(_mm256_mul_pd(accr, accr), _mm256_mul_pd(acci, acci)));
  }
  poly_abs2_scalar(q, zr + k, zi + k, out + k, n - k);
}

}  // namespace essnorm::simd::kernels
