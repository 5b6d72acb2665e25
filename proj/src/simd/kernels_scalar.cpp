#include "essnorm/simd.hpp"

#include <vector>

namespace essnorm::simd::kernels {

void rotate_rows_scalar(double* xr, double* xi, double* yr, double* yi, std::size_t n, double c, double s, double sr,
                        double si) {
  for (std::size_t k = 0; k < n; ++k) {
    const double tr = sr * yr[k] - si * yi[k];
    const double ti = sr * yi[k] + si * yr[k];
    const double nxr = c * xr[k] - s * tr;
    const double nxi = c * xi[k] - s * ti;
    const double nyr = s * xr[k] + c * tr;
    const double nyi = s * xi[k] + c * ti;
    xr[k] = nxr;
    xi[k] = nxi;
    yr[k] = nyr;
    yi[k] = nyi;
  }
}

void poly_abs2_scalar(const PackedPoly& q, const double* zr, const double* zi, double* out, std::size_t n) {
  const int P = q.max_power;
  std::vector<double> pr(P + 1);
  std::vector<double> pi(P + 1);
  for (std::size_t k = 0; k < n; ++k) {
    pr[0] = 1.0;
    pi[0] = 0.0;
    for (int j = 1; j <= P; ++j) {
      pr[j] = pr[j - 1] * zr[k] - pi[j - 1] * zi[k];
      pi[j] = pr[j - 1] * zi[k] + pi[j - 1] * zr[k];
    }
    double accr = 0.0;
    double acci = 0.0;
    for (std::size_t t = 0; t < q.size(); ++t) {
      const int a = q.a[t];
      const int b = q.b[t];
      // z^a * conj(z^b)
      const double mr = pr[a] * pr[b] + pi[a] * pi[b];
      const double mi = pi[a] * pr[b] - pr[a] * pi[b];
      accr = accr + (q.cre[t] * mr - q.cim[t] * mi);
      acci = acci + (q.cre[t] * mi + q.cim[t] * mr);
    }
    out[k] = accr * accr + acci * acci;
  }
}

}  // namespace essnorm::simd::kernels
