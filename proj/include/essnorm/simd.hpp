#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace essnorm {
struct PlanarPoly;
}

namespace essnorm::simd {

enum class Isa { scalar, avx2 };

const char* to_string(Isa isa);
bool isa_available(Isa isa);

/// Instruction set used by the dispatching entry points. Chosen once from
/// the CPU, overridable with ESSNORM_SIMD=scalar|avx2 or set_isa().
Isa active_isa();
/// Throws std::invalid_argument if the CPU cannot run isa.
void set_isa(Isa isa);

/// Planar polynomial flattened for batch evaluation.
struct PackedPoly {
  std::vector<int> a;
  std::vector<int> b;
  std::vector<double> cre;
  std::vector<double> cim;
  int max_power = 0;

  PackedPoly() = default;
  explicit PackedPoly(const PlanarPoly& p);
  [[nodiscard]] std::size_t size() const { return a.size(); }
};

/// Row pair update of one complex Jacobi rotation:
///   x <- c x - s (sigma y),   y <- s x + c (sigma y)
/// with real c, s and unimodular sigma. Rows are split re/im arrays.
void rotate_rows(std::span<double> xr, std::span<double> xi, std::span<double> yr, std::span<double> yi, double c,
                 double s, std::complex<double> sigma);

/// out[k] = |q(z_k)|^2 at z_k = zr[k] + i zi[k].
void poly_abs2(const PackedPoly& q, std::span<const double> zr, std::span<const double> zi, std::span<double> out);

// Fixed-ISA variants, exposed for the equivalence tests. The AVX2 entry
// points must only be called when isa_available(Isa::avx2).
namespace kernels {
void rotate_rows_scalar(double* xr, double* xi, double* yr, double* yi, std::size_t n, double c, double s, double sr,
                        double si);
void poly_abs2_scalar(const PackedPoly& q, const double* zr, const double* zi, double* out, std::size_t n);
void rotate_rows_avx2(double* xr, double* xi, double* yr, double* yi, std::size_t n, double c, double s, double sr,
                      double si);
void poly_abs2_avx2(const PackedPoly& q, const double* zr, const double* zi, double* out, std::size_t n);
}  // namespace kernels

}  // namespace essnorm::simd
