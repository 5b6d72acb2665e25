#include "essnorm/simd.hpp"

#include "essnorm/symbol.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

namespace essnorm::simd {

const char* to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(ESSNORM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

namespace {

Isa detect() {
  if (const char* env = std::getenv("ESSNORM_SIMD")) {
    const std::string_view v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && isa_available(Isa::avx2)) return Isa::avx2;
  }
  return isa_available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!isa_available(isa)) throw std::invalid_argument(std::string("instruction set not available: ") + to_string(isa));
  current().store(isa, std::memory_order_relaxed);
}

PackedPoly::PackedPoly(const PlanarPoly& p) {
  for (const auto& t : p.terms) {
    a.push_back(t.a);
    b.push_back(t.b);
    cre.push_back(t.c.real());
    cim.push_back(t.c.imag());
    max_power = std::max({max_power, t.a, t.b});
  }
}

void rotate_rows(std::span<double> xr, std::span<double> xi, std::span<double> yr, std::span<double> yi, double c,
                 double s, std::complex<double> sigma) {
  const std::size_t n = xr.size();
  if (xi.size() != n || yr.size() != n || yi.size() != n) throw std::invalid_argument("rotate_rows: length mismatch");
#ifdef ESSNORM_HAVE_AVX2
  if (active_isa() == Isa::avx2) {
    kernels::rotate_rows_avx2(xr.data(), xi.data(), yr.data(), yi.data(), n, c, s, sigma.real(), sigma.imag());
    return;
  }
#endif
  kernels::rotate_rows_scalar(xr.data(), xi.data(), yr.data(), yi.data(), n, c, s, sigma.real(), sigma.imag());
}

void poly_abs2(const PackedPoly& q, std::span<const double> zr, std::span<const double> zi, std::span<double> out) {
  const std::size_t n = zr.size();
  if (zi.size() != n || out.size() != n) throw std::invalid_argument("poly_abs2: length mismatch");
#ifdef ESSNORM_HAVE_AVX2
  if (active_isa() == Isa::avx2) {
    kernels::poly_abs2_avx2(q, zr.data(), zi.data(), out.data(), n);
    return;
  }
#endif
  kernels::poly_abs2_scalar(q, zr.data(), zi.data(), out.data(), n);
}

}  // namespace essnorm::simd
