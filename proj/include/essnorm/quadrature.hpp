#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace essnorm {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(int n);

/// Polar product rule for the weighted integral of f(z) |z|^(-2 alpha) over a
/// sector {r e^{i t} : 0 <= r < radius, |t| < half_angle}.
///
/// The radial direction uses Gauss-Legendre in s = r^(2 - 2*alpha), which
/// turns the weighted measure r^(-2 alpha) r dr into ds / (2 - 2 alpha): the
/// singular weight is absorbed into the nodes, so a weakly singular integrand
/// is passed as its smooth factor f. With alpha = 0 this is Gauss-Legendre
/// in r^2, exact for radial polynomials in r^2.
///
/// The angular direction is the periodic trapezoid rule for a full disk
/// (exact for trigonometric polynomials of degree < angular_nodes) and
/// Gauss-Legendre for a proper wedge.
struct QuadRule {
  int radial_nodes = 24;
  int angular_nodes = 64;
  double radius = 1.0;
  double half_angle = 3.14159265358979323846;  ///< pi means the whole disk
  double alpha = 0.0;                           ///< weight exponent, in [0, 1)

  static QuadRule disk(double radius, int radial_nodes = 24, int angular_nodes = 64);
  /// The wedge {|t| < (pi - eps1)/2, r < r0}.
  static QuadRule wedge(double r0, double eps1, double alpha, int radial_nodes = 24, int angular_nodes = 64);

  [[nodiscard]] bool full_disk() const;
};

/// Expanded nodes (points in C) and positive weights of a rule.
struct QuadNodes {
  std::vector<std::complex<double>> points;
  std::vector<double> weights;
};

QuadNodes build_nodes(const QuadRule& rule);

std::complex<double> quad_integrate(const std::function<std::complex<double>(std::complex<double>)>& f,
                                    const QuadRule& rule);

}  // namespace essnorm
