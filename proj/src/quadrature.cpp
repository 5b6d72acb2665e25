#include "essnorm/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace essnorm {

GaussLegendre gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre needs at least one node");
  GaussLegendre g;
  g.nodes.resize(n);
  g.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0;
    double p1 = x;
    for (int k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    g.nodes[i] = -x;
    g.nodes[n - 1 - i] = x;
    g.weights[i] = w;
    g.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) g.nodes[n / 2] = 0.0;
  return g;
}

QuadRule QuadRule::disk(double radius, int radial_nodes, int angular_nodes) {
  QuadRule r;
  r.radius = radius;
  r.radial_nodes = radial_nodes;
  r.angular_nodes = angular_nodes;
  return r;
}

QuadRule QuadRule::wedge(double r0, double eps1, double alpha, int radial_nodes, int angular_nodes) {
  if (!(eps1 > 0.0 && eps1 < std::numbers::pi)) throw std::invalid_argument("wedge opening eps1 must lie in (0, pi)");
  QuadRule r;
  r.radius = r0;
  r.half_angle = (std::numbers::pi - eps1) / 2.0;
  r.alpha = alpha;
  r.radial_nodes = radial_nodes;
  r.angular_nodes = angular_nodes;
  return r;
}

bool QuadRule::full_disk() const { return half_angle >= std::numbers::pi; }

QuadNodes build_nodes(const QuadRule& rule) {
  if (!(rule.radius > 0.0)) throw std::invalid_argument("quadrature radius must be positive");
  if (!(rule.alpha >= 0.0 && rule.alpha < 1.0)) throw std::invalid_argument("radial exponent alpha must lie in [0, 1)");
  if (rule.radial_nodes < 1 || rule.angular_nodes < 1) throw std::invalid_argument("node counts must be positive");

  // Radial: s in [0, S], r = s^(1/beta). The weighted measure
  // r^(-2 alpha) r dr is exactly ds / beta.
  const double beta = 2.0 - 2.0 * rule.alpha;
  const double s_max = std::pow(rule.radius, beta);
  const auto gl = gauss_legendre(rule.radial_nodes);
  std::vector<double> radii(rule.radial_nodes);
  std::vector<double> rweights(rule.radial_nodes);
  for (int i = 0; i < rule.radial_nodes; ++i) {
    const double s = 0.5 * s_max * (gl.nodes[i] + 1.0);
    radii[i] = std::pow(s, 1.0 / beta);
    rweights[i] = 0.5 * s_max * gl.weights[i] / beta;
  }

  std::vector<double> angles(rule.angular_nodes);
  std::vector<double> aweights(rule.angular_nodes);
  if (rule.full_disk()) {
    for (int j = 0; j < rule.angular_nodes; ++j) {
      angles[j] = 2.0 * std::numbers::pi * j / rule.angular_nodes;
      aweights[j] = 2.0 * std::numbers::pi / rule.angular_nodes;
    }
  } else {
    const auto ga = gauss_legendre(rule.angular_nodes);
    for (int j = 0; j < rule.angular_nodes; ++j) {
      angles[j] = rule.half_angle * ga.nodes[j];
      aweights[j] = rule.half_angle * ga.weights[j];
    }
  }

  QuadNodes out;
  out.points.reserve(radii.size() * angles.size());
  out.weights.reserve(radii.size() * angles.size());
  for (int i = 0; i < rule.radial_nodes; ++i)
    for (int j = 0; j < rule.angular_nodes; ++j) {
      out.points.push_back(std::polar(radii[i], angles[j]));
      out.weights.push_back(rweights[i] * aweights[j]);
    }
  return out;
}

std::complex<double> quad_integrate(const std::function<std::complex<double>(std::complex<double>)>& f,
                                    const QuadRule& rule) {
  const auto nodes = build_nodes(rule);
  std::complex<double> sum{0.0, 0.0};
  for (std::size_t k = 0; k < nodes.points.size(); ++k) sum += nodes.weights[k] * f(nodes.points[k]);
  return sum;
}

}  // namespace essnorm
