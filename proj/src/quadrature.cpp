#include "rv/quadrature.hpp"

#include <numbers>

namespace rv {

GaussRule gauss_legendre(std::size_t n) {
  if (n == 0) throw ConfigError("quadrature order must be positive");
  GaussRule g;
  g.x.resize(n);
  g.w.resize(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (double(i) + 0.75) / (double(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = z;
      for (std::size_t k = 2; k <= n; ++k) {
        double p2 = ((2.0 * double(k) - 1.0) * z * p1 - (double(k) - 1.0) * p0) / double(k);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) {
        p1 = z;
        p0 = 1.0;
      }
      dp = double(n) * (z * p1 - p0) / (z * z - 1.0);
      double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // recompute derivative at the converged node
    double p0 = 1.0, p1 = z;
    for (std::size_t k = 2; k <= n; ++k) {
      double p2 = ((2.0 * double(k) - 1.0) * z * p1 - (double(k) - 1.0) * p0) / double(k);
      p0 = p1;
      p1 = p2;
    }
    if (n == 1) p0 = 1.0, p1 = z;
    dp = double(n) * (z * p1 - p0) / (z * z - 1.0);
    double w = 2.0 / ((1.0 - z * z) * dp * dp);
    g.x[i] = -z;
    g.x[n - 1 - i] = z;
    g.w[i] = w;
    g.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) g.x[n / 2] = 0.0;
  return g;
}

}  // namespace rv
