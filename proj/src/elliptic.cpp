#include "bicdyn/elliptic.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace bicdyn {

namespace {

// AGM(1, b) for 0 < b <= 1. Quadratic convergence: ~8 iterations reach
// double precision even for b ~ 1e-8.
double agm(double b) {
  double a = 1.0;
  for (int it = 0; it < 64; ++it) {
    const double an = 0.5 * (a + b);
    const double gn = std::sqrt(a * b);
    if (std::abs(a - b) <= 2.0 * std::numeric_limits<double>::epsilon() * a) break;
    a = an;
    b = gn;
  }
  return 0.5 * (a + b);
}

}  // namespace

double elliptic_K(double x) {
  if (x < 0.0 || x >= 1.0)
    throw std::domain_error("elliptic_K: modulus must satisfy 0 <= x < 1");
  if (x == 0.0) return M_PI / 2.0;
  // complementary modulus sqrt(1-x^2), written to avoid cancellation at x ~ 1
  const double kp = std::sqrt((1.0 - x) * (1.0 + x));
  return M_PI / (2.0 * agm(kp));
}

double elliptic_K_complement(double x) {
  const double ax = std::abs(x);
  if (ax > 1.0)
    throw std::domain_error("elliptic_K_complement: |x| must be <= 1");
  if (ax == 0.0)
    throw std::domain_error("elliptic_K_complement: diverges at x = 0");
  if (ax == 1.0) return M_PI / 2.0;
  return M_PI / (2.0 * agm(ax));
}

}  // namespace bicdyn
