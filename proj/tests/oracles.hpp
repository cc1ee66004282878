#pragma once

// Test-only reference computations, kept independent of the library's
// evaluation paths: brute-force quadrature of defining integrals, histogram
// checks, far-field expansions.

#include <cmath>
#include <functional>
#include <vector>

namespace oracle {

// Composite Simpson on [a, b] with n panels (n even).
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

// Adaptive Simpson with explicit recursion.
inline double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                                   double fa, double fm, double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol = 1e-13, int depth = 48) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Complete elliptic integral of the first kind from the defining integral,
// K(x) = (1/2) int_0^pi dalpha / sqrt(1 - x^2 cos^2 alpha).
inline double elliptic_K(double x) {
  return adaptive_simpson(
      [x](double a) {
        const double c = std::cos(a);
        return 0.5 / std::sqrt(1.0 - x * x * c * c);
      },
      0.0, M_PI, 1e-14, 44);
}

// Reduced spectral profile j(x) = (16/pi) x^2 K(sqrt(1-x^2)) built from the
// oracle K; the full J is xi0 eta^2 j((w-w0)/(4 xi0)).
inline double spectral_profile(double x) {
  if (std::abs(x) >= 1.0 || x == 0.0) return 0.0;
  const double k = std::sqrt((1.0 - x) * (1.0 + x));
  return (16.0 / M_PI) * x * x * elliptic_K(k);
}

// M0 = int J domega/2pi in units of xi0 eta^2: (2/pi) int_{-1}^{1} j(x) dx.
inline double moment0_reduced() {
  // integrand ~ x^2 log|x| near 0: smooth enough for Simpson after a split
  const double left = adaptive_simpson([](double x) { return spectral_profile(x); }, -1.0,
                                       -1e-8, 1e-12, 44);
  const double right = adaptive_simpson([](double x) { return spectral_profile(x); }, 1e-8,
                                        1.0, 1e-12, 44);
  return (4.0 / (2.0 * M_PI)) * (left + right);
}

}  // namespace oracle
