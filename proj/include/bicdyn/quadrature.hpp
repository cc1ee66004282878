#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace bicdyn {

struct QuadOptions {
  double abs_tol = 1e-11;
  double rel_tol = 1e-10;
  int max_depth = 60;
};

// Adaptive Gauss-Kronrod (G10/K21) on [a, b]. Subdivides until the local
// Kronrod error estimate meets tol scaled by interval share. Integrable
// endpoint/log singularities are handled by depth-limited bisection.
double adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   const QuadOptions& opt = {});

// Same, with the interval pre-split at the given interior points (useful
// when the integrand has known kinks or near-singular structure).
double adaptive_gk_split(const std::function<double(double)>& f, double a, double b,
                         const std::vector<double>& split_points,
                         const QuadOptions& opt = {});

// Moments m0 = int_a^b e^{-i s x} dx and m1 = int_a^b (x - a) e^{-i s x} dx,
// given the endpoint phases ea = e^{-i s a}, eb = e^{-i s b}. Uses the exact
// closed form, falling back to a Taylor branch for small phase s*(b-a)
// where the closed form loses digits.
void filon_moments(double a, double b, double s, std::complex<double> ea,
                   std::complex<double> eb, std::complex<double>& m0,
                   std::complex<double>& m1);

// Integral of f(x) * exp(-i s x) over one panel [a, b] given endpoint values
// fa, fb, with f treated as linear on the panel (Filon-type): exact in the
// oscillation, second order in the panel size.
std::complex<double> filon_panel(double a, double b, double fa, double fb, double s);

// As above with precomputed endpoint phases (callers sweeping many s values
// keep per-node rotators). The amplitude may be complex.
template <class T>
std::complex<double> filon_panel_phased(double a, double b, T fa, T fb, double s,
                                        std::complex<double> ea, std::complex<double> eb) {
  std::complex<double> m0, m1;
  filon_moments(a, b, s, ea, eb, m0, m1);
  return fa * m0 + ((fb - fa) / (b - a)) * m1;
}

// Frequency grid over [lo, hi] with 2*half+1 nodes, cosine-clustered toward
// both endpoints and the midpoint (the three places the band functions have
// structure: van Hove edges and the log-singular center).
std::vector<double> cosine_band_grid(double lo, double hi, int half);

// Merge extra nodes into an ascending grid, dropping near-duplicates.
std::vector<double> merge_grids(std::vector<double> base, const std::vector<double>& extra);

// Trapezoid weights for an arbitrary ascending grid.
std::vector<double> trapezoid_weights(const std::vector<double>& x);

}  // namespace bicdyn
