#pragma once

#include <complex>
#include <vector>

#include "bicdyn/model.hpp"

namespace bicdyn {

// A sampled curve over frequencies inside the band (density of states or
// spectral density).
struct SpectralCurve {
  std::vector<double> omega;
  std::vector<double> values;
};

// Tight-binding dispersion of the 2D array:
//   omega_k = omega0 - 2 xi0 (cos kx + cos ky),  k in [-pi, pi]^2.
double dispersion(double kx, double ky, const ReservoirModel& m);

// Momentum-space cavity-array coupling, e^{i k.r0} [eta (omega0 - omega_k) + xi00]
// with r0 = (0,0) so the phase factor is 1. Returned as complex for the
// general interface; the value is real for r0 at the origin.
std::complex<double> coupling_v(double kx, double ky, const ReservoirModel& m);

// Density of states of the 2D band,
//   rho(omega) = K(sqrt(1 - dw^2)) / (2 pi^2 xi0),  dw = (omega-omega0)/(4 xi0),
// log-divergent at the band center. Returns 0 outside the band; throws
// std::domain_error exactly at omega = omega0.
double density_of_states(double omega, const ReservoirModel& m);

// Spectral density J(omega) = 2 pi rho(omega) |V(omega)|^2. For xi00 = 0,
//   J(omega) = (16 xi0 eta^2 / pi) dw^2 K(sqrt(1 - dw^2))
// inside the band and 0 outside. Finite everywhere: the coupling zero kills
// the log divergence of rho, and J(coupling_zero) = 0 exactly.
double spectral_density(double omega, const ReservoirModel& m);

// Histogram of the dispersion over a uniform grid_size^2 k-grid, normalized
// so that the curve integrates to 1. Serves as the independent check of
// density_of_states.
SpectralCurve dos_brute_force(const ReservoirModel& m, int grid_size, int bins);

// int rho(omega) domega over the band by adaptive quadrature, with the
// interval split at the band center and the substitution
// omega = omega0 +/- 4 xi0 e^{-s} applied to the log-singular tips.
// Equals 1 up to quadrature error.
double dos_integral(const ReservoirModel& m);

// Zeroth moment of the spectral density, M0 = int J(omega) domega / (2 pi).
double spectral_moment0(const ReservoirModel& m);

}  // namespace bicdyn
