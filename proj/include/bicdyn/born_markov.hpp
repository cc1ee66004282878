#pragma once

#include "bicdyn/greens.hpp"
#include "bicdyn/model.hpp"

namespace bicdyn {

// Weak-coupling, memoryless limit: constant coefficients
//   kappa       = J(omega_c) / 2
//   delta_omega = PV int domega/2pi J(omega)/(omega - omega_c)
//   kappa_tilde = 2 kappa nbar(omega_c, T)
// Computed for any eta; comparisons against the exact solution expose where
// the limit breaks down.
struct BMCoefficients {
  double omega_c_ren;  // omega_c + delta_omega
  double kappa;
  double kappa_tilde;
};

BMCoefficients bm_coefficients(const ReservoirModel& m, const CavityModel& c,
                               const ThermalBath& bath);

// Closed-form Green's functions of the limit,
//   u(t) = e^{-(i omega_c_ren + kappa) t},
//   v(t) = nbar(omega_c,T) (1 - e^{-2 kappa t}),
// returned as a Trajectory in the common omega0 frame.
Trajectory bm_green_functions(const ReservoirModel& m, const CavityModel& c,
                              const BMCoefficients& coeffs, const ThermalBath& bath,
                              const std::vector<double>& t_grid);

}  // namespace bicdyn
