#pragma once

#include <complex>
#include <vector>

#include "bicdyn/bound_states.hpp"
#include "bicdyn/model.hpp"

namespace bicdyn {

// Time-domain propagator data. All phases are tracked in the frame rotating
// at the array frequency omega0 (the solvers subtract omega0 from every
// frequency), which removes the fast common phase without changing |u|, v,
// n(t) or the dissipation coefficients; with omega0 = 0 the stored u is the
// bare amplitude itself. envelope additionally strips the cavity phase:
// u(t) = exp(-i (omega_c - omega0) t) * envelope(t).
struct Trajectory {
  std::vector<double> t;
  std::vector<std::complex<double>> u;
  std::vector<std::complex<double>> envelope;
  std::vector<double> v;
  ReservoirModel model;
  CavityModel cavity;
  ThermalBath bath;
  double dt = 0.0;
  bool accuracy_warning = false;
};

struct UOptions {
  int omega_half = 2000;        // band grid has 2*omega_half+1 nodes
  bool convergence_check = false;  // re-solve at 2*dt and compare max|u|
};

struct VOptions {
  int omega_half = 2000;
  int refine_points = 1600;     // extra nodes across the in-band resonance
};

// Memory kernel g(tau) = int_band domega/2pi J(omega) e^{-i omega tau},
// evaluated by oscillation-exact panel quadrature on a fixed band grid.
std::complex<double> memory_kernel(double tau, const ReservoirModel& m,
                                   int omega_half = 2000);

// March the integro-differential equation
//   du/dt + i omega_c u + int_0^t g(t-s) u(s) ds = 0,  u(0) = 1,
// with trapezoidal convolution quadrature and one predictor-corrector pass
// per step (second order). Returns u on the uniform grid t_n = n dt.
Trajectory solve_u(const ReservoirModel& m, const CavityModel& c, double dt, double t_max,
                   const UOptions& opt = {});

// Thermal fluctuation function. Uses the frequency-domain form
//   v(t) = int domega/2pi J(omega) nbar(omega,T) |W_t(omega)|^2,
//   W_t(omega) = int_0^t ds u(s) e^{i omega s} (up to a modulus-1 factor),
// with the accumulator updated incrementally per step, which is exactly the
// double time convolution at O(N_t N_omega) cost. Fills traj.v.
void solve_v(Trajectory& traj, const ThermalBath& bath, const VOptions& opt = {});

// Residue + branch-cut reconstruction
//   u(t) = sum_j Z_j e^{-i Omega_j t} + int domega/2pi D_c(omega) e^{-i omega t}.
std::vector<std::complex<double>> u_reconstruct(const ReservoirModel& m, const CavityModel& c,
                                                const std::vector<BoundState>& bound_states,
                                                const std::vector<double>& t_grid,
                                                int omega_half = 2000);

// Steady-state |u| from the bound-state poles alone:
//   sqrt( sum_j Z_j^2 + 2 sum_{j<l} Z_j Z_l cos[(Omega_j - Omega_l) t] ).
double steady_u_magnitude(const std::vector<BoundState>& bound_states, double t);

// Long-time v from the pole/branch-cut decomposition,
//   v(t) = int domega/2pi nbar(omega,T) [D_b(omega; t) + D_c(omega)],
//   D_b(omega; t) = J(omega) | sum_j Z_j e^{-i Omega_j t}/(omega - Omega_j) |^2.
// Expanding the square gives the diagonal Z_j^2/(omega-Omega_j)^2 terms plus
// the oscillatory cosine cross terms; apparent poles at the in-band state
// are cancelled by the zero of J.
double v_steady(const ReservoirModel& m, const CavityModel& c, const ThermalBath& bath,
                const std::vector<BoundState>& bound_states, double t,
                const VOptions& opt = {});

// n(t) = |u(t)|^2 n0 + v(t).
std::vector<double> photon_number(double n0, const Trajectory& traj);

// Earliest time at which the trailing-window maximum of the series stops
// changing: |max over [t-win, t] - max over [t-2win, t-win]| < tol.
// Returns the final time if the series never settles.
double steady_state_time(const std::vector<double>& t, const std::vector<double>& series,
                         double window, double tol = 1e-3);

// Maximum of the series over [t0, t0 + horizon].
double window_max(const std::vector<double>& t, const std::vector<double>& series,
                  double t0, double horizon);

std::vector<double> abs_u(const Trajectory& traj);

// Band frequency grid used by the kernel and fluctuation quadratures:
// cosine-clustered base plus optional uniform refinement across the in-band
// resonance at omega_c (width set by J(omega_c)).
std::vector<double> band_frequency_grid(const ReservoirModel& m, int omega_half,
                                        const CavityModel* refine_at = nullptr,
                                        int refine_points = 0);

}  // namespace bicdyn
