#include "bicdyn/born_markov.hpp"

#include <cmath>
#include <stdexcept>

#include "bicdyn/self_energy.hpp"
#include "bicdyn/spectral.hpp"

namespace bicdyn {

BMCoefficients bm_coefficients(const ReservoirModel& m, const CavityModel& c,
                               const ThermalBath& bath) {
  m.validate();
  BMCoefficients out{};
  out.kappa = 0.5 * spectral_density(c.omega_c, m);
  double shift = 0.0;
  if (m.eta > 0.0) {
    // PV int J(w)/(w - wc) dw/2pi = -Sigma(wc); regular outside the band.
    const SelfEnergy sigma(m);
    shift = -sigma.value(c.omega_c);
  }
  out.omega_c_ren = c.omega_c + shift;
  out.kappa_tilde = 2.0 * out.kappa * nbar(c.omega_c, bath);
  return out;
}

Trajectory bm_green_functions(const ReservoirModel& m, const CavityModel& c,
                              const BMCoefficients& coeffs, const ThermalBath& bath,
                              const std::vector<double>& t_grid) {
  Trajectory traj;
  traj.model = m;
  traj.cavity = c;
  traj.bath = bath;
  traj.t = t_grid;
  traj.dt = t_grid.size() >= 2 ? t_grid[1] - t_grid[0] : 0.0;
  const size_t N = t_grid.size();
  traj.u.resize(N);
  traj.envelope.resize(N);
  traj.v.resize(N);
  const double wr = coeffs.omega_c_ren - m.omega0;       // frame-shifted phase
  const double wenv = coeffs.omega_c_ren - c.omega_c;    // residual after cavity phase
  const double nb = nbar(c.omega_c, bath);
  for (size_t i = 0; i < N; ++i) {
    const double t = t_grid[i];
    const double damp = std::exp(-coeffs.kappa * t);
    traj.u[i] = std::polar(damp, -wr * t);
    traj.envelope[i] = std::polar(damp, -wenv * t);
    traj.v[i] = nb * (1.0 - std::exp(-2.0 * coeffs.kappa * t));
  }
  return traj;
}

}  // namespace bicdyn
