#pragma once

#include <complex>
#include <vector>

#include "bicdyn/greens.hpp"

namespace bicdyn {

// Time-dependent coefficients of the exact master equation:
//   omega_c_ren(t) = -Im[du/dt u^{-1}]   renormalized frequency
//   kappa(t)       = -Re[du/dt u^{-1}]   dissipation rate
//   kappa_tilde(t) = dv/dt + 2 v kappa   fluctuation rate
// The logarithmic derivative is formed on the slow envelope so the eta = 0
// limit gives kappa == 0 and omega_c_ren == omega_c exactly.
struct CoefficientSeries {
  std::vector<double> t;
  std::vector<double> omega_c_ren;
  std::vector<double> kappa;
  std::vector<double> kappa_tilde;
  std::vector<char> singular;  // |u| below 1e-12: coefficients unreliable there
};

CoefficientSeries coefficients(const Trajectory& traj);

// Density operator of the target cavity in the truncated number basis.
class FockDensityMatrix {
 public:
  explicit FockDensityMatrix(int dim);

  int dim() const { return dim_; }
  std::complex<double>& at(int m, int n) { return elems_[size_t(m) * dim_ + n]; }
  const std::complex<double>& at(int m, int n) const { return elems_[size_t(m) * dim_ + n]; }

  double trace_real() const;
  double hermiticity_defect() const;  // max |rho - rho^dagger|
  double min_diagonal() const;

  // Same matrix padded with zeros to a larger truncation.
  FockDensityMatrix embedded(int new_dim) const;

  static FockDensityMatrix fock(int dim, int n);
  // Pure state sum_k amps[k] |k>.
  static FockDensityMatrix pure(int dim, const std::vector<std::complex<double>>& amps);
  static FockDensityMatrix thermal(int dim, double mean);

  // <psi| rho |psi> for a pure reference state.
  double fidelity(const std::vector<std::complex<double>>& amps) const;

 private:
  int dim_;
  std::vector<std::complex<double>> elems_;
};

struct EvolveOptions {
  double max_leakage = 1e-3;  // refuse beyond this unless allow_leakage
  bool allow_leakage = false;
};

struct EvolveResult {
  FockDensityMatrix rho;
  double leakage;  // 1 - trace, weight pushed past the truncation
};

// Exact propagation of the density matrix given the Green's function pair
// (u, v) at the target time: expands rho(0) over |m><n|, applies the
// raising-operator kernel with the thermal-form core, and reports the
// truncation leakage. Throws std::runtime_error if the leakage exceeds
// opts.max_leakage (raise the truncation via embedded()).
EvolveResult evolve_density_matrix(const FockDensityMatrix& rho0, std::complex<double> u,
                                   double v, const EvolveOptions& opts = {});

// Dissipationless-trapping flag series: |u(t) - 1| < tol and v(t) < tol
// (the literal condition; phase excursions count as leaving the trapped
// state, so a decoupled cavity re-enters only at full phase revolutions).
std::vector<char> trapping_condition(const Trajectory& traj, double tol);

}  // namespace bicdyn
