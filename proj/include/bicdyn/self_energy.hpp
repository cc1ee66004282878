#pragma once

#include <memory>

#include "bicdyn/model.hpp"
#include "bicdyn/spline.hpp"

namespace bicdyn {

// Reservoir-induced self-energy
//
//   Sigma(z) = int_band domega/2pi  J(omega) / (z - omega)
//
// evaluated as a regular adaptive integral for z outside the band and as a
// Cauchy principal value for z inside. In the reduced variable
// x = (omega - omega0)/(4 xi0) everything scales as
// Sigma = xi0 eta^2 * (8/pi^2) int f(x)/(zeta - x) dx with
// f(x) = K(sqrt(1-x^2)) (x - xstar)^2 and xstar the reduced coupling zero,
// so the principal-value profile is tabulated once per coupling shape and
// shared across models that differ only in eta, xi0, omega0.
class SelfEnergy {
 public:
  explicit SelfEnergy(const ReservoirModel& m);

  const ReservoirModel& model() const { return model_; }

  // Sigma(z), z strictly outside the band. Negative above the band,
  // positive below.
  double outside(double z) const;

  // d Sigma/dz, z strictly outside the band (always negative).
  double outside_derivative(double z) const;

  // Principal value Delta(omega) for omega strictly inside the band.
  // Backed by the tabulated smooth part plus the analytic log term, so it is
  // accurate arbitrarily close to the band edges.
  double principal_value(double omega) const;

  // Direct adaptive evaluation of the principal value (symmetric excision
  // with Richardson extrapolation in the excision half-width). Slower;
  // used to build the table and as an independent path in tests.
  double principal_value_exact(double omega) const;

  // d Sigma/domega at the coupling zero inside the band, where the double
  // pole of the integrand is cancelled exactly by the double zero of J.
  double derivative_at_coupling_zero() const;

  // Dispatch on the position of z; throws std::domain_error within
  // edge_tol of a band edge.
  double value(double z) const;

  static constexpr double kEdgeTol = 1e-15;

 private:
  ReservoirModel model_;
  double xstar_ = 0.0;   // reduced coupling zero
  double scale_ = 0.0;   // xi0 * eta^2
  std::shared_ptr<const CubicSpline> smooth_pv_;  // g(x), see .cpp

  double f_reduced(double x) const;
  double g_subtracted(double x) const;  // excision+Richardson integral
};

}  // namespace bicdyn
