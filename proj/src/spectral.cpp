#include "bicdyn/spectral.hpp"

#include <cmath>
#include <stdexcept>

#include "bicdyn/elliptic.hpp"
#include "bicdyn/quadrature.hpp"

namespace bicdyn {

double dispersion(double kx, double ky, const ReservoirModel& m) {
  return m.omega0 - 2.0 * m.xi0 * (std::cos(kx) + std::cos(ky));
}

std::complex<double> coupling_v(double kx, double ky, const ReservoirModel& m) {
  const double wk = dispersion(kx, ky, m);
  return {m.eta * (m.omega0 - wk) + m.xi00, 0.0};
}

double density_of_states(double omega, const ReservoirModel& m) {
  const double dw = (omega - m.omega0) / (4.0 * m.xi0);
  if (std::abs(dw) >= 1.0) return 0.0;
  if (dw == 0.0)
    throw std::domain_error("density_of_states: log-singular at the band center");
  return elliptic_K_complement(dw) / (2.0 * M_PI * M_PI * m.xi0);
}

double spectral_density(double omega, const ReservoirModel& m) {
  const double dw = (omega - m.omega0) / (4.0 * m.xi0);
  if (std::abs(dw) >= 1.0) return 0.0;
  // |V(omega)|^2 = (4 eta xi0 dw - xi00)^2; its zero cancels the K divergence.
  const double v = 4.0 * m.eta * m.xi0 * dw - m.xi00;
  if (v == 0.0) return 0.0;
  if (dw == 0.0) {
    // K diverges only like log; v != 0 here, so the point is genuinely
    // infinite only for xi00 = 0 (excluded above by v == 0).
    throw std::domain_error("spectral_density: band-center divergence with xi00 != 0 coupling");
  }
  return elliptic_K_complement(dw) * v * v / (M_PI * m.xi0);
}

SpectralCurve dos_brute_force(const ReservoirModel& m, int grid_size, int bins) {
  if (grid_size < 256) throw std::invalid_argument("dos_brute_force: grid_size must be >= 256");
  if (bins < 2) throw std::invalid_argument("dos_brute_force: bins must be >= 2");
  const double lo = m.band_lo();
  const double width = m.band_width();
  std::vector<double> counts(bins, 0.0);
  // One cosine table serves both k components.
  std::vector<double> ck(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    const double k = -M_PI + 2.0 * M_PI * (i + 0.5) / grid_size;
    ck[i] = std::cos(k);
  }
  for (int i = 0; i < grid_size; ++i) {
    const double base = m.omega0 - 2.0 * m.xi0 * ck[i];
    for (int j = 0; j < grid_size; ++j) {
      const double w = base - 2.0 * m.xi0 * ck[j];
      int b = int((w - lo) / width * bins);
      if (b < 0) b = 0;
      if (b >= bins) b = bins - 1;
      counts[b] += 1.0;
    }
  }
  const double bin_w = width / bins;
  const double norm = 1.0 / (double(grid_size) * double(grid_size) * bin_w);
  SpectralCurve curve;
  curve.omega.resize(bins);
  curve.values.resize(bins);
  for (int b = 0; b < bins; ++b) {
    curve.omega[b] = lo + (b + 0.5) * bin_w;
    curve.values[b] = counts[b] * norm;
  }
  return curve;
}

double dos_integral(const ReservoirModel& m) {
  // In the reduced variable x = (omega-omega0)/(4 xi0), the integral is
  // (2/pi^2) int_0^1 K(sqrt(1-x^2)) dx by symmetry. Split at x = a and map
  // the singular tip with x = e^{-s}, which turns the log divergence into a
  // smooth exponentially decaying integrand.
  const double a = 0.5;
  const double outer = adaptive_gk([](double x) { return elliptic_K_complement(x); }, a, 1.0,
                                   {1e-12, 1e-12, 60});
  const double s_max = 40.0;  // e^{-40} tail is below double precision
  const double inner = adaptive_gk(
      [](double s) {
        const double x = std::exp(-s);
        return elliptic_K_complement(x) * x;
      },
      std::log(1.0 / a), s_max, {1e-12, 1e-12, 60});
  return (2.0 / (M_PI * M_PI)) * (outer + inner) * 2.0;
}

double spectral_moment0(const ReservoirModel& m) {
  // M0 = int J domega / 2pi = (2 xi0/pi) int_{-1}^{1} J(x)/xi0-scale dx; just
  // integrate the physical J over the band. The integrand vanishes at the
  // coupling zero, so a split there keeps the quadrature honest.
  const double lo = m.band_lo();
  const double hi = m.band_hi();
  std::vector<double> splits{m.omega0};
  if (m.coupling_zero_in_band()) splits.push_back(m.coupling_zero());
  const double val = adaptive_gk_split(
      [&m](double w) { return spectral_density(w, m); }, lo, hi, splits, {1e-13, 1e-11, 60});
  return val / (2.0 * M_PI);
}

}  // namespace bicdyn
