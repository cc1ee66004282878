#include "bicdyn/bound_states.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bicdyn/quadrature.hpp"
#include "bicdyn/spectral.hpp"

namespace bicdyn {

namespace {

// Minimal distance from a band edge at which an outside-band root is still
// numerically distinguishable from the edge itself.
constexpr double kEdgeOffsetFactor = 1e-13;

// Brent root finder on a bracketing interval [a, b] with f(a) f(b) < 0.
template <class F>
double brent(F&& f, double a, double b, double fa, double fb, double xtol) {
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int it = 0; it < 200; ++it) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * 1e-16 * std::abs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return b;
    if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
      d = m; e = m;
    } else {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc;
        const double r = fb / fc;
        p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q; else p = -p;
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d; d = p / q;
      } else {
        d = m; e = m;
      }
    }
    a = b; fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0 ? tol : -tol);
    fb = f(b);
    if ((fb > 0) == (fc > 0)) { c = a; fc = fa; e = d = b - a; }
  }
  return b;
}

}  // namespace

std::vector<BoundState> find_bound_states(const ReservoirModel& m, const CavityModel& c) {
  m.validate();
  std::vector<BoundState> out;

  if (m.eta == 0.0) {
    // Decoupled limit: the full weight sits in a single pole at omega_c.
    BoundStateKind kind = BoundStateKind::BIC;
    if (c.omega_c <= m.band_lo()) kind = BoundStateKind::BOC_BELOW;
    else if (c.omega_c >= m.band_hi()) kind = BoundStateKind::BOC_ABOVE;
    out.push_back({c.omega_c, 1.0, kind});
    return out;
  }

  const SelfEnergy sigma(m);
  const double w4 = 4.0 * m.xi0;
  const double lo = m.band_lo();
  const double hi = m.band_hi();
  const double dmin = kEdgeOffsetFactor * w4;
  const double reach = 40.0 * m.xi0 * std::max(1.0, m.eta * m.eta);

  auto F = [&](double z) { return z - c.omega_c - sigma.outside(z); };

  // Below the band: F is strictly increasing (F' = 1 - Sigma' > 1), so a
  // single sign check at each end decides existence and brackets the root.
  {
    const double a = std::min(lo - reach, c.omega_c - reach);
    const double b = lo - dmin;
    const double fa = F(a), fb = F(b);
    if (fa < 0.0 && fb > 0.0) {
      const double z = brent(F, a, b, fa, fb, 1e-15 * w4);
      const double zres = 1.0 / (1.0 - sigma.outside_derivative(z));
      out.push_back({z, zres, BoundStateKind::BOC_BELOW});
    }
  }
  // Above the band.
  {
    const double a = hi + dmin;
    const double b = std::max(hi + reach, c.omega_c + reach);
    const double fa = F(a), fb = F(b);
    if (fa < 0.0 && fb > 0.0) {
      const double z = brent(F, a, b, fa, fb, 1e-15 * w4);
      const double zres = 1.0 / (1.0 - sigma.outside_derivative(z));
      out.push_back({z, zres, BoundStateKind::BOC_ABOVE});
    }
  }
  // Bound state in the continuum: the root equation can only be satisfied
  // inside the band at the coupling zero, where J vanishes.
  if (m.coupling_zero_in_band()) {
    const double wb = m.coupling_zero();
    const double resid = wb - c.omega_c - sigma.principal_value_exact(wb);
    if (std::abs(resid) < 1e-8 * w4) {
      const double zres = 1.0 / (1.0 - sigma.derivative_at_coupling_zero());
      out.push_back({wb, zres, BoundStateKind::BIC});
    }
  }

  std::sort(out.begin(), out.end(),
            [](const BoundState& a, const BoundState& b) { return a.omega_b < b.omega_b; });
  return out;
}

std::vector<double> resonance_positions(const ReservoirModel& m, const CavityModel& c,
                                        const SelfEnergy& sigma) {
  // Zeros of r(w) = w - omega_c - Delta(w) inside the band; r runs from
  // +inf at the lower edge to -inf at the upper edge (the log term of the
  // principal value dominates), so a sign-change scan catches them all.
  std::vector<double> zeros;
  if (m.eta == 0.0) {
    if (m.in_band(c.omega_c)) zeros.push_back(c.omega_c);
    return zeros;
  }
  const int n = 4000;
  const double lo = m.band_lo(), hi = m.band_hi();
  const double inset = 1e-9 * m.band_width();
  auto r = [&](double w) { return w - c.omega_c - sigma.principal_value(w); };
  double wprev = lo + inset;
  double rprev = r(wprev);
  for (int i = 1; i <= n; ++i) {
    const double w = lo + inset + (hi - lo - 2 * inset) * double(i) / n;
    const double rw = r(w);
    if ((rprev > 0.0) != (rw > 0.0)) {
      zeros.push_back(brent(r, wprev, w, rprev, rw, 1e-13 * m.band_width()));
    }
    wprev = w;
    rprev = rw;
  }
  return zeros;
}

DissipationSpectrum dissipation_spectrum(const ReservoirModel& m, const CavityModel& c,
                                         const std::vector<double>& grid) {
  const SelfEnergy sigma(m);
  DissipationSpectrum ds;
  ds.omega = grid;
  ds.dc.resize(grid.size());
  for (size_t i = 0; i < grid.size(); ++i) {
    const double w = grid[i];
    if (!m.in_band(w)) { ds.dc[i] = 0.0; continue; }
    const double J = spectral_density(w, m);
    if (J == 0.0) { ds.dc[i] = 0.0; continue; }
    const double r = w - c.omega_c - sigma.principal_value(w);
    ds.dc[i] = J / (r * r + 0.25 * J * J);
  }
  ds.continuum_weight = continuum_weight(m, c);
  return ds;
}

double continuum_weight(const ReservoirModel& m, const CavityModel& c) {
  if (m.eta == 0.0) return 0.0;
  const SelfEnergy sigma(m);
  auto dc = [&](double w) {
    const double J = spectral_density(w, m);
    if (J == 0.0) return 0.0;
    const double r = w - c.omega_c - sigma.principal_value(w);
    return J / (r * r + 0.25 * J * J);
  };
  const double lo = m.band_lo(), hi = m.band_hi();
  const double inset = 1e-12 * m.band_width();
  // Split at the center, the coupling zero and any in-band resonance; the
  // resonance peak width is J/2, so flank points guide the refinement.
  std::vector<double> splits{m.omega0, m.coupling_zero()};
  for (double z : resonance_positions(m, c, sigma)) {
    const double width = std::max(0.5 * spectral_density(z, m), 1e-7 * m.band_width());
    splits.push_back(z);
    for (int k : {1, 2, 8, 32}) {
      splits.push_back(z - k * width);
      splits.push_back(z + k * width);
    }
  }
  const double val = adaptive_gk_split(dc, lo + inset, hi - inset, splits, {1e-10, 1e-8, 58});
  return val / (2.0 * M_PI);
}

double completeness_check(const ReservoirModel& m, const CavityModel& c) {
  double sum = 0.0;
  for (const BoundState& b : find_bound_states(m, c)) sum += b.residue_z;
  return sum + continuum_weight(m, c);
}

}  // namespace bicdyn
