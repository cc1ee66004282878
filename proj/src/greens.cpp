#include "bicdyn/greens.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bicdyn/quadrature.hpp"
#include "bicdyn/spectral.hpp"

namespace bicdyn {

namespace {

constexpr std::complex<double> kI(0.0, 1.0);

// J(omega)/2pi sampled on an ascending frequency grid.
std::vector<double> sample_spectral(const ReservoirModel& m, const std::vector<double>& grid) {
  std::vector<double> J(grid.size());
  for (size_t i = 0; i < grid.size(); ++i)
    J[i] = spectral_density(grid[i], m) / (2.0 * M_PI);
  return J;
}

// Cavity-frame kernel samples K_n = int domega/2pi J(omega) e^{-i(omega-wc) n dt}
// for n = 0..nsteps, swept with per-node phase rotators.
std::vector<std::complex<double>> cavity_kernel(const ReservoirModel& m, double omega_c,
                                                double dt, int nsteps, int omega_half) {
  const std::vector<double> grid = band_frequency_grid(m, omega_half);
  const std::vector<double> J = sample_spectral(m, grid);
  const size_t M = grid.size();
  std::vector<double> nu(M);
  for (size_t j = 0; j < M; ++j) nu[j] = grid[j] - omega_c;
  std::vector<std::complex<double>> rot(M), E(M, {1.0, 0.0});
  for (size_t j = 0; j < M; ++j) rot[j] = std::polar(1.0, -nu[j] * dt);

  std::vector<std::complex<double>> K(nsteps + 1);
  for (int n = 0; n <= nsteps; ++n) {
    std::complex<double> acc = 0.0;
    const double s = n * dt;
    for (size_t j = 0; j + 1 < M; ++j)
      acc += filon_panel_phased(nu[j], nu[j + 1], J[j], J[j + 1], s, E[j], E[j + 1]);
    K[n] = acc;
    if ((n & 1023) == 1023) {
      const double sn = (n + 1) * dt;  // resync rotators against drift
      for (size_t j = 0; j < M; ++j) E[j] = std::polar(1.0, -nu[j] * sn);
    } else {
      for (size_t j = 0; j < M; ++j) E[j] *= rot[j];
    }
  }
  return K;
}

struct VolterraResult {
  std::vector<std::complex<double>> w;
  double max_abs = 0.0;
};

// Trapezoidal convolution quadrature with one predictor-corrector pass.
// The corrector's convolution is reused for the next step by patching in the
// final w value (they differ only in the leading 0.5*K0 term).
VolterraResult volterra_march(const std::vector<std::complex<double>>& K, double dt, int N) {
  VolterraResult r;
  r.w.assign(N + 1, {0.0, 0.0});
  r.w[0] = 1.0;
  r.max_abs = 1.0;
  std::complex<double> conv = 0.0;  // trapezoid convolution at t_n
  const std::complex<double> K0 = K[0];
  for (int n = 0; n < N; ++n) {
    const std::complex<double> w_pred = r.w[n] - dt * conv;
    std::complex<double> acc = 0.5 * K[n + 1] * r.w[0];
    for (int j = 1; j <= n; ++j) acc += K[j] * r.w[n + 1 - j];
    acc += 0.5 * K0 * w_pred;
    std::complex<double> conv_next = dt * acc;
    r.w[n + 1] = r.w[n] - 0.5 * dt * (conv + conv_next);
    conv_next += dt * 0.5 * K0 * (r.w[n + 1] - w_pred);
    conv = conv_next;
    r.max_abs = std::max(r.max_abs, std::abs(r.w[n + 1]));
  }
  return r;
}

}  // namespace

std::vector<double> band_frequency_grid(const ReservoirModel& m, int omega_half,
                                        const CavityModel* refine_at, int refine_points) {
  std::vector<double> grid = cosine_band_grid(m.band_lo(), m.band_hi(), omega_half);
  if (m.xi00 != 0.0) {
    // J is log-divergent at the band center for a shifted coupling zero;
    // sample just off the singular node instead.
    grid[omega_half] += 1e-9 * m.band_width();
  }
  if (refine_at && refine_points > 1 && m.in_band(refine_at->omega_c) && m.eta > 0.0) {
    const double Jc = spectral_density(refine_at->omega_c, m);
    const double halfwin =
        std::min(std::max(40.0 * 0.5 * Jc, 0.02 * m.half_width()), m.half_width());
    const double a = std::max(refine_at->omega_c - halfwin, m.band_lo() + 1e-12 * m.band_width());
    const double b = std::min(refine_at->omega_c + halfwin, m.band_hi() - 1e-12 * m.band_width());
    std::vector<double> extra(refine_points);
    for (int i = 0; i < refine_points; ++i)
      extra[i] = a + (b - a) * double(i) / double(refine_points - 1);
    grid = merge_grids(std::move(grid), extra);
  }
  return grid;
}

std::complex<double> memory_kernel(double tau, const ReservoirModel& m, int omega_half) {
  if (tau < 0.0) throw std::invalid_argument("memory_kernel: tau must be >= 0");
  if (m.eta == 0.0) return {0.0, 0.0};
  const std::vector<double> grid = band_frequency_grid(m, omega_half);
  const std::vector<double> J = sample_spectral(m, grid);
  std::complex<double> acc = 0.0;
  for (size_t j = 0; j + 1 < grid.size(); ++j)
    acc += filon_panel(grid[j], grid[j + 1], J[j], J[j + 1], tau);
  return acc;
}

Trajectory solve_u(const ReservoirModel& m, const CavityModel& c, double dt, double t_max,
                   const UOptions& opt) {
  m.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("solve_u: dt must be > 0");
  if (!(t_max >= dt)) throw std::invalid_argument("solve_u: t_max must be >= dt");

  const int N = int(std::llround(t_max / dt));
  const double wtc = c.omega_c - m.omega0;

  Trajectory traj;
  traj.model = m;
  traj.cavity = c;
  traj.bath = ThermalBath::zero();
  traj.dt = dt;
  if (dt > 0.02 / m.xi0) traj.accuracy_warning = true;

  std::vector<std::complex<double>> K;
  if (m.eta > 0.0)
    K = cavity_kernel(m, c.omega_c, dt, N, opt.omega_half);
  else
    K.assign(N + 1, {0.0, 0.0});

  VolterraResult fine = volterra_march(K, dt, N);

  if (opt.convergence_check && N >= 4) {
    // Step-halving contract checked by comparing against the 2*dt march,
    // whose kernel samples are every other entry of K.
    const int N2 = N / 2;
    std::vector<std::complex<double>> K2(N2 + 1);
    for (int n = 0; n <= N2; ++n) K2[n] = K[2 * n];
    VolterraResult coarse = volterra_march(K2, 2.0 * dt, N2);
    double dmax = 0.0;
    for (int n = 0; n <= N2; ++n)
      dmax = std::max(dmax, std::abs(std::abs(coarse.w[n]) - std::abs(fine.w[2 * n])));
    if (dmax > 1e-4) traj.accuracy_warning = true;
  }

  traj.t.resize(N + 1);
  traj.u.resize(N + 1);
  traj.envelope = std::move(fine.w);
  for (int n = 0; n <= N; ++n) {
    traj.t[n] = n * dt;
    traj.u[n] = std::polar(1.0, -wtc * traj.t[n]) * traj.envelope[n];
  }
  return traj;
}

void solve_v(Trajectory& traj, const ThermalBath& bath, const VOptions& opt) {
  const size_t N = traj.t.size();
  if (N == 0) throw std::invalid_argument("solve_v: empty trajectory");
  traj.bath = bath;
  traj.v.assign(N, 0.0);
  if (bath.zero_temperature) return;
  if (traj.model.band_lo() <= 0.0)
    throw std::invalid_argument(
        "solve_v: a finite-temperature bath needs positive band frequencies; set omega0");

  const ReservoirModel& m = traj.model;
  const std::vector<double> grid =
      band_frequency_grid(m, opt.omega_half, &traj.cavity, opt.refine_points);
  const size_t M = grid.size();
  const std::vector<double> wts = trapezoid_weights(grid);

  // J(omega) nbar(omega,T) / 2pi, folded with the quadrature weight.
  std::vector<double> weight(M);
  for (size_t j = 0; j < M; ++j)
    weight[j] = wts[j] * spectral_density(grid[j], m) * nbar(grid[j], bath) / (2.0 * M_PI);

  // Accumulators Y_j = int_0^t u(s) e^{i wtilde_j s} ds in the omega0 frame.
  std::vector<double> nu(M);
  for (size_t j = 0; j < M; ++j) nu[j] = grid[j] - m.omega0;
  std::vector<std::complex<double>> Y(M, {0.0, 0.0}), E(M, {1.0, 0.0}), rot(M);
  const double dt = traj.dt;
  for (size_t j = 0; j < M; ++j) rot[j] = std::polar(1.0, nu[j] * dt);

  for (size_t n = 0; n + 1 < N; ++n) {
    const double a = traj.t[n];
    const double b = traj.t[n + 1];
    const std::complex<double> ua = traj.u[n];
    const std::complex<double> ub = traj.u[n + 1];
    double vsum = 0.0;
    for (size_t j = 0; j < M; ++j) {
      const std::complex<double> Eb = E[j] * rot[j];
      // int_a^b u(s) e^{+i nu s} ds: filon with s-parameter -nu, phases E.
      Y[j] += filon_panel_phased(a, b, ua, ub, -nu[j], E[j], Eb);
      E[j] = Eb;
      vsum += weight[j] * std::norm(Y[j]);
    }
    traj.v[n + 1] = vsum;
    if ((n & 1023) == 1023) {
      for (size_t j = 0; j < M; ++j) E[j] = std::polar(1.0, nu[j] * b);
    }
  }
  // Clamp away quadrature noise at the -1e-9 level; genuine negatives would
  // violate the |W|^2 construction and should surface in tests.
  for (double& v : traj.v)
    if (v < 0.0 && v > -1e-9) v = 0.0;
}

std::vector<std::complex<double>> u_reconstruct(const ReservoirModel& m, const CavityModel& c,
                                                const std::vector<BoundState>& bound_states,
                                                const std::vector<double>& t_grid,
                                                int omega_half) {
  const size_t NT = t_grid.size();
  std::vector<std::complex<double>> out(NT, {0.0, 0.0});
  if (NT == 0) return out;

  std::vector<double> grid = band_frequency_grid(m, omega_half, &c, 1600);
  const size_t M = grid.size();
  std::vector<double> dc(M, 0.0);
  if (m.eta > 0.0) {
    const SelfEnergy sigma(m);
    for (size_t j = 0; j < M; ++j) {
      const double w = grid[j];
      if (!m.in_band(w)) continue;
      const double J = spectral_density(w, m);
      if (J == 0.0) continue;
      const double r = w - c.omega_c - sigma.principal_value(w);
      dc[j] = J / (r * r + 0.25 * J * J) / (2.0 * M_PI);
    }
  }
  std::vector<double> nu(M);
  for (size_t j = 0; j < M; ++j) nu[j] = grid[j] - m.omega0;

  // Pole phases and branch-cut rotators; a uniform t grid lets every node
  // advance by a fixed per-step rotation.
  bool uniform = NT >= 2;
  const double dt0 = NT >= 2 ? t_grid[1] - t_grid[0] : 0.0;
  for (size_t i = 2; i < NT && uniform; ++i)
    if (std::abs((t_grid[i] - t_grid[i - 1]) - dt0) > 1e-9 * std::max(1.0, std::abs(dt0)))
      uniform = false;

  std::vector<std::complex<double>> E(M), rot(M);
  for (size_t j = 0; j < M; ++j) E[j] = std::polar(1.0, -nu[j] * t_grid[0]);
  if (uniform)
    for (size_t j = 0; j < M; ++j) rot[j] = std::polar(1.0, -nu[j] * dt0);

  for (size_t i = 0; i < NT; ++i) {
    const double t = t_grid[i];
    std::complex<double> acc = 0.0;
    for (const BoundState& b : bound_states)
      acc += b.residue_z * std::polar(1.0, -(b.omega_b - m.omega0) * t);
    for (size_t j = 0; j + 1 < M; ++j)
      acc += filon_panel_phased(nu[j], nu[j + 1], dc[j], dc[j + 1], t, E[j], E[j + 1]);
    out[i] = acc;
    if (i + 1 < NT) {
      if (uniform && (i & 255) != 255) {
        for (size_t j = 0; j < M; ++j) E[j] *= rot[j];
      } else {
        for (size_t j = 0; j < M; ++j) E[j] = std::polar(1.0, -nu[j] * t_grid[i + 1]);
      }
    }
  }
  return out;
}

double steady_u_magnitude(const std::vector<BoundState>& bound_states, double t) {
  double s = 0.0;
  for (const BoundState& b : bound_states) s += b.residue_z * b.residue_z;
  for (size_t j = 0; j < bound_states.size(); ++j)
    for (size_t l = j + 1; l < bound_states.size(); ++l)
      s += 2.0 * bound_states[j].residue_z * bound_states[l].residue_z *
           std::cos((bound_states[j].omega_b - bound_states[l].omega_b) * t);
  return s > 0.0 ? std::sqrt(s) : 0.0;
}

double v_steady(const ReservoirModel& m, const CavityModel& c, const ThermalBath& bath,
                const std::vector<BoundState>& bound_states, double t, const VOptions& opt) {
  if (bath.zero_temperature) return 0.0;
  if (m.band_lo() <= 0.0)
    throw std::invalid_argument("v_steady: finite-temperature bath needs positive band");
  std::vector<double> grid = band_frequency_grid(m, opt.omega_half, &c, opt.refine_points);
  // Keep nodes off the pole positions; the integrand is continuous there
  // (J's zero cancels the in-band pole) but the naive quotient is 0/0.
  const double nudge = 2e-9 * m.band_width();
  for (double& w : grid)
    for (const BoundState& b : bound_states)
      if (std::abs(w - b.omega_b) < nudge) w += nudge;

  const std::vector<double> wts = trapezoid_weights(grid);
  const SelfEnergy sigma(m);
  double acc = 0.0;
  for (size_t j = 0; j < grid.size(); ++j) {
    const double w = grid[j];
    if (!m.in_band(w)) continue;
    const double J = spectral_density(w, m);
    if (J == 0.0) continue;
    const double r = w - c.omega_c - sigma.principal_value(w);
    const double dcv = J / (r * r + 0.25 * J * J);
    std::complex<double> A = 0.0;
    for (const BoundState& b : bound_states)
      A += b.residue_z * std::polar(1.0, -(b.omega_b - m.omega0) * t) / (w - b.omega_b);
    const double dbv = J * std::norm(A);
    acc += wts[j] * (dcv + dbv) * nbar(w, bath);
  }
  return acc / (2.0 * M_PI);
}

std::vector<double> photon_number(double n0, const Trajectory& traj) {
  if (n0 < 0.0) throw std::invalid_argument("photon_number: n0 must be >= 0");
  std::vector<double> n(traj.t.size());
  for (size_t i = 0; i < n.size(); ++i) {
    const double vi = i < traj.v.size() ? traj.v[i] : 0.0;
    n[i] = std::norm(traj.u[i]) * n0 + vi;
  }
  return n;
}

std::vector<double> abs_u(const Trajectory& traj) {
  std::vector<double> a(traj.u.size());
  for (size_t i = 0; i < a.size(); ++i) a[i] = std::abs(traj.u[i]);
  return a;
}

double steady_state_time(const std::vector<double>& t, const std::vector<double>& series,
                         double window, double tol) {
  const size_t n = t.size();
  if (n != series.size() || n < 3)
    throw std::invalid_argument("steady_state_time: bad series");
  auto wmax = [&](double a, double b) {
    double mx = 0.0;
    for (size_t i = 0; i < n; ++i)
      if (t[i] >= a && t[i] <= b) mx = std::max(mx, series[i]);
    return mx;
  };
  const double t_end = t.back();
  const double step = window / 4.0;
  for (double ts = 2.0 * window; ts <= t_end; ts += step) {
    const double m1 = wmax(ts - window, ts);
    const double m0 = wmax(ts - 2.0 * window, ts - window);
    if (std::abs(m1 - m0) < tol * std::max(1.0, m1)) return ts;
  }
  return t_end;
}

double window_max(const std::vector<double>& t, const std::vector<double>& series,
                  double t0, double horizon) {
  double mx = 0.0;
  for (size_t i = 0; i < t.size(); ++i)
    if (t[i] >= t0 && t[i] <= t0 + horizon) mx = std::max(mx, series[i]);
  return mx;
}

}  // namespace bicdyn
