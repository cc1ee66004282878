#include "bicdyn/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace bicdyn {

namespace {

using cplx = std::complex<double>;

// Right-hand side of the amplitude equations on the padded frame.
// diag_grid = omega0 (or 0 in the interaction picture), diag_cav likewise
// for omega_c (or omega_c - omega0).
struct Deriv {
  int N;
  int W;  // padded width
  double xi0, xi, diag_grid, diag_cav;
  std::vector<size_t> coupled;  // padded indices of (+-1,0),(0,+-1)
  size_t origin;

  void operator()(const std::vector<cplx>& g, cplx ca, std::vector<cplx>& dg, cplx& dca) const {
    const cplx I(0.0, 1.0);
    const int side = 2 * N + 1;
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int row = 0; row < side; ++row) {
      const size_t base = size_t(row + 1) * W + 1;
      for (int col = 0; col < side; ++col) {
        const size_t i = base + col;
        const cplx nb = g[i - 1] + g[i + 1] + g[i - W] + g[i + W];
        dg[i] = -I * (diag_grid * g[i]) + I * (xi0 * nb);
      }
    }
    cplx ring = 0.0;
    for (size_t i : coupled) {
      dg[i] -= I * (xi * ca);
      ring += g[i];
    }
    dca = -I * (diag_cav * ca) - I * (xi * ring);
  }
};

// tmp = y + a * k over the whole padded frame (ghost cells stay zero since
// the derivative never writes them).
void axpy(std::vector<cplx>& tmp, const std::vector<cplx>& y, const std::vector<cplx>& k,
          double a, size_t total) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long i = 0; i < (long long)total; ++i) tmp[i] = y[i] + a * k[i];
}

}  // namespace

double LatticeState::grid_population() const {
  double s = 0.0;
  for (const auto& c : grid) s += std::norm(c);
  return s;
}

double LatticeState::norm() const { return std::norm(c_a) + grid_population(); }

double LatticeState::boundary_ring_norm() const {
  double s = 0.0;
  const int N = half_size;
  for (int x = -N; x <= N; ++x) s += std::norm(site(x, -N)) + std::norm(site(x, N));
  for (int y = -N + 1; y <= N - 1; ++y) s += std::norm(site(-N, y)) + std::norm(site(N, y));
  return s;
}

double reflection_horizon(int N, const ReservoirModel& m) {
  return double(N - 2) / (4.0 * m.xi0);
}

LatticeRun run_lattice(const ReservoirModel& m, const CavityModel& c, int N, double t_max,
                       const LatticeOptions& opt) {
  m.validate();
  if (N < 1) throw std::invalid_argument("run_lattice: N must be >= 1");
  if (!(opt.dt > 0.0)) throw std::invalid_argument("run_lattice: dt must be > 0");
  if (opt.dt > 0.05 / m.xi0)
    throw std::invalid_argument("run_lattice: dt exceeds the RK4 stability bound 0.05/xi0");

  const int W = 2 * N + 3;
  const size_t total = size_t(W) * W;
  const int steps = int(std::llround(t_max / opt.dt));
  const double dt = opt.dt;

  Deriv deriv;
  deriv.N = N;
  deriv.W = W;
  deriv.xi0 = m.xi0;
  deriv.xi = m.eta * m.xi0;
  deriv.diag_grid = opt.interaction_picture ? 0.0 : m.omega0;
  deriv.diag_cav = opt.interaction_picture ? (c.omega_c - m.omega0) : c.omega_c;
  LatticeState state;
  state.half_size = N;
  state.grid.assign(total, cplx{0.0, 0.0});
  deriv.origin = state.index(0, 0);
  deriv.coupled = {state.index(1, 0), state.index(-1, 0), state.index(0, 1), state.index(0, -1)};

  LatticeRun run;
  run.sites.clear();
  const int R = std::min(opt.site_radius, N);
  for (int y = -R; y <= R; ++y)
    for (int x = -R; x <= R; ++x) run.sites.emplace_back(x, y);
  run.site_series.resize(run.sites.size());

  if (opt.snapshot_stride > 0) {
    const size_t count = size_t(steps / (opt.sample_stride * opt.snapshot_stride)) + 1;
    if (count * total * sizeof(cplx) > opt.snapshot_budget)
      throw std::invalid_argument(
          "run_lattice: snapshot storage over budget; raise snapshot_stride");
  }

  std::vector<cplx> k1(total), k2(total), k3(total), k4(total), tmp(total);
  cplx ka1, ka2, ka3, ka4;

  auto record = [&](int sample_idx) {
    run.t.push_back(state.time);
    run.c_a.push_back(state.c_a);
    run.grid_population.push_back(state.grid_population());
    run.norm.push_back(std::norm(state.c_a) + run.grid_population.back());
    run.boundary_ring.push_back(state.boundary_ring_norm());
    for (size_t s = 0; s < run.sites.size(); ++s)
      run.site_series[s].push_back(state.site(run.sites[s].first, run.sites[s].second));
    if (opt.snapshot_stride > 0 && sample_idx % opt.snapshot_stride == 0) {
      run.snapshot_times.push_back(state.time);
      run.snapshots.push_back(state.grid);
    }
  };

  record(0);
  int sample_idx = 0;
  for (int n = 0; n < steps; ++n) {
    auto& y = state.grid;
    const cplx ca = state.c_a;

    deriv(y, ca, k1, ka1);
    axpy(tmp, y, k1, 0.5 * dt, total);
    deriv(tmp, ca + 0.5 * dt * ka1, k2, ka2);
    axpy(tmp, y, k2, 0.5 * dt, total);
    deriv(tmp, ca + 0.5 * dt * ka2, k3, ka3);
    axpy(tmp, y, k3, dt, total);
    deriv(tmp, ca + dt * ka3, k4, ka4);

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long i = 0; i < (long long)total; ++i)
      y[i] += (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    state.c_a = ca + (dt / 6.0) * (ka1 + 2.0 * ka2 + 2.0 * ka3 + ka4);
    state.time = (n + 1) * dt;

    if ((n + 1) % opt.sample_stride == 0 || n + 1 == steps) {
      ++sample_idx;
      record(sample_idx);
    }
  }
  run.final_state = std::move(state);
  return run;
}

std::vector<double> site_series(const LatticeRun& run, int x, int y) {
  for (size_t s = 0; s < run.sites.size(); ++s) {
    if (run.sites[s].first == x && run.sites[s].second == y) {
      std::vector<double> out(run.site_series[s].size());
      for (size_t i = 0; i < out.size(); ++i) out[i] = std::abs(run.site_series[s][i]);
      return out;
    }
  }
  throw std::out_of_range("site_series: site was not tracked in this run");
}

}  // namespace bicdyn
