#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "bicdyn/model.hpp"

namespace bicdyn {

// Single-particle state of the target cavity plus a finite (2N+1)^2 array
// patch with open boundaries. Amplitudes are stored on a zero-padded frame
// so the nearest-neighbor stencil needs no bounds checks.
struct LatticeState {
  int half_size = 0;  // N
  std::complex<double> c_a{1.0, 0.0};
  std::vector<std::complex<double>> grid;  // (2N+3)^2 padded, ghost ring == 0
  double time = 0.0;

  int width() const { return 2 * half_size + 3; }
  size_t index(int x, int y) const {
    return size_t(y + half_size + 1) * width() + size_t(x + half_size + 1);
  }
  std::complex<double> site(int x, int y) const { return grid[index(x, y)]; }
  double grid_population() const;
  double norm() const;  // |c_a|^2 + grid population
  double boundary_ring_norm() const;
};

struct LatticeOptions {
  double dt = 0.01;
  bool interaction_picture = true;  // factor out the e^{-i omega0 t} rotation
  int sample_stride = 1;            // series recording stride
  int site_radius = 3;              // track all sites with |x|,|y| <= radius
  int snapshot_stride = 0;          // full-grid snapshots every k samples (0 = off)
  std::size_t snapshot_budget = size_t(256) << 20;  // bytes
};

struct LatticeRun {
  std::vector<double> t;
  std::vector<std::complex<double>> c_a;  // omega0-frame amplitude
  std::vector<double> grid_population;
  std::vector<double> norm;
  std::vector<double> boundary_ring;
  std::vector<std::pair<int, int>> sites;
  std::vector<std::vector<std::complex<double>>> site_series;  // [site][sample]
  std::vector<double> snapshot_times;
  std::vector<std::vector<std::complex<double>>> snapshots;  // padded frames
  LatticeState final_state;
};

// Conservative horizon before boundary echoes can reach the center:
// t_ref = (N - 2) / (4 xi0); comparisons with the infinite-array solution
// are valid only below it.
double reflection_horizon(int N, const ReservoirModel& m);

// Classical RK4 integration of the coupled amplitude equations
//   d c_a/dt = -i omega_c c_a - i xi sum_s c_s
//   d c_n/dt = -i omega0 c_n + i xi0 sum_s c_{n+s} - i xi c_a [n in s]
// with s the four nearest neighbors of the origin and open boundaries.
// Default initial condition: all excitation in the target cavity.
LatticeRun run_lattice(const ReservoirModel& m, const CavityModel& c, int N, double t_max,
                       const LatticeOptions& opt = {});

// |c(t)| series for the requested sites, extracted from a run that tracked
// them; throws if a site is outside the tracked radius or the grid.
std::vector<double> site_series(const LatticeRun& run, int x, int y);

}  // namespace bicdyn
