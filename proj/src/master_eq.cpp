#include "bicdyn/master_eq.hpp"

#include <cmath>
#include <stdexcept>

namespace bicdyn {

namespace {

// log(n!) via lgamma; exact to double precision for all n used here.
double log_factorial(int n) { return std::lgamma(double(n) + 1.0); }

// z^p for integer p >= 0; well-defined (== 1) at z = 0, p = 0 where the
// complex std::pow would produce NaN.
std::complex<double> cpow_int(std::complex<double> z, int p) {
  std::complex<double> r{1.0, 0.0};
  for (int i = 0; i < p; ++i) r *= z;
  return r;
}

}  // namespace

CoefficientSeries coefficients(const Trajectory& traj) {
  const size_t N = traj.t.size();
  if (N < 3) throw std::invalid_argument("coefficients: trajectory too short");
  if (traj.envelope.size() != N)
    throw std::invalid_argument("coefficients: trajectory lacks the envelope series");
  const double dt = traj.dt;
  const double wtc = traj.cavity.omega_c - traj.model.omega0;

  CoefficientSeries cs;
  cs.t = traj.t;
  cs.omega_c_ren.resize(N);
  cs.kappa.resize(N);
  cs.kappa_tilde.resize(N);
  cs.singular.assign(N, 0);

  const bool has_v = traj.v.size() == N;
  for (size_t n = 0; n < N; ++n) {
    const std::complex<double> w = traj.envelope[n];
    if (std::abs(w) < 1e-12) {
      cs.singular[n] = 1;
      cs.omega_c_ren[n] = 0.0;
      cs.kappa[n] = 0.0;
      cs.kappa_tilde[n] = 0.0;
      continue;
    }
    std::complex<double> wdot;
    double vdot = 0.0;
    if (n == 0) {
      wdot = (-3.0 * traj.envelope[0] + 4.0 * traj.envelope[1] - traj.envelope[2]) / (2.0 * dt);
      if (has_v) vdot = (-3.0 * traj.v[0] + 4.0 * traj.v[1] - traj.v[2]) / (2.0 * dt);
    } else if (n == N - 1) {
      wdot = (3.0 * traj.envelope[n] - 4.0 * traj.envelope[n - 1] + traj.envelope[n - 2]) /
             (2.0 * dt);
      if (has_v) vdot = (3.0 * traj.v[n] - 4.0 * traj.v[n - 1] + traj.v[n - 2]) / (2.0 * dt);
    } else {
      wdot = (traj.envelope[n + 1] - traj.envelope[n - 1]) / (2.0 * dt);
      if (has_v) vdot = (traj.v[n + 1] - traj.v[n - 1]) / (2.0 * dt);
    }
    // du/dt u^{-1} = -i (omega_c - omega0) + dw/dt w^{-1}   (omega0 frame)
    const std::complex<double> ratio = wdot / w;
    const double kappa = -ratio.real();
    cs.omega_c_ren[n] = traj.model.omega0 + wtc - ratio.imag();
    cs.kappa[n] = kappa;
    cs.kappa_tilde[n] = has_v ? vdot + 2.0 * traj.v[n] * kappa : 0.0;
  }
  return cs;
}

FockDensityMatrix::FockDensityMatrix(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("FockDensityMatrix: dim must be >= 1");
  elems_.assign(size_t(dim) * dim, {0.0, 0.0});
}

double FockDensityMatrix::trace_real() const {
  double tr = 0.0;
  for (int n = 0; n < dim_; ++n) tr += at(n, n).real();
  return tr;
}

double FockDensityMatrix::hermiticity_defect() const {
  double d = 0.0;
  for (int m = 0; m < dim_; ++m)
    for (int n = 0; n <= m; ++n)
      d = std::max(d, std::abs(at(m, n) - std::conj(at(n, m))));
  return d;
}

double FockDensityMatrix::min_diagonal() const {
  double mn = at(0, 0).real();
  for (int n = 1; n < dim_; ++n) mn = std::min(mn, at(n, n).real());
  return mn;
}

FockDensityMatrix FockDensityMatrix::embedded(int new_dim) const {
  if (new_dim < dim_) throw std::invalid_argument("embedded: new_dim must be >= dim");
  FockDensityMatrix out(new_dim);
  for (int m = 0; m < dim_; ++m)
    for (int n = 0; n < dim_; ++n) out.at(m, n) = at(m, n);
  return out;
}

FockDensityMatrix FockDensityMatrix::fock(int dim, int n) {
  if (n < 0 || n >= dim) throw std::invalid_argument("fock: level outside truncation");
  FockDensityMatrix out(dim);
  out.at(n, n) = 1.0;
  return out;
}

FockDensityMatrix FockDensityMatrix::pure(int dim, const std::vector<std::complex<double>>& amps) {
  if (int(amps.size()) > dim) throw std::invalid_argument("pure: amplitude vector too long");
  FockDensityMatrix out(dim);
  for (size_t m = 0; m < amps.size(); ++m)
    for (size_t n = 0; n < amps.size(); ++n)
      out.at(int(m), int(n)) = amps[m] * std::conj(amps[n]);
  return out;
}

FockDensityMatrix FockDensityMatrix::thermal(int dim, double mean) {
  if (mean < 0.0) throw std::invalid_argument("thermal: mean must be >= 0");
  FockDensityMatrix out(dim);
  if (mean == 0.0) {
    out.at(0, 0) = 1.0;
    return out;
  }
  for (int n = 0; n < dim; ++n)
    out.at(n, n) = std::pow(mean / (1.0 + mean), double(n)) / (1.0 + mean);
  return out;
}

double FockDensityMatrix::fidelity(const std::vector<std::complex<double>>& amps) const {
  std::complex<double> f = 0.0;
  const int L = std::min<int>(int(amps.size()), dim_);
  for (int m = 0; m < L; ++m)
    for (int n = 0; n < L; ++n) f += std::conj(amps[m]) * at(m, n) * amps[n];
  return f.real();
}

EvolveResult evolve_density_matrix(const FockDensityMatrix& rho0, std::complex<double> u,
                                   double v, const EvolveOptions& opts) {
  if (std::norm(u) > 1.0 + 1e-9)
    throw std::invalid_argument("evolve_density_matrix: |u|^2 exceeds 1");
  if (v < 0.0) throw std::invalid_argument("evolve_density_matrix: v must be >= 0");
  const int D = rho0.dim();
  FockDensityMatrix rho(D);

  // Thermal-form core rho~(v): diagonal v^q / (1+v)^{q+1}.
  std::vector<double> core(D);
  for (int q = 0; q < D; ++q)
    core[q] = (v == 0.0) ? (q == 0 ? 1.0 : 0.0)
                         : std::exp(double(q) * std::log(v / (1.0 + v)) - std::log1p(v));

  // Scalar in the raising operators: u/(1+v); d_k = (1 - |u|^2/(1+v))^k.
  const std::complex<double> uu = u / (1.0 + v);
  const double dbase = 1.0 - std::norm(u) / (1.0 + v);

  // sqrt((q+p)! / q!) ladder factors, indexed [p][q].
  std::vector<std::vector<double>> ladder(D);
  for (int p = 0; p < D; ++p) {
    ladder[p].resize(D - p);
    for (int q = 0; q + p < D; ++q)
      ladder[p][q] = std::exp(0.5 * (log_factorial(q + p) - log_factorial(q)));
  }

  for (int m = 0; m < D; ++m) {
    for (int n = 0; n < D; ++n) {
      const std::complex<double> cmn = rho0.at(m, n);
      if (cmn == std::complex<double>(0.0, 0.0)) continue;
      const int kmax = std::min(m, n);
      for (int k = 0; k <= kmax; ++k) {
        const double dk = (k == 0) ? 1.0 : std::pow(dbase, double(k));
        if (dk == 0.0) break;
        const int pm = m - k;
        const int pn = n - k;
        // sqrt(m!)/((m-k)! sqrt(k!)) and the n-side mirror
        const double am =
            std::exp(0.5 * log_factorial(m) - log_factorial(pm) - 0.5 * log_factorial(k));
        const double an =
            std::exp(0.5 * log_factorial(n) - log_factorial(pn) - 0.5 * log_factorial(k));
        const std::complex<double> pref =
            cmn * dk * am * an * cpow_int(uu, pm) * std::conj(cpow_int(uu, pn));
        for (int q = 0; q + pm < D && q + pn < D; ++q) {
          rho.at(q + pm, q + pn) += pref * core[q] * ladder[pm][q] * ladder[pn][q];
        }
      }
    }
  }

  const double leakage = 1.0 - rho.trace_real();
  if (leakage > opts.max_leakage && !opts.allow_leakage)
    throw std::runtime_error(
        "evolve_density_matrix: truncation leakage " + std::to_string(leakage) +
        " exceeds tolerance; raise the truncation dimension (embedded())");
  return {std::move(rho), leakage};
}

std::vector<char> trapping_condition(const Trajectory& traj, double tol) {
  const size_t N = traj.t.size();
  std::vector<char> out(N, 0);
  for (size_t n = 0; n < N; ++n) {
    const double vn = n < traj.v.size() ? traj.v[n] : 0.0;
    out[n] = (std::abs(traj.u[n] - 1.0) < tol && vn < tol) ? 1 : 0;
  }
  return out;
}

}  // namespace bicdyn
