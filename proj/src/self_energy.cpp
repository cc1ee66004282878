#include "bicdyn/self_energy.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "bicdyn/elliptic.hpp"
#include "bicdyn/quadrature.hpp"

namespace bicdyn {

namespace {

constexpr double kPrefactor = 8.0 / (M_PI * M_PI);
constexpr int kTableHalf = 900;  // 2*900+1 nodes for the smooth PV part

// Dimensionless coupling profile f(x) = K(sqrt(1-x^2)) (x - xstar)^2 on
// (-1, 1); continuous (== 0) at x = xstar and at x = 0 when xstar = 0.
double profile(double x, double xstar) {
  const double d = x - xstar;
  if (d == 0.0) return 0.0;
  if (x == 0.0) return 0.0;  // only reached when xstar != 0 never exactly, guard anyway
  return elliptic_K_complement(x) * d * d;
}

// Cache of the tabulated smooth PV part, keyed by the reduced coupling zero.
std::mutex g_cache_mutex;
std::map<long long, std::shared_ptr<const CubicSpline>> g_cache;

long long cache_key(double xstar) {
  return static_cast<long long>(std::llround(xstar * 1e12));
}

}  // namespace

double SelfEnergy::f_reduced(double x) const { return profile(x, xstar_); }

// Smooth part of the PV integral,
//   g(x) = int_{-1}^{1} [f(x') - f(x)] / (x - x') dx',
// by symmetric excision of [x-eps, x+eps] and Richardson extrapolation in
// eps (the excluded mass is -2 eps f'(x) + O(eps^3)).
double SelfEnergy::g_subtracted(double x) const {
  const double fx = f_reduced(x);
  auto integrand = [this, x, fx](double xp) { return (f_reduced(xp) - fx) / (x - xp); };
  const QuadOptions opt{1e-10, 1e-10, 54};
  auto excised = [&](double eps) {
    double acc = 0.0;
    if (x - eps > -1.0)
      acc += adaptive_gk_split(integrand, -1.0, x - eps, {0.0, xstar_}, opt);
    if (x + eps < 1.0)
      acc += adaptive_gk_split(integrand, x + eps, 1.0, {0.0, xstar_}, opt);
    return acc;
  };
  const double eps = 1e-4 * 2.0;  // 1e-4 of the reduced band width
  const double i1 = excised(eps);
  const double i2 = excised(2.0 * eps);
  return 2.0 * i1 - i2;
}

SelfEnergy::SelfEnergy(const ReservoirModel& m) : model_(m) {
  m.validate();
  scale_ = m.xi0 * m.eta * m.eta;
  xstar_ = (m.eta > 0.0) ? m.xi00 / (4.0 * m.eta * m.xi0) : 0.0;
  if (scale_ == 0.0) return;  // decoupled: Sigma == 0, no table needed

  const long long key = cache_key(xstar_);
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) {
      smooth_pv_ = it->second;
      return;
    }
  }
  // Build the table outside the lock; duplicated work on a race is harmless.
  std::vector<double> xs;
  xs.reserve(2 * kTableHalf + 1);
  for (int j = 0; j <= 2 * kTableHalf; ++j) {
    // cosine clustering toward -1, 0, +1 (matches the band grid)
    const double s = double(j) / double(2 * kTableHalf);
    double x;
    if (s <= 0.5) {
      x = -0.5 - 0.5 * std::cos(2.0 * M_PI * s);
    } else {
      x = 0.5 - 0.5 * std::cos(2.0 * M_PI * (s - 0.5));
    }
    xs.push_back(x);
  }
  xs.front() = -1.0;
  xs[kTableHalf] = 0.0;
  xs.back() = 1.0;
  std::vector<double> gs(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    double x = xs[i];
    // endpoints: g is finite there, but the excision window must stay in range
    if (x <= -1.0) x = -1.0 + 1e-9;
    if (x >= 1.0) x = 1.0 - 1e-9;
    gs[i] = g_subtracted(x);
  }
  auto spline = std::make_shared<const CubicSpline>(std::move(xs), std::move(gs));
  {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_cache.emplace(key, spline);
  }
  smooth_pv_ = spline;
}

double SelfEnergy::outside(double z) const {
  if (scale_ == 0.0) return 0.0;
  const double zeta = (z - model_.omega0) / (4.0 * model_.xi0);
  if (std::abs(std::abs(zeta) - 1.0) <= kEdgeTol)
    throw std::domain_error("SelfEnergy: z at a band edge");
  if (std::abs(zeta) < 1.0)
    throw std::domain_error("SelfEnergy::outside called with z inside the band");
  auto integrand = [this, zeta](double x) { return f_reduced(x) / (zeta - x); };
  const double val =
      adaptive_gk_split(integrand, -1.0, 1.0, {0.0, xstar_}, {1e-12, 1e-11, 58});
  return scale_ * kPrefactor * val;
}

double SelfEnergy::outside_derivative(double z) const {
  if (scale_ == 0.0) return 0.0;
  const double zeta = (z - model_.omega0) / (4.0 * model_.xi0);
  if (std::abs(std::abs(zeta) - 1.0) <= kEdgeTol)
    throw std::domain_error("SelfEnergy: z at a band edge");
  if (std::abs(zeta) < 1.0)
    throw std::domain_error("SelfEnergy::outside_derivative called inside the band");
  auto integrand = [this, zeta](double x) {
    const double d = zeta - x;
    return f_reduced(x) / (d * d);
  };
  const double val =
      adaptive_gk_split(integrand, -1.0, 1.0, {0.0, xstar_}, {1e-12, 1e-11, 58});
  // d zeta/dz = 1/(4 xi0)
  return -scale_ * kPrefactor * val / (4.0 * model_.xi0);
}

double SelfEnergy::principal_value(double omega) const {
  if (scale_ == 0.0) return 0.0;
  const double x = (omega - model_.omega0) / (4.0 * model_.xi0);
  if (std::abs(std::abs(x) - 1.0) <= kEdgeTol)
    throw std::domain_error("SelfEnergy: omega at a band edge");
  if (std::abs(x) > 1.0)
    throw std::domain_error("SelfEnergy::principal_value called outside the band");
  const double log_term = f_reduced(x) * std::log((1.0 + x) / (1.0 - x));
  return scale_ * kPrefactor * ((*smooth_pv_)(x) + log_term);
}

double SelfEnergy::principal_value_exact(double omega) const {
  if (scale_ == 0.0) return 0.0;
  const double x = (omega - model_.omega0) / (4.0 * model_.xi0);
  if (std::abs(std::abs(x) - 1.0) <= kEdgeTol)
    throw std::domain_error("SelfEnergy: omega at a band edge");
  if (std::abs(x) > 1.0)
    throw std::domain_error("SelfEnergy::principal_value_exact called outside the band");
  const double log_term = f_reduced(x) * std::log((1.0 + x) / (1.0 - x));
  return scale_ * kPrefactor * (g_subtracted(x) + log_term);
}

double SelfEnergy::derivative_at_coupling_zero() const {
  if (scale_ == 0.0) return 0.0;
  if (!model_.coupling_zero_in_band())
    throw std::domain_error("SelfEnergy: coupling zero lies outside the band");
  // The (x - xstar)^2 in f cancels the squared pole, leaving the bare
  // K(sqrt(1-x^2)) profile: log-singular at x = 0, split and mapped there.
  const double a = 0.5;
  auto baseK = [](double x) { return elliptic_K_complement(x); };
  const double outer = adaptive_gk(baseK, a, 1.0, {1e-12, 1e-12, 58}) +
                       adaptive_gk(baseK, -1.0, -a, {1e-12, 1e-12, 58});
  auto tip = [](double s) {
    const double x = std::exp(-s);
    return elliptic_K_complement(x) * x;
  };
  const double inner = 2.0 * adaptive_gk(tip, std::log(1.0 / a), 40.0, {1e-12, 1e-12, 58});
  return -scale_ * kPrefactor * (outer + inner) / (4.0 * model_.xi0);
}

double SelfEnergy::value(double z) const {
  if (scale_ == 0.0) return 0.0;
  const double x = (z - model_.omega0) / (4.0 * model_.xi0);
  if (std::abs(std::abs(x) - 1.0) <= kEdgeTol)
    throw std::domain_error("SelfEnergy: z at a band edge");
  return (std::abs(x) > 1.0) ? outside(z) : principal_value(z);
}

}  // namespace bicdyn
