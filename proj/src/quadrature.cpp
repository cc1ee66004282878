#include "bicdyn/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bicdyn {

namespace {

// 21-point Kronrod extension of 10-point Gauss-Legendre, nodes on [-1, 1].
// Values from the QUADPACK dqk21 tables.
constexpr double kXgk[11] = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000};
constexpr double kWgk[11] = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr double kWg[5] = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct PanelResult {
  double integral;
  double error;
};

PanelResult gk21(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double resk = kWgk[10] * f(c);
  double resg = 0.0;
  for (int j = 0; j < 10; ++j) {
    const double x = h * kXgk[j];
    const double fsum = f(c - x) + f(c + x);
    resk += kWgk[j] * fsum;
    if (j % 2 == 1) resg += kWg[j / 2] * fsum;
  }
  const double integral = resk * h;
  const double error = std::abs((resk - resg) * h);
  return {integral, error};
}

void adapt(const std::function<double(double)>& f, double a, double b, double tol,
           int depth, int max_depth, double& acc) {
  const PanelResult r = gk21(f, a, b);
  if (r.error <= tol || depth >= max_depth || (b - a) < 1e-15 * (std::abs(a) + std::abs(b))) {
    acc += r.integral;
    return;
  }
  const double c = 0.5 * (a + b);
  adapt(f, a, c, 0.5 * tol, depth + 1, max_depth, acc);
  adapt(f, c, b, 0.5 * tol, depth + 1, max_depth, acc);
}

}  // namespace

double adaptive_gk(const std::function<double(double)>& f, double a, double b,
                   const QuadOptions& opt) {
  if (a == b) return 0.0;
  const PanelResult first = gk21(f, a, b);
  const double tol = std::max(opt.abs_tol, opt.rel_tol * std::abs(first.integral));
  if (first.error <= tol) return first.integral;
  double acc = 0.0;
  const double c = 0.5 * (a + b);
  adapt(f, a, c, 0.5 * tol, 1, opt.max_depth, acc);
  adapt(f, c, b, 0.5 * tol, 1, opt.max_depth, acc);
  return acc;
}

double adaptive_gk_split(const std::function<double(double)>& f, double a, double b,
                         const std::vector<double>& split_points, const QuadOptions& opt) {
  std::vector<double> pts{a, b};
  for (double p : split_points)
    if (p > a && p < b) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  double acc = 0.0;
  for (size_t i = 0; i + 1 < pts.size(); ++i)
    acc += adaptive_gk(f, pts[i], pts[i + 1], opt);
  return acc;
}

void filon_moments(double a, double b, double s, std::complex<double> ea,
                   std::complex<double> eb, std::complex<double>& m0,
                   std::complex<double>& m1) {
  const double h = b - a;
  const double theta = s * h;
  const std::complex<double> I(0.0, 1.0);
  if (std::abs(theta) < 1e-3) {
    // Taylor branch relative to the left endpoint phase, u = (x-a)/h:
    // m0/h = int_0^1 e^{t u} du, m1/h^2 = int_0^1 u e^{t u} du with t = -i theta.
    const std::complex<double> t = -I * theta;
    m0 = h * ea * (1.0 + t * (0.5 + t * (1.0 / 6.0 + t * (1.0 / 24.0 + t / 120.0))));
    m1 = h * h * ea *
         (0.5 + t * (1.0 / 3.0 + t * (0.125 + t * (1.0 / 30.0 + t / 144.0))));
    return;
  }
  const std::complex<double> is = I * s;
  m0 = (ea - eb) / is;
  m1 = (-h * eb) / is + (ea - eb) / (is * is);
}

std::complex<double> filon_panel(double a, double b, double fa, double fb, double s) {
  const std::complex<double> I(0.0, 1.0);
  return filon_panel_phased(a, b, fa, fb, s, std::exp(-I * (s * a)), std::exp(-I * (s * b)));
}

std::vector<double> cosine_band_grid(double lo, double hi, int half) {
  if (half < 2) throw std::invalid_argument("cosine_band_grid: need half >= 2");
  const double mid = 0.5 * (lo + hi);
  std::vector<double> g;
  g.reserve(2 * half + 1);
  // Chebyshev-extrema map on each half-band clusters nodes at both panel
  // ends, i.e. at the band edges and at the center.
  for (int j = 0; j <= half; ++j)
    g.push_back(0.5 * (lo + mid) - 0.5 * (mid - lo) * std::cos(M_PI * j / double(half)));
  for (int j = 1; j <= half; ++j)
    g.push_back(0.5 * (mid + hi) - 0.5 * (hi - mid) * std::cos(M_PI * j / double(half)));
  g[0] = lo;
  g[half] = mid;
  g[2 * half] = hi;
  return g;
}

std::vector<double> merge_grids(std::vector<double> base, const std::vector<double>& extra) {
  base.insert(base.end(), extra.begin(), extra.end());
  std::sort(base.begin(), base.end());
  std::vector<double> out;
  out.reserve(base.size());
  const double span = base.empty() ? 1.0 : (base.back() - base.front());
  const double min_gap = 1e-12 * std::max(span, 1.0);
  for (double x : base) {
    if (out.empty() || x - out.back() > min_gap) out.push_back(x);
  }
  return out;
}

std::vector<double> trapezoid_weights(const std::vector<double>& x) {
  const size_t n = x.size();
  std::vector<double> w(n, 0.0);
  if (n < 2) return w;
  for (size_t i = 0; i + 1 < n; ++i) {
    const double h = 0.5 * (x[i + 1] - x[i]);
    w[i] += h;
    w[i + 1] += h;
  }
  return w;
}

}  // namespace bicdyn
