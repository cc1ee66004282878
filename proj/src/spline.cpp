#include "bicdyn/spline.hpp"

#include <algorithm>
#include <stdexcept>

namespace bicdyn {

CubicSpline::CubicSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const size_t n = x_.size();
  if (n < 3 || y_.size() != n)
    throw std::invalid_argument("CubicSpline: need >= 3 matching nodes");
  for (size_t i = 1; i < n; ++i)
    if (!(x_[i] > x_[i - 1]))
      throw std::invalid_argument("CubicSpline: nodes must be strictly ascending");
  y2_.assign(n, 0.0);
  std::vector<double> u(n, 0.0);
  for (size_t i = 1; i + 1 < n; ++i) {
    const double sig = (x_[i] - x_[i - 1]) / (x_[i + 1] - x_[i - 1]);
    const double p = sig * y2_[i - 1] + 2.0;
    y2_[i] = (sig - 1.0) / p;
    u[i] = (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]) -
           (y_[i] - y_[i - 1]) / (x_[i] - x_[i - 1]);
    u[i] = (6.0 * u[i] / (x_[i + 1] - x_[i - 1]) - sig * u[i - 1]) / p;
  }
  for (size_t k = n - 1; k-- > 0;) y2_[k] = y2_[k] * y2_[k + 1] + u[k];
}

double CubicSpline::operator()(double x) const {
  if (x <= x_.front()) x = x_.front();
  if (x >= x_.back()) x = x_.back();
  const auto it = std::upper_bound(x_.begin(), x_.end(), x);
  size_t hi = size_t(it - x_.begin());
  if (hi == 0) hi = 1;
  if (hi >= x_.size()) hi = x_.size() - 1;
  const size_t lo = hi - 1;
  const double h = x_[hi] - x_[lo];
  const double a = (x_[hi] - x) / h;
  const double b = (x - x_[lo]) / h;
  return a * y_[lo] + b * y_[hi] +
         ((a * a * a - a) * y2_[lo] + (b * b * b - b) * y2_[hi]) * (h * h) / 6.0;
}

}  // namespace bicdyn
