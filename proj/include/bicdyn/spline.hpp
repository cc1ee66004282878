#pragma once

#include <vector>

namespace bicdyn {

// Natural cubic spline through (x_i, y_i), x ascending. Evaluation clamps to
// the tabulated range.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  bool empty() const { return x_.empty(); }

 private:
  std::vector<double> x_, y_, y2_;
};

}  // namespace bicdyn
