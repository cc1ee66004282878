#include "bicdyn/model.hpp"

#include <cmath>

namespace bicdyn {

double nbar(double omega, const ThermalBath& bath) {
  if (bath.zero_temperature) return 0.0;
  const double x = omega / bath.temperature;
  if (x > 700.0) return 0.0;  // underflow guard
  return 1.0 / std::expm1(x);
}

}  // namespace bicdyn
