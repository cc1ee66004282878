#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace bicdyn {

// Parameters of the 2D coupled-cavity reservoir. Energies are in whatever
// unit the caller chooses as long as they are consistent; the natural choice
// is xi0 = 1 with time measured in 1/xi0 (hbar = 1 throughout).
//
//   omega0 : frequency of the array cavities
//   xi0    : nearest-neighbor hopping inside the array (> 0)
//   eta    : dimensionless cavity-array coupling, eta = xi/xi0 (>= 0)
//   xi00   : optional direct coupling to the central array cavity (>= 0)
//
// The single-particle band spans [omega0 - 4 xi0, omega0 + 4 xi0].
struct ReservoirModel {
  double omega0 = 0.0;
  double xi0 = 1.0;
  double eta = 0.0;
  double xi00 = 0.0;

  double band_lo() const { return omega0 - 4.0 * xi0; }
  double band_hi() const { return omega0 + 4.0 * xi0; }
  double band_width() const { return 8.0 * xi0; }
  double half_width() const { return 4.0 * xi0; }

  bool in_band(double omega) const {
    return omega > band_lo() && omega < band_hi();
  }

  // Frequency at which the momentum-space coupling vanishes. With xi00 = 0
  // this is the band center; with xi00 > 0 the zero is shifted to
  // omega0 + xi00/eta (the constant offset cancels the band term there).
  double coupling_zero() const {
    if (eta <= 0.0) return omega0;
    return omega0 + xi00 / eta;
  }

  // The shifted zero stays inside the band iff |xi00/xi| < 4.
  bool coupling_zero_in_band() const {
    if (eta <= 0.0) return xi00 == 0.0;
    return std::abs(xi00 / (eta * xi0)) < 4.0;
  }

  void validate() const {
    if (!(xi0 > 0.0)) throw std::invalid_argument("ReservoirModel: xi0 must be > 0");
    if (!(eta >= 0.0)) throw std::invalid_argument("ReservoirModel: eta must be >= 0");
    if (!(xi00 >= 0.0)) throw std::invalid_argument("ReservoirModel: xi00 must be >= 0");
    if (xi00 > 0.0 && eta == 0.0)
      throw std::invalid_argument("ReservoirModel: xi00 > 0 requires eta > 0");
  }
};

enum class CavityRegion { Gap, InBand, Center };

// Target cavity, characterized by its bare frequency omega_c. The
// dimensionless detuning d = (omega_c - omega0)/(4 xi0) classifies the
// cavity relative to the reservoir band.
struct CavityModel {
  double omega_c = 0.0;

  double detuning(const ReservoirModel& m) const {
    return (omega_c - m.omega0) / (4.0 * m.xi0);
  }

  CavityRegion region(const ReservoirModel& m) const {
    const double d = detuning(m);
    if (d == 0.0) return CavityRegion::Center;
    if (std::abs(d) < 1.0) return CavityRegion::InBand;
    return CavityRegion::Gap;
  }

  static CavityModel from_detuning(const ReservoirModel& m, double d) {
    return CavityModel{m.omega0 + 4.0 * m.xi0 * d};
  }
};

// Initial reservoir state: vacuum (zero_temperature) or thermal at
// temperature T (k_B = 1, same energy unit as the model).
struct ThermalBath {
  double temperature = 0.0;
  bool zero_temperature = true;

  static ThermalBath zero() { return ThermalBath{0.0, true}; }
  static ThermalBath at(double T) {
    if (!(T > 0.0)) throw std::invalid_argument("ThermalBath: temperature must be > 0");
    return ThermalBath{T, false};
  }
};

// Bose-Einstein occupation 1/(exp(omega/T) - 1); zero for a vacuum bath.
double nbar(double omega, const ThermalBath& bath);

}  // namespace bicdyn
