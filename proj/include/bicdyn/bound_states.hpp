#pragma once

#include <vector>

#include "bicdyn/model.hpp"
#include "bicdyn/self_energy.hpp"

namespace bicdyn {

enum class BoundStateKind { BIC, BOC_BELOW, BOC_ABOVE };

// Discrete eigenstate of the coupled system: a real pole of the resolvent
// at omega_b with weight residue_z = 1/(1 - Sigma'(omega_b)).
struct BoundState {
  double omega_b;
  double residue_z;
  BoundStateKind kind;
};

// All real roots of  Omega - omega_c - Sigma(Omega) = 0, sorted by energy:
// at most one below and one above the band (Sigma is strictly monotone
// there), plus the in-band root at the coupling zero when the root equation
// is satisfied there (the resonant case). Roots closer to a band edge than
// ~1e-13 of the band width are numerically indistinguishable from the edge
// and are not reported; their residues are below double precision anyway.
// For eta = 0 the decoupled pole at omega_c carries the full weight.
std::vector<BoundState> find_bound_states(const ReservoirModel& m, const CavityModel& c);

// Branch-cut weight of the propagator,
//   D_c(omega) = J(omega) / { [omega - omega_c - Delta(omega)]^2 + J^2/4 },
// with Delta the principal-value self-energy.
struct DissipationSpectrum {
  std::vector<double> omega;
  std::vector<double> dc;
  double continuum_weight = 0.0;  // int D_c domega / 2pi
};

DissipationSpectrum dissipation_spectrum(const ReservoirModel& m, const CavityModel& c,
                                         const std::vector<double>& grid);

// int D_c domega / 2pi by adaptive quadrature with the in-band resonances
// located and used as split points.
double continuum_weight(const ReservoirModel& m, const CavityModel& c);

// Sum rule sum_j Z_j + int D_c/2pi; equals u(0) = 1 up to quadrature error.
double completeness_check(const ReservoirModel& m, const CavityModel& c);

// Zeros of omega - omega_c - Delta(omega) inside the band.
std::vector<double> resonance_positions(const ReservoirModel& m, const CavityModel& c,
                                        const SelfEnergy& sigma);

}  // namespace bicdyn
