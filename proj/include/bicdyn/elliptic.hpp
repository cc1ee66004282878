#pragma once

namespace bicdyn {

// Complete elliptic integral of the first kind in the MODULUS convention:
//
//   K(x) = (1/2) * int_0^pi dalpha / sqrt(1 - x^2 cos^2(alpha)),  0 <= x < 1.
//
// The argument x is the modulus (it multiplies cos^2 directly), NOT the
// parameter m = x^2 used by some libraries. Evaluated by the
// arithmetic-geometric mean, K(x) = pi / (2 AGM(1, sqrt(1 - x^2))), which
// converges quadratically to full double precision.
// Throws std::domain_error for x >= 1 (K diverges) or x < 0.
double elliptic_K(double x);

// K(sqrt(1 - x^2)) for |x| <= 1, evaluated without forming sqrt(1 - x^2):
// the complementary modulus of sqrt(1-x^2) is |x| itself, so
// K(sqrt(1-x^2)) = pi / (2 AGM(1, |x|)). This is the combination entering
// the 2D density of states; it diverges logarithmically as x -> 0.
// Throws std::domain_error at x == 0.
double elliptic_K_complement(double x);

}  // namespace bicdyn
