#pragma once

namespace trihit {

// Complete elliptic integral of the second kind,
//   E(mu) = integral_0^{pi/2} sqrt(1 - mu^2 sin^2 phi) dphi,  0 <= mu <= 1,
// by the arithmetic-geometric mean iteration (machine precision).
double elliptic_E(double mu);

}  // namespace trihit
