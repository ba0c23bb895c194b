// The real place: the domain H_C, the group action by fractional linear
// transformations, the branch-specified square-root section phi, the real
// 2-cocycle recovered from phi, and the weight-1/2 multiplier system.
#pragma once

#include <complex>

#include "su21/group.hpp"

namespace su21 {

using Complex = std::complex<double>;

// A point of H_C: |tau2|^2 + 2 Re(tau1) < 0.
struct HPoint {
  Complex t1, t2;
};

// The block form g = (A B; C D) of a group element embedded into C.
struct BlockData {
  Complex a11, a12, a21, a22;  // A
  Complex b1, b2;              // B
  Complex c1, c2;              // C
  Complex d;                   // D
};

// theta -> i*sqrt(d) with sqrt(d) > 0.
Complex embed(const QuadNum& x);

BlockData blocks(const Mat3& g);

// Strict domain membership, with a margin for conservative sampling:
// |tau2|^2 + 2 Re(tau1) <= -margin.
bool in_domain(const HPoint& tau, double margin = 0.0);

// A seeded sample point of H_C, bounded away from the boundary.
HPoint sample_tau(std::uint64_t seed);

// g(tau) = (A tau + B) / (C tau + D).
HPoint act(const Mat3& g, const HPoint& tau);

// The scalar C tau + D.
Complex denom(const Mat3& g, const HPoint& tau);

// The branch-specified square root of denom(g, tau):
//   phi_{h(lambda) n}(tau) = conj(lambda)^{-1/2}, arg in (-pi/2, pi/2];
//   arg(phi_w(tau)) in (-pi/2, 0);
//   phi_{n2 w h n1}(tau) = phi_w((h n1)(tau)) * phi_{h n1}(tau).
Complex phi(const Mat3& g, const HPoint& tau);

// phi_g(g'(tau)) phi_{g'}(tau) / phi_{g g'}(tau), rounded to {+1, -1};
// a quotient farther than 1e-6 from both signs is an error.
int sigma_infty_via_phi(const Mat3& g, const Mat3& gp, const HPoint& tau);

// j(gamma, tau) = kappa(gamma) * phi_gamma(tau) for gamma in the global
// congruence group; requires 2 split in the field.
Complex multiplier_j(const Mat3& gamma, const HPoint& tau);

}  // namespace su21
