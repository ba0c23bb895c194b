// The quadratic metaplectic 2-cocycle sigma on SU(2,1) at every place of Q,
// evaluated on rational points.  The branch formulas reduce every Hilbert
// symbol to rational arguments, collected once per pair of group elements
// and then evaluated place by place.
#pragma once

#include <map>
#include <utility>
#include <vector>

#include "su21/group.hpp"

namespace su21 {

QuadNum X_of(const Mat3& g);

int u_of(const QuadNum& lambda, const QuadNum& mu, const Place& v);

int sigma_torus(const QuadNum& lambda, const QuadNum& mu, const Place& v);

// Rational Hilbert-symbol arguments whose product over a place gives
// sigma(g1, g2) there; place-independent.
std::vector<std::pair<Rat, Rat>> sigma_pairs(const Mat3& g1, const Mat3& g2);

int sigma(const Mat3& g1, const Mat3& g2, const Place& v);

int commutator_torus(const QuadNum& lambda, const QuadNum& mu, long p);

// Values at the real place and at every prime in the support of the
// symbol arguments (plus 2 and the primes dividing d); all omitted places
// contribute +1 by the tame criterion.
std::map<Place, int> sigma_all_places(const Mat3& g1, const Mat3& g2);

}  // namespace su21
