// Independent check of the quadratic Hilbert symbol: (a,b)_v = 1 iff the
// conic a*x^2 + b*y^2 = z^2 has a nontrivial solution over Q_v.  Solvability
// is decided directly (sign check at the real place, primitive solutions
// modulo p^3 at odd p and modulo 32 at p = 2), with no shared code path
// with hilbert_k.
#pragma once

#include "su21/localfield.hpp"

namespace su21 {

bool conic_solvable(const Rat& a, const Rat& b, const Place& v);

// Hilbert symbol recomputed through the conic criterion.
int hilbert_via_conic(const Rat& a, const Rat& b, const Place& v);

}  // namespace su21
