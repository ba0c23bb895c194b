// Local data at each place of Q: prime classification in K = Q(theta),
// valuations, Hensel square roots, quadratic Hilbert symbols over Q_v and
// over K_p at odd places, and the quadratic Legendre (Jacobi) symbol.
#pragma once

#include <vector>

#include "su21/field.hpp"

namespace su21 {

enum class SplitType { Split, Inert, Ramified };

struct Place {
  bool infinite = false;
  Int p = 0;  // valid when finite

  static Place Real() { return Place{true, 0}; }
  static Place Finite(const Int& prime) { return Place{false, prime}; }
};

inline bool operator==(const Place& x, const Place& y) {
  return x.infinite == y.infinite && (x.infinite || x.p == y.p);
}
inline bool operator<(const Place& x, const Place& y) {
  if (x.infinite != y.infinite) return x.infinite;  // Real sorts first
  return x.p < y.p;
}

std::string place_to_string(const Place& v);

bool is_prime(const Int& p);

// Behaviour of p in the ring of integers of Q(theta), theta^2 = -d.
SplitType classify_prime(const Int& p, long d);

// Legendre symbol of the p-unit rational a at the odd prime p (+1/-1).
int legendre_unit(const Rat& a, const Int& p);

// r with r^2 = a mod p^M, the lift of the smallest non-negative square root
// mod p.  Requires p odd, v_p(a) = 0, a a residue mod p.
Int hensel_sqrt(const Rat& a, const Int& p, int M);

// Quadratic Hilbert symbol (a,b)_{Q_v,2}.  Real place: -1 iff a<0 and b<0;
// odd p: tame formula; p = 2: unit-character formula.
int hilbert_k(const Rat& a, const Rat& b, const Place& v);

// Quadratic Hilbert symbol over K_p at an odd prime (all three splitting
// behaviours).  Split: componentwise product of (.,.)_{Q_p} values; inert:
// tame formula in the unramified quadratic extension (q = p^2); ramified:
// tame formula with uniformizer theta.
int hilbert_K(const QuadNum& lambda, const QuadNum& mu, const Int& p);

// Quadratic Legendre symbol (a/b) = prod_{p | b} (a,b)_p for integers with
// gcd(b, 2a) = 1, b != 0.
int legendre_symbol(const Rat& a, const Rat& b);

// Valuation and unit residue mod p of one split component a + s*b (sign
// selects the component, s = hensel_sqrt(-d)); used by hilbert_K and by the
// split-case unit tests.
struct LocalUnit {
  long valuation;
  Int residue;  // unit residue mod p
};
LocalUnit split_component(const QuadNum& x, const Int& p, int sign);

// Valuation (normalized v(theta) = 1) and unit residue mod p in the
// ramified completion at an odd p | d.
LocalUnit ramified_component(const QuadNum& x, const Int& p);

// Distinct prime factors of a nonzero integer (Miller-Rabin + Pollard rho).
std::vector<Int> prime_factors(const Int& n);

}  // namespace su21
