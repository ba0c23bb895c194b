// Local Kubota symbols kappa_p on the compact subgroups Gamma_p, the global
// symbol kappa = prod_p kappa_p on SU(2,1)(Z, 8 theta), and the closed forms
// on the Borel subgroup and the embedded SL2.
#pragma once

#include <vector>

#include "su21/cocycle.hpp"

namespace su21 {

enum class GammaLevel { Trivial, Theta, Eight };

struct KubotaContext {
  long d;
  Int p;
  SplitType split_type;
  GammaLevel level;
};

// Context for the prime p under the configured d; rejects even non-split p.
KubotaContext kubota_context(const Int& p);

// rho(s) = (-tr(s), N(s theta))_p when tr(s) != 0, else 1; rho(0) = 1.
int rho(const QuadNum& s, const KubotaContext& ctx);

int kappa_p_unipotent_upper(const QuadNum& r, const QuadNum& m,
                            const KubotaContext& ctx);

int kappa_p_x_minus(const QuadNum& s1, const QuadNum& n1,
                    const KubotaContext& ctx);

int kappa_p_torus(const QuadNum& lambda, const KubotaContext& ctx);

// Upper-unipotent parameters (z', m') whose right multiplication makes the
// (3,3)-entry of a split-prime element a local unit.
UnipotentParam split_fix(const Mat3& g, const KubotaContext& ctx);

int kappa_p(const Mat3& g, const KubotaContext& ctx);
int kappa_p(const Mat3& g, const Int& p);

// Conservative finite set of primes outside which kappa_p(g) = 1.
std::vector<Int> support_primes(const Mat3& g);

int kappa_global(const Mat3& g);

// kappa on upper-triangular members of the global congruence subgroup,
// via the (1,1)-entry f = a + b*theta: legendre(b, a) * (a, b)_Real when
// b != 0, else 1.
int kappa_borel_closed_form(const QuadNum& f);

// Kubota's classical SL2 symbol (c/d) on the embedded congruence subgroup;
// asserted equal to kappa_global of the embedding.
int kappa_sl2(const Rat& a, const Rat& b, const Rat& c, const Rat& d);

}  // namespace su21
