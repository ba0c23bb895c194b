#include "su21/analytic.hpp"

#include <cmath>
#include <random>

#include "su21/kubota.hpp"

namespace su21 {

namespace {

double to_double(const Rat& x) { return mpq_get_d(x.get_mpq_t()); }

// The square root with argument in (-pi/2, pi/2].  std::sqrt is principal
// except on the negative real axis, where a signed zero imaginary part picks
// the excluded -pi/2 branch; guard it to +0.
Complex halfopen_sqrt(Complex v) {
  if (v.imag() == 0.0) v = Complex(v.real(), +0.0);
  return std::sqrt(v);
}

Complex phi_borel(const QuadNum& lambda) {
  // phi_{h(lambda) n} = conj(lambda)^{-1/2} with arg in (-pi/2, pi/2].
  return halfopen_sqrt(embed(inv(conj(lambda))));
}

}  // namespace

Complex embed(const QuadNum& x) {
  return {to_double(x.a), to_double(x.b) * std::sqrt(double(field_d()))};
}

BlockData blocks(const Mat3& g) {
  return {embed(g(0, 0)), embed(g(0, 1)), embed(g(1, 0)), embed(g(1, 1)),
          embed(g(0, 2)), embed(g(1, 2)), embed(g(2, 0)), embed(g(2, 1)),
          embed(g(2, 2))};
}

bool in_domain(const HPoint& tau, double margin) {
  return std::norm(tau.t2) + 2.0 * tau.t1.real() <= -margin;
}

HPoint sample_tau(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  Complex t2;
  do {
    t2 = Complex(unit(rng), unit(rng));
  } while (std::norm(t2) > 1.0);
  std::uniform_real_distribution<double> mar(0.1, 2.0);
  double margin = mar(rng);
  Complex t1(-(std::norm(t2) / 2.0 + margin), 2.0 * unit(rng));
  return {t1, t2};
}

Complex denom(const Mat3& g, const HPoint& tau) {
  BlockData b = blocks(g);
  return b.c1 * tau.t1 + b.c2 * tau.t2 + b.d;
}

namespace {

HPoint apply_blocks(const BlockData& b, const HPoint& tau, double guard) {
  Complex den = b.c1 * tau.t1 + b.c2 * tau.t2 + b.d;
  if (std::abs(den) < guard) throw DomainError("act: vanishing denominator");
  return {(b.a11 * tau.t1 + b.a12 * tau.t2 + b.b1) / den,
          (b.a21 * tau.t1 + b.a22 * tau.t2 + b.b2) / den};
}

}  // namespace

HPoint act(const Mat3& g, const HPoint& tau) {
  return apply_blocks(blocks(g), tau, 1e-12);
}

Complex phi(const Mat3& g, const HPoint& tau) {
  BruhatData b = bruhat(g);
  if (b.borel) return phi_borel(b.lambda);
  // g = n2 h(lambda) w n1 = n2 w h(mu) n1 with mu = conj(lambda)^{-1}, so
  // phi_g(tau) = phi_w((h(mu) n1)(tau)) * phi_{h(mu) n1}(tau).
  QuadNum mu = inv(conj(b.lambda));
  Mat3 hn1 = make_h(mu) * make_x_plus(b.lower.r, b.lower.m);
  // The denominator here is the exact constant conj(mu)^{-1}, nonzero but
  // possibly far below the public act() guard; skip the threshold.
  HPoint moved = apply_blocks(blocks(hn1), tau, 0.0);
  // denom(w, .) = conj(theta)^{-1} tau1 lies in the open lower half plane on
  // H_C, so the principal square root lands in (-pi/2, 0) as required.
  Complex phi_w = std::sqrt(denom(make_w(QuadNum(0), theta()), moved));
  return phi_w * phi_borel(mu);
}

int sigma_infty_via_phi(const Mat3& g, const Mat3& gp, const HPoint& tau) {
  Complex q = phi(g, act(gp, tau)) * phi(gp, tau) / phi(g * gp, tau);
  if (std::abs(q - 1.0) < 1e-6) return 1;
  if (std::abs(q + 1.0) < 1e-6) return -1;
  throw InternalError("sigma_infty_via_phi: quotient is not a sign");
}

Complex multiplier_j(const Mat3& gamma, const HPoint& tau) {
  if (classify_prime(Int(2), field_d()) != SplitType::Split)
    throw DomainError("multiplier_j: 2 must split in the field");
  if (!in_global_gamma(gamma))
    throw DomainError("multiplier_j: not in the congruence group");
  return double(kappa_global(gamma)) * phi(gamma, tau);
}

}  // namespace su21
