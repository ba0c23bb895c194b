#include "su21/cocycle.hpp"

#include <algorithm>

namespace su21 {

namespace {

bool is_upper_unipotent(const Mat3& g) {
  return g(1, 0).is_zero() && g(2, 0).is_zero() && g(2, 1).is_zero() &&
         g(0, 0) == QuadNum(1) && g(1, 1) == QuadNum(1) && g(2, 2) == QuadNum(1);
}

void push(std::vector<std::pair<Rat, Rat>>& out, const Rat& a, const Rat& b) {
  if (a == 0 || b == 0)
    throw InternalError("sigma: zero Hilbert-symbol argument");
  out.push_back({a, b});
}

// u(lambda, mu) = (lambda, -mu) when both are rational, (N lambda, -N mu)
// otherwise, recorded as a rational pair.
void push_u(std::vector<std::pair<Rat, Rat>>& out, const QuadNum& lambda,
            const QuadNum& mu) {
  if (lambda.is_zero() || mu.is_zero()) throw DomainError("u: zero argument");
  if (is_in_k(lambda) && is_in_k(mu))
    push(out, lambda.a, -mu.a);
  else
    push(out, norm(lambda), -norm(mu));
}

}  // namespace

QuadNum X_of(const Mat3& g) {
  const QuadNum& g31 = g(2, 0);
  if (!g31.is_zero()) return inv(conj(g31) * theta());
  return inv(conj(g(2, 2)));
}

int u_of(const QuadNum& lambda, const QuadNum& mu, const Place& v) {
  std::vector<std::pair<Rat, Rat>> pairs;
  push_u(pairs, lambda, mu);
  int s = 1;
  for (const auto& [a, b] : pairs) s *= hilbert_k(a, b, v);
  return s;
}

int sigma_torus(const QuadNum& lambda, const QuadNum& mu, const Place& v) {
  if (lambda.is_zero() || mu.is_zero())
    throw DomainError("sigma_torus: zero argument");
  long d = field_d();
  auto tr_theta = [d](const QuadNum& x) -> Rat { return Rat(-2 * d) * x.b; };
  int s = 1;
  auto H = [&](const Rat& a, const Rat& b) { s *= hilbert_k(a, b, v); };
  if (is_in_k(lambda) && is_in_k(mu)) {
    H(lambda.a, mu.a);
  } else if (is_in_k(mu)) {
    H(tr_theta(lambda), mu.a);
  } else if (is_in_k(lambda)) {
    H(lambda.a, norm(mu));
    H(lambda.a, tr_theta(mu));
  } else if (is_in_k(lambda * mu)) {
    Rat prod = (lambda * mu).a;
    H(norm(lambda), -prod);
    H(-tr_theta(lambda), prod);
  } else {
    H(norm(lambda), norm(mu));
    H(tr_theta(lambda) * norm(mu), tr_theta(mu));
    H(tr_theta(lambda * mu), -tr_theta(lambda) * norm(mu) * tr_theta(mu));
  }
  return s;
}

std::vector<std::pair<Rat, Rat>> sigma_pairs(const Mat3& g1, const Mat3& g2) {
  std::vector<std::pair<Rat, Rat>> out;
  if (is_upper_unipotent(g1) || is_upper_unipotent(g2)) return out;
  Mat3 g3 = g1 * g2;
  QuadNum X1 = X_of(g1), X2 = X_of(g2), X3 = X_of(g3);
  QuadNum ratio = X3 / (X1 * X2);
  Rat c1 = delta2_coef(X1), c2 = delta2_coef(X2), c3 = delta2_coef(X3);
  if (is_in_k(ratio)) {
    push_u(out, X3 / X2, X1 * X2);
    push(out, c3 / c2, -norm(X2) * c2 / c1);
    push(out, ratio.a, c1 * c2 / c3);
    return out;
  }
  const QuadNum &gg1 = g1(2, 0), &gg2 = g2(2, 0), &gg3 = g3(2, 0);
  const QuadNum &hh2 = g2(2, 1), &hh3 = g3(2, 1);
  if (gg1.is_zero() || gg2.is_zero() || gg3.is_zero())
    throw InternalError("sigma: non-rational ratio with a vanishing corner");
  QuadNum r = (hh2 * gg3 - hh3 * gg2) / (gg1 * conj(gg2));
  if (r.is_zero()) throw InternalError("sigma: r = 0 in the generic branch");
  QuadNum q = -(r * ratio);
  QuadNum s32 = X3 / X2;
  Rat cq = delta2_coef(q), cr = delta2_coef(r);
  Rat cs = delta2_coef(ratio), c32 = delta2_coef(s32);
  push(out, -cq, norm(q));
  push(out, norm(r), cr);
  push_u(out, X1, s32);
  push_u(out, s32, X3);
  push(out, cs / c32, -norm(ratio) * cs / c1);
  push(out, c2 / c3, -norm(X2) * c2 / c32);
  return out;
}

int sigma(const Mat3& g1, const Mat3& g2, const Place& v) {
  int s = 1;
  for (const auto& [a, b] : sigma_pairs(g1, g2)) s *= hilbert_k(a, b, v);
  return s;
}

int commutator_torus(const QuadNum& lambda, const QuadNum& mu, long p) {
  if (p == 2) throw DomainError("commutator_torus: p must be odd");
  Place v = Place::Finite(p);
  Mat3 hl = make_h(lambda), hm = make_h(mu);
  int comm = sigma(hl, hm, v) * sigma(hm, hl, v);
  if (comm != hilbert_K(lambda, conj(mu), p))
    throw InternalError("commutator_torus: disagrees with hilbert_K");
  return comm;
}

std::map<Place, int> sigma_all_places(const Mat3& g1, const Mat3& g2) {
  auto pairs = sigma_pairs(g1, g2);
  std::vector<Int> primes{2};
  for (const Int& p : prime_factors(Int(field_d()))) primes.push_back(p);
  for (const auto& [a, b] : pairs)
    for (const Rat* x : {&a, &b})
      for (const Int& part : {x->get_num(), x->get_den()})
        if (part != 1 && part != -1)
          for (const Int& p : prime_factors(part)) primes.push_back(p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  std::map<Place, int> out;
  int s = 1;
  for (const auto& [a, b] : pairs) s *= hilbert_k(a, b, Place::Real());
  out[Place::Real()] = s;
  for (const Int& p : primes) {
    s = 1;
    for (const auto& [a, b] : pairs) s *= hilbert_k(a, b, Place::Finite(p));
    out[Place::Finite(p)] = s;
  }
  return out;
}

}  // namespace su21
