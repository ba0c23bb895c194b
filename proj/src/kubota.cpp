#include "su21/kubota.hpp"

#include <algorithm>

namespace su21 {

namespace {

long val_K_of(const QuadNum& x, const KubotaContext& ctx) {
  constexpr long INF = 1L << 40;
  if (x.is_zero()) return INF;
  long va = x.a == 0 ? INF : val_p(x.a, ctx.p);
  long vb = x.b == 0 ? INF : val_p(x.b, ctx.p);
  if (ctx.split_type == SplitType::Ramified)
    return std::min(va == INF ? INF : 2 * va, vb == INF ? INF : 1 + 2 * vb);
  return std::min(va, vb);
}

bool is_local_unit(const QuadNum& x, const KubotaContext& ctx) {
  return !x.is_zero() && val_K_of(x, ctx) == 0 &&
         val_p(norm(x), ctx.p) == 0;
}

void require_member(const Mat3& g, const KubotaContext& ctx, const char* who) {
  if (!in_gamma_p(g, ctx.p))
    throw DomainError(std::string(who) + ": element not in Gamma_p");
}

}  // namespace

KubotaContext kubota_context(const Int& p) {
  long d = field_d();
  SplitType st = classify_prime(p, d);
  if (p == 2 && st != SplitType::Split)
    throw DomainError("kubota_context: even non-split prime not supported");
  GammaLevel level = GammaLevel::Trivial;
  if (st == SplitType::Ramified) level = GammaLevel::Theta;
  if (p == 2) level = GammaLevel::Eight;
  return KubotaContext{d, p, st, level};
}

int rho(const QuadNum& s, const KubotaContext& ctx) {
  if (s.is_zero() || trace(s) == 0) return 1;
  // N(s theta) = N(s) * d.
  return hilbert_k(-trace(s), norm(s) * ctx.d, Place::Finite(ctx.p));
}

int kappa_p_unipotent_upper(const QuadNum& r, const QuadNum& m,
                            const KubotaContext& ctx) {
  require_member(make_x_plus(r, m), ctx, "kappa_p_unipotent_upper");
  return 1;
}

int kappa_p_x_minus(const QuadNum& s1, const QuadNum& n1,
                    const KubotaContext& ctx) {
  if (n1.is_zero()) {
    if (!s1.is_zero())
      throw DomainError("kappa_p_x_minus: n1 = 0 forces s1 = 0");
    return 1;
  }
  require_member(make_x_minus(s1, n1), ctx, "kappa_p_x_minus");
  QuadNum s2 = -(s1 * theta()) / n1;
  return rho(s1, ctx) * rho(s2, ctx);
}

int kappa_p_torus(const QuadNum& lambda, const KubotaContext& ctx) {
  require_member(make_h(lambda), ctx, "kappa_p_torus");
  if (ctx.split_type == SplitType::Ramified || ctx.p == 2) return 1;
  if (lambda.a != 0 && lambda.b != 0 && val_p(lambda.b, ctx.p) >= 1)
    return hilbert_k(lambda.a, lambda.b, Place::Finite(ctx.p));
  return 1;
}

UnipotentParam split_fix(const Mat3& g, const KubotaContext& ctx) {
  if (ctx.split_type != SplitType::Split)
    throw DomainError("split_fix: split prime required");
  const QuadNum &gg = g(2, 0), &hh = g(2, 1), &jj = g(2, 2);
  if (is_local_unit(jj, ctx)) return UnipotentParam{QuadNum(0), QuadNum(0)};
  // Right multiplication by x_alpha(z, m) sends the (3,3)-entry to
  // j' = g*m - h*conj(z) + j.  In each split component j' is affine in z and
  // t with at most one excluded residue class mod p per choice, so a small
  // deterministic candidate set always contains a fix; at p = 2 the
  // parameters additionally have to lie in 8*O, handled by the scale.
  long scale = ctx.p == 2 ? 8 : 1;
  long bound = ctx.p == 2 ? 4 : 6;
  std::vector<QuadNum> zs;
  for (long x = 0; x < bound; ++x)
    for (long y = 0; y < bound; ++y)
      zs.push_back(QuadNum(Rat(scale * x), Rat(scale * y)));
  for (const QuadNum& z : zs)
    for (long t = 0; t < bound; ++t) {
      QuadNum m(-norm(z) / 2, Rat(scale * t));
      QuadNum j2 = gg * m - hh * conj(z) + jj;
      if (is_local_unit(j2, ctx)) return UnipotentParam{z, m};
    }
  throw InternalError("split_fix: no unit-producing parameter found");
}

int kappa_p(const Mat3& g, const KubotaContext& ctx) {
  require_member(g, ctx, "kappa_p");
  const QuadNum& gg = g(2, 0);
  if (gg.is_zero()) return kappa_p_torus(inv(conj(g(2, 2))), ctx);
  if (is_local_unit(gg, ctx))
    return kappa_p_torus(inv(conj(gg) * theta()), ctx);
  Mat3 m = g;
  if (!is_local_unit(m(2, 2), ctx)) {
    if (ctx.split_type != SplitType::Split)
      throw InternalError("kappa_p: non-unit corner at a non-split prime");
    UnipotentParam fix = split_fix(m, ctx);
    m = m * make_x_plus(fix.r, fix.m);  // kappa_p(g n) = kappa_p(g)
  }
  const QuadNum &g1 = m(2, 0), &h1 = m(2, 1), &j1 = m(2, 2);
  QuadNum lam = inv(conj(j1));
  QuadNum mu = conj(j1) / (conj(g1) * theta());
  int k = kappa_p_torus(lam, ctx);
  k *= kappa_p_x_minus(-conj(h1) / conj(j1), g1 / j1, ctx);
  k *= sigma(make_h(lam), make_h(mu), Place::Finite(ctx.p));
  return k;
}

int kappa_p(const Mat3& g, const Int& p) { return kappa_p(g, kubota_context(p)); }

namespace {

void add_factors(const Rat& x, std::vector<Int>& primes) {
  if (x == 0) return;
  for (const Int& part : {x.get_num(), x.get_den()})
    if (part != 1 && part != -1)
      for (const Int& q : prime_factors(part)) primes.push_back(q);
}

void add_quad(const QuadNum& x, std::vector<Int>& primes) {
  if (x.is_zero()) return;
  add_factors(x.a, primes);
  add_factors(x.b, primes);
  add_factors(norm(x), primes);
}

}  // namespace

std::vector<Int> support_primes(const Mat3& g) {
  std::vector<Int> primes{2};
  for (const Int& q : prime_factors(Int(field_d()))) primes.push_back(q);
  const QuadNum &gg = g(2, 0), &hh = g(2, 1), &jj = g(2, 2);
  for (const QuadNum* x : {&gg, &hh, &jj}) add_quad(*x, primes);
  if (!jj.is_zero()) {
    QuadNum lam = inv(conj(jj));
    add_quad(lam, primes);
    if (!hh.is_zero()) {
      QuadNum s1 = -conj(hh) / conj(jj);
      add_quad(s1, primes);
      add_factors(trace(s1), primes);
    }
    if (!gg.is_zero()) {
      QuadNum n1 = gg / jj;
      add_quad(n1, primes);
      if (!hh.is_zero()) {
        QuadNum s2 = (conj(hh) / conj(jj)) * theta() / n1;
        add_quad(s2, primes);
        add_factors(trace(s2), primes);
      }
    }
  }
  if (!gg.is_zero()) {
    QuadNum lam_mu = inv(conj(gg) * theta());
    add_quad(lam_mu, primes);
    if (!jj.is_zero()) {
      QuadNum mu = conj(jj) / (conj(gg) * theta());
      add_quad(mu, primes);
      for (const auto& [a, b] :
           sigma_pairs(make_h(inv(conj(jj))), make_h(mu))) {
        add_factors(a, primes);
        add_factors(b, primes);
      }
    }
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

int kappa_global(const Mat3& g) {
  if (classify_prime(Int(2), field_d()) != SplitType::Split)
    throw DomainError("kappa_global: 2 must split");
  if (!in_global_gamma(g))
    throw DomainError("kappa_global: element not in the congruence subgroup");
  int k = 1;
  for (const Int& p : support_primes(g)) k *= kappa_p(g, kubota_context(p));
  return k;
}

int kappa_borel_closed_form(const QuadNum& f) {
  if (f.is_zero()) throw DomainError("kappa_borel_closed_form: f = 0");
  if (f.b == 0) return 1;
  return legendre_symbol(f.b, f.a) * hilbert_k(f.a, f.b, Place::Real());
}

int kappa_sl2(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
  Mat3 g = sl2_embed(a, b, c, d);
  // (c/d) in the Kronecker extension: for d < 0 an extra sign when c < 0.
  int closed = (c == 0) ? 1
                        : mpz_kronecker(Int(c.get_num()).get_mpz_t(),
                                        Int(d.get_num()).get_mpz_t());
  if (closed != kappa_global(g))
    throw InternalError("kappa_sl2: closed form disagrees with the product");
  return closed;
}

}  // namespace su21
