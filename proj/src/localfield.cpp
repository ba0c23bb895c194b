#include "su21/localfield.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace su21 {

namespace {

// x mod m for a rational whose denominator is invertible mod m.
Int rat_residue(const Rat& x, const Int& m) {
  Int num = x.get_num();
  Int den = x.get_den();
  Int inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), m.get_mpz_t()) == 0)
    throw DomainError("rat_residue: denominator not invertible");
  Int r = (num % m) * inv % m;
  if (r < 0) r += m;
  return r;
}

Int pow_int(const Int& p, long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

Int powm(const Int& b, const Int& e, const Int& m) {
  Int r;
  mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
  return r;
}

bool odd(const Int& n) { return mpz_odd_p(n.get_mpz_t()) != 0; }

int sign_pow(int s, long e) { return (s == -1 && (e & 1)) ? -1 : 1; }

int legendre_int(const Int& a, const Int& p) {
  return mpz_legendre(a.get_mpz_t(), p.get_mpz_t());
}

// Tonelli-Shanks square root of the residue a modulo the odd prime p.
Int sqrt_mod_p(const Int& a, const Int& p) {
  Int a0 = a % p;
  if (a0 < 0) a0 += p;
  if (a0 == 0) return 0;
  if (p % 4 == 3) return powm(a0, (p + 1) / 4, p);
  Int q = p - 1;
  long s = 0;
  while (!odd(q)) {
    q /= 2;
    ++s;
  }
  Int z(2);
  while (legendre_int(z, p) != -1) ++z;
  Int m(s), c = powm(z, q, p), t = powm(a0, q, p), r = powm(a0, (q + 1) / 2, p);
  while (t != 1) {
    Int tt = t;
    long i = 0;
    while (tt != 1) {
      tt = tt * tt % p;
      ++i;
    }
    Int b = powm(c, pow_int(Int(2), m.get_si() - i - 1), p);
    m = i;
    c = b * b % p;
    t = t * c % p;
    r = r * b % p;
  }
  return r;
}

// Element x + y*sqrt(-d) of F_{p^2}, p odd inert.
struct Fp2 {
  Int x, y;
};

Fp2 fp2_mul(const Fp2& u, const Fp2& v, const Int& p, const Int& md) {
  Fp2 r;
  r.x = ((u.x * v.x - md * (u.y * v.y % p)) % p + p) % p;
  r.y = (u.x * v.y + u.y * v.x) % p;
  return r;
}

Fp2 fp2_pow(Fp2 b, Int e, const Int& p, const Int& md) {
  Fp2 r{Int(1), Int(0)};
  while (e > 0) {
    if (odd(e)) r = fp2_mul(r, b, p, md);
    b = fp2_mul(b, b, p, md);
    e /= 2;
  }
  return r;
}

}  // namespace

std::string place_to_string(const Place& v) {
  if (v.infinite) return "Real";
  return v.p.get_str();
}

bool is_prime(const Int& p) {
  if (p < 2) return false;
  return mpz_probab_prime_p(p.get_mpz_t(), 30) != 0;
}

SplitType classify_prime(const Int& p, long d) {
  if (!is_prime(p)) throw DomainError("classify_prime: not a prime");
  if (p == 2) {
    if (d % 4 != 3) return SplitType::Ramified;
    return (d % 8 == 7) ? SplitType::Split : SplitType::Inert;
  }
  if (Int(d) % p == 0) return SplitType::Ramified;
  return legendre_int(Int(-d), p) == 1 ? SplitType::Split : SplitType::Inert;
}

int legendre_unit(const Rat& a, const Int& p) {
  if (p == 2 || !is_prime(p)) throw DomainError("legendre_unit: need odd prime");
  if (val_p(a, p) != 0) throw DomainError("legendre_unit: not a p-unit");
  return legendre_int(rat_residue(a, p), p);
}

Int hensel_sqrt(const Rat& a, const Int& p, int M) {
  if (p == 2) throw DomainError("hensel_sqrt: p must be odd");
  if (M < 1) throw DomainError("hensel_sqrt: precision must be positive");
  if (val_p(a, p) != 0) throw DomainError("hensel_sqrt: not a p-unit");
  if (legendre_unit(a, p) != 1) throw DomainError("hensel_sqrt: non-residue");
  Int pk = pow_int(p, M);
  Int target = rat_residue(a, pk);
  Int r = sqrt_mod_p(target, p);
  // Newton iteration r <- r - (r^2 - a)/(2r), doubling the precision.
  Int mod = p;
  while (mod < pk) {
    mod = mod * mod;
    if (mod > pk) mod = pk;
    Int inv, two_r = 2 * r % mod;
    mpz_invert(inv.get_mpz_t(), two_r.get_mpz_t(), mod.get_mpz_t());
    r = (r - (r * r - target) % mod * inv) % mod;
    if (r < 0) r += mod;
  }
  r %= pk;
  // Representative lifting the smaller of the two roots mod p.
  if (r % p > p - r % p) r = pk - r;
  return r;
}

int hilbert_k(const Rat& a, const Rat& b, const Place& v) {
  if (a == 0 || b == 0) throw DomainError("hilbert_k: arguments must be nonzero");
  if (v.infinite) return (a < 0 && b < 0) ? -1 : 1;
  const Int& p = v.p;
  if (!is_prime(p)) throw DomainError("hilbert_k: not a prime");
  long alpha = val_p(a, p), beta = val_p(b, p);
  Rat ua = a / rat_pow(Rat(p), alpha);
  Rat ub = b / rat_pow(Rat(p), beta);
  if (p != 2) {
    int s = 1;
    if ((alpha & 1) && (beta & 1) && odd((p - 1) / 2)) s = -s;
    s *= sign_pow(legendre_unit(ua, p), beta);
    s *= sign_pow(legendre_unit(ub, p), alpha);
    return s;
  }
  long u = rat_residue(ua, Int(8)).get_si();
  long w = rat_residue(ub, Int(8)).get_si();
  long eps_u = (u - 1) / 2 & 1, eps_w = (w - 1) / 2 & 1;
  long om_u = (u * u - 1) / 8 & 1, om_w = (w * w - 1) / 8 & 1;
  long e = eps_u * eps_w + alpha * om_w + beta * om_u;
  return (e & 1) ? -1 : 1;
}

LocalUnit split_component(const QuadNum& x, const Int& p, int sign) {
  if (x.is_zero()) throw DomainError("split_component: zero element");
  long d = field_d();
  long ta = x.a == 0 ? 0 : val_p(x.a, p);
  long tb = x.b == 0 ? 0 : val_p(x.b, p);
  long t = std::min(x.a == 0 ? tb : ta, x.b == 0 ? ta : tb);
  long vn = val_p(norm(x), p);
  int M = static_cast<int>(vn - 2 * t + 4);
  Int s = hensel_sqrt(Rat(-d), p, M);
  Int pk = pow_int(p, M);
  Rat scale = rat_pow(Rat(p), t);
  Int ar = rat_residue(x.a / scale, pk);
  Int br = rat_residue(x.b / scale, pk);
  Int c = (ar + sign * s % pk * br) % pk;
  if (c < 0) c += pk;
  if (c == 0) throw InternalError("split_component: precision exhausted");
  long extra = 0;
  while (c % p == 0) {
    c /= p;
    ++extra;
  }
  return LocalUnit{t + extra, c % p};
}

LocalUnit ramified_component(const QuadNum& x, const Int& p) {
  if (x.is_zero()) throw DomainError("ramified_component: zero element");
  long d = field_d();
  constexpr long INF = std::numeric_limits<long>::max();
  long va = x.a == 0 ? INF : 2 * val_p(x.a, p);
  long vb = x.b == 0 ? INF : 1 + 2 * val_p(x.b, p);
  long v = std::min(va, vb);
  // Scale to a unit: theta^{-1}(a + b*theta) = b - (a/d)*theta for v > 0,
  // theta*(a + b*theta) = -d*b + a*theta for v < 0.
  QuadNum y = x;
  for (long i = 0; i < v; ++i) y = QuadNum(y.b, -y.a / d);
  for (long i = 0; i < -v; ++i) y = QuadNum(Rat(-d) * y.b, y.a);
  return LocalUnit{v, rat_residue(y.a, p)};
}

int hilbert_K(const QuadNum& lambda, const QuadNum& mu, const Int& p) {
  if (lambda.is_zero() || mu.is_zero())
    throw DomainError("hilbert_K: arguments must be nonzero");
  if (p == 2 || !is_prime(p)) throw DomainError("hilbert_K: need an odd prime");
  long d = field_d();
  SplitType st = classify_prime(p, d);
  auto tame = [&](const LocalUnit& l, const LocalUnit& m, const Int& pmod) {
    int s = 1;
    if ((l.valuation & 1) && (m.valuation & 1) && odd((pmod - 1) / 2)) s = -s;
    s *= sign_pow(legendre_int(m.residue % pmod, pmod), l.valuation);
    s *= sign_pow(legendre_int(l.residue % pmod, pmod), m.valuation);
    return s;
  };
  switch (st) {
    case SplitType::Split: {
      int s = 1;
      for (int sign : {+1, -1})
        s *= tame(split_component(lambda, p, sign),
                  split_component(mu, p, sign), p);
      return s;
    }
    case SplitType::Inert: {
      long vl = val_p(norm(lambda), p) / 2;
      long vm = val_p(norm(mu), p) / 2;
      Rat sc_l = rat_pow(Rat(p), vl), sc_m = rat_pow(Rat(p), vm);
      Fp2 ul{rat_residue(lambda.a / sc_l, p), rat_residue(lambda.b / sc_l, p)};
      Fp2 um{rat_residue(mu.a / sc_m, p), rat_residue(mu.b / sc_m, p)};
      Int md = Int(d) % p;
      // ((-1)^{v1 v2} u_mu^{v1} u_lambda^{-v2})^{(q-1)/2} with q = p^2.
      Int q1 = (p * p - 1) / 2;
      Fp2 base{Int(1), Int(0)};
      if ((vl & 1) && (vm & 1)) base.x = p - 1;
      if (vl & 1) base = fp2_mul(base, um, p, md);
      if (vm & 1) base = fp2_mul(base, ul, p, md);
      Fp2 r = fp2_pow(base, q1, p, md);
      if (r.y != 0) throw InternalError("hilbert_K: inert power not in F_p");
      return r.x == 1 ? 1 : -1;
    }
    case SplitType::Ramified:
      return tame(ramified_component(lambda, p), ramified_component(mu, p), p);
  }
  throw InternalError("hilbert_K: unreachable");
}

int legendre_symbol(const Rat& a, const Rat& b) {
  if (a.get_den() != 1 || b.get_den() != 1)
    throw DomainError("legendre_symbol: integer arguments required");
  Int na = a.get_num(), nb = b.get_num();
  if (nb == 0) throw DomainError("legendre_symbol: zero modulus");
  Int g, two_a = 2 * na;
  mpz_gcd(g.get_mpz_t(), nb.get_mpz_t(), two_a.get_mpz_t());
  if (g != 1) throw DomainError("legendre_symbol: gcd(b,2a) != 1");
  Int m;
  mpz_abs(m.get_mpz_t(), nb.get_mpz_t());
  return mpz_jacobi(na.get_mpz_t(), m.get_mpz_t());
}

namespace {

// Brent's cycle-finding variant of Pollard rho with batched gcds.  Returns a
// nontrivial factor, or 0 if none was found within max_squarings modular
// squarings (max_squarings = 0 means no cap).  Deterministic.
Int pollard_rho(const Int& n, unsigned long max_squarings) {
  if (n % 2 == 0) return Int(2);
  gmp_randstate_t st;
  gmp_randinit_mt(st);
  gmp_randseed_ui(st, 0x5eed);
  Int d(1);
  unsigned long spent = 0;
  while (d == 1 || d == n) {
    if (max_squarings != 0 && spent >= max_squarings) {
      d = 0;
      break;
    }
    Int c, y;
    mpz_urandomm(c.get_mpz_t(), st, n.get_mpz_t());
    mpz_urandomm(y.get_mpz_t(), st, n.get_mpz_t());
    if (c == 0) c = 1;
    Int x, ys, q(1);
    d = 1;
    unsigned long r = 1;
    const unsigned long batch = 128;
    while (d == 1) {
      if (max_squarings != 0 && spent >= max_squarings) break;
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = (y * y + c) % n;
      for (unsigned long k = 0; k < r && d == 1; k += batch) {
        ys = y;
        unsigned long lim = std::min(batch, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          y = (y * y + c) % n;
          Int diff = x - y;
          mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
          q = q * diff % n;
        }
        mpz_gcd(d.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      spent += 2 * r;
      r *= 2;
    }
    if (d == n) {
      // Backtrack one step at a time from the last batch start.
      d = 1;
      while (d == 1) {
        ys = (ys * ys + c) % n;
        Int diff = x - ys;
        if (diff == 0) break;  // sterile cycle; retry with a new c
        mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
        mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      }
    }
  }
  gmp_randclear(st);
  return d;
}

// x-only Montgomery curve arithmetic mod n, used by the ECM below.
struct EcPoint {
  Int x, z;
};

struct EcCurve {
  const Int& n;
  Int a24;  // (A + 2) / 4

  EcPoint dbl(const EcPoint& p) const {
    Int s = (p.x + p.z) % n, d = (p.x - p.z) % n;
    Int s2 = s * s % n, d2 = d * d % n;
    Int t = (s2 - d2) % n;
    return {s2 * d2 % n, t * ((d2 + a24 * t) % n) % n};
  }
  // Differential addition: p + q given their difference d.
  EcPoint add(const EcPoint& p, const EcPoint& q, const EcPoint& d) const {
    Int u = (p.x - p.z) * (q.x + q.z) % n;
    Int v = (p.x + p.z) * (q.x - q.z) % n;
    Int s = (u + v) % n, t = (u - v) % n;
    return {d.z * (s * s % n) % n, d.x * (t * t % n) % n};
  }
  EcPoint mul(const EcPoint& p, unsigned long k) const {
    if (k == 1) return p;
    EcPoint r0 = p, r1 = dbl(p);
    int top = 63;
    while (!((k >> top) & 1)) --top;
    for (int i = top - 1; i >= 0; --i) {
      if ((k >> i) & 1) {
        r0 = add(r1, r0, p);
        r1 = dbl(r1);
      } else {
        r1 = add(r0, r1, p);
        r0 = dbl(r0);
      }
    }
    return r0;
  }
};

Int take_gcd(const Int& v, const Int& n) {
  Int g, m = v % n;
  if (m < 0) m += n;
  mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
  return g;
}

// One ECM curve (Suyama parametrization), stage 1 to B1 and a standard
// stage-2 continuation to B2.  Returns a nontrivial factor of n or 0.
// `sieve` flags primality of every index up to at least B2.
Int ecm_curve(const Int& n, unsigned long b1, unsigned long b2,
              unsigned long sigma, const std::vector<bool>& sieve) {
  Int sg(sigma);
  Int u = (sg * sg - 5) % n, v = 4 * sg % n;
  Int u3 = u * u * u % n;
  Int num = (v - u) % n;
  num = num * num % n * num % n * ((3 * u + v) % n) % n;
  Int den = 16 * u3 % n * v % n;
  if (den < 0) den += n;
  Int inv;
  if (!mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), n.get_mpz_t())) {
    Int g = take_gcd(den, n);
    return (g > 1 && g < n) ? g : Int(0);
  }
  EcCurve curve{n, num * inv % n};
  EcPoint p{u3, v * v * v % n};

  // Stage 1: multiply by every prime power up to B1.
  for (unsigned long q = 2; q <= b1; ++q) {
    if (!sieve[q]) continue;
    for (unsigned long pw = q; pw <= b1; pw *= q) {
      p = curve.mul(p, q);
      if (pw > b1 / q) break;
    }
  }
  Int g = take_gcd(p.z, n);
  if (g == n) return 0;
  if (g > 1) return g;

  // Stage 2: for each prime B1 < r <= B2 write r = m*D +- j and test whether
  // [m*D]P matches [j]P projectively; accumulate the cross terms into one gcd.
  const unsigned long D = 210;
  std::vector<EcPoint> tab(D / 2 + 1);
  EcPoint p2 = curve.dbl(p);
  tab[1] = p;
  tab[3] = curve.add(p2, p, p);
  for (unsigned long j = 5; j <= D / 2; j += 2)
    tab[j] = curve.add(tab[j - 2], p2, tab[j - 4]);
  EcPoint pd = curve.mul(p, D);
  unsigned long m0 = b1 / D + 1;
  EcPoint t_prev = curve.mul(p, (m0 - 1) * D);
  EcPoint t_cur = curve.mul(p, m0 * D);
  Int acc(1);
  for (unsigned long m = m0; m * D <= b2 + D / 2; ++m) {
    for (unsigned long j = 1; j <= D / 2; j += 2) {
      unsigned long lo = m * D - j, hi = m * D + j;
      bool want = (lo > b1 && lo <= b2 && sieve[lo]) || (hi <= b2 && sieve[hi]);
      if (!want) continue;
      acc = acc * ((t_cur.x * tab[j].z - tab[j].x * t_cur.z) % n) % n;
    }
    EcPoint t_next = curve.add(t_cur, pd, t_prev);
    t_prev = t_cur;
    t_cur = t_next;
  }
  g = take_gcd(acc, n);
  return (g > 1 && g < n) ? g : Int(0);
}

// Finds a nontrivial factor of an odd composite n with no factor < 1000:
// capped Pollard rho for small factors, then ECM rounds with growing B1,
// with an uncapped rho as the final fallback.  Deterministic.
Int find_factor(const Int& n) {
  Int f = pollard_rho(n, 1UL << 21);
  if (f > 1) return f;
  struct Round {
    unsigned long b1, curves;
  };
  const Round rounds[] = {{2'000, 12}, {11'000, 30}, {50'000, 60}, {250'000, 120}};
  unsigned long sigma = 6;
  for (const Round& r : rounds) {
    unsigned long b2 = 100 * r.b1;
    std::vector<bool> sieve(b2 + 1, true);
    sieve[0] = sieve[1] = false;
    for (unsigned long i = 2; i * i <= b2; ++i)
      if (sieve[i])
        for (unsigned long k = i * i; k <= b2; k += i) sieve[k] = false;
    for (unsigned long c = 0; c < r.curves; ++c) {
      f = ecm_curve(n, r.b1, b2, sigma++, sieve);
      if (f > 1) return f;
    }
  }
  return pollard_rho(n, 0);
}

void factor_into(const Int& n, std::vector<Int>& out) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30)) {
    out.push_back(n);
    return;
  }
  if (mpz_perfect_power_p(n.get_mpz_t())) {
    for (unsigned long k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
      Int r;
      if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k)) {
        factor_into(r, out);  // same prime support as n
        return;
      }
    }
  }
  Int f = find_factor(n);
  factor_into(f, out);
  factor_into(n / f, out);
}

}  // namespace

std::vector<Int> prime_factors(const Int& n) {
  if (n == 0) throw DomainError("prime_factors: zero");
  Int m;
  mpz_abs(m.get_mpz_t(), n.get_mpz_t());
  static std::mutex cache_mutex;
  static std::map<Int, std::vector<Int>> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  const Int key = m;
  std::vector<Int> out;
  if (m % 2 == 0) {
    out.push_back(2);
    while (m % 2 == 0) m /= 2;
  }
  for (long p = 3; p < 1000 && m > 1; p += 2) {
    if (m % p == 0) {
      out.push_back(p);
      while (m % p == 0) m /= p;
    }
  }
  if (m != 1) factor_into(m, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(key, out);
  }
  return out;
}

}  // namespace su21
