#include "su21/group.hpp"

#include <json.hpp>
#include <random>

namespace su21 {

namespace {

QuadNum det3(const Mat3& g) {
  return g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) -
         g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0)) +
         g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
}

void require_unipotent_param(const QuadNum& r, const QuadNum& m,
                             const char* who) {
  if (trace(m) != -norm(r))
    throw DomainError(std::string(who) + ": need tr(m) = -N(r)");
}

// v(theta) = 1 at ramified p, else v of the uniformizer p; +inf encoded big.
long val_K(const QuadNum& x, const Int& p, SplitType st) {
  constexpr long INF = 1L << 40;
  if (x.is_zero()) return INF;
  long va = x.a == 0 ? INF : val_p(x.a, p);
  long vb = x.b == 0 ? INF : val_p(x.b, p);
  if (st == SplitType::Ramified)
    return std::min(va == INF ? INF : 2 * va, vb == INF ? INF : 1 + 2 * vb);
  return std::min(va, vb);
}

bool entry_div_at2(const QuadNum& x, long k) {
  // x/k integral above 2 (k a power of 2).
  return is_integral_at(QuadNum(x.a / k, x.b / k), 2);
}

}  // namespace

Mat3 identity3() {
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = QuadNum(i == j ? 1 : 0);
  return g;
}

Mat3 conj_mat(const Mat3& g) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = conj(g(i, j));
  return r;
}

Mat3 mul(const Mat3& g, const Mat3& h) { return g * h; }

Mat3 inv(const Mat3& g) {
  // For members of the group, g^{-1} = J' * conj(g)^T * J' with
  // J' = antidiag(1,1,1); conjugating by J' reverses both index orders.
  Mat3 c = conj_mat(g);
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = c(2 - j, 2 - i);
  return r;
}

bool is_member(const Mat3& g) {
  Mat3 c = conj_mat(g);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      // (g^T J' conj(g))_{ij} = sum_k g(k,i) * conj(g)(2-k, j)
      QuadNum s(0);
      for (int k = 0; k < 3; ++k) s = s + g(k, i) * c(2 - k, j);
      if (s != QuadNum(i + j == 2 ? 1 : 0)) return false;
    }
  return det3(g) == QuadNum(1);
}

Mat3 make_x_plus(const QuadNum& r, const QuadNum& m) {
  require_unipotent_param(r, m, "make_x_plus");
  Mat3 g = identity3();
  g(0, 1) = r;
  g(0, 2) = m;
  g(1, 2) = -conj(r);
  return g;
}

Mat3 make_x_minus(const QuadNum& r, const QuadNum& m) {
  require_unipotent_param(r, m, "make_x_minus");
  Mat3 g = identity3();
  g(1, 0) = r;
  g(2, 0) = m;
  g(2, 1) = -conj(r);
  return g;
}

Mat3 make_h(const QuadNum& lambda) {
  if (lambda.is_zero()) throw DomainError("make_h: lambda = 0");
  Mat3 g = identity3();
  g(0, 0) = lambda;
  g(1, 1) = conj(lambda) / lambda;
  g(2, 2) = inv(conj(lambda));
  return g;
}

Mat3 make_w(const QuadNum& r, const QuadNum& m) {
  require_unipotent_param(r, m, "make_w");
  if (m.is_zero()) throw DomainError("make_w: m = 0");
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = QuadNum(0);
  g(0, 2) = m;
  g(1, 1) = -conj(m) / m;
  g(2, 0) = inv(conj(m));
  return g;
}

BruhatData bruhat(const Mat3& g) {
  BruhatData out;
  const QuadNum& c = g(2, 0);
  if (c.is_zero()) {
    // Upper triangular in the group: (f g h; 0 f/conj(f) ...; 0 0 conj(f)^{-1}).
    out.borel = true;
    const QuadNum& f = g(0, 0);
    out.lambda = f;
    out.upper = UnipotentParam{g(0, 1) / f, g(0, 2) / f};
    out.lower = UnipotentParam{QuadNum(0), QuadNum(0)};
    return out;
  }
  out.borel = false;
  const QuadNum& a = g(0, 0);
  const QuadNum& b = g(1, 0);
  const QuadNum& dd = g(2, 1);
  const QuadNum& e = g(2, 2);
  out.upper = UnipotentParam{-conj(b) / conj(c), a / c};
  out.lambda = inv(conj(c) * theta());
  out.lower = UnipotentParam{dd / c, e / c};
  return out;
}

Mat3 recompose_bruhat(const BruhatData& b) {
  if (b.borel)
    return make_h(b.lambda) * make_x_plus(b.upper.r, b.upper.m);
  return make_x_plus(b.upper.r, b.upper.m) * make_h(b.lambda) *
         make_w(QuadNum(0), theta()) * make_x_plus(b.lower.r, b.lower.m);
}

IwahoriData iwahori(const Mat3& g) {
  const QuadNum& c = g(0, 2);
  const QuadNum& f = g(1, 2);
  const QuadNum& gg = g(2, 0);
  const QuadNum& hh = g(2, 1);
  const QuadNum& j = g(2, 2);
  if (j.is_zero()) throw DomainError("iwahori: (3,3)-entry is zero");
  IwahoriData out;
  out.upper = UnipotentParam{-conj(f) / conj(j), c / j};
  out.torus = inv(conj(j));
  out.lower = UnipotentParam{-conj(hh) / conj(j), gg / j};
  return out;
}

IwahoriData iwahori(const Mat3& g, const Int& p) {
  const QuadNum& j = g(2, 2);
  SplitType st = classify_prime(p, field_d());
  if (j.is_zero() || val_K(j, p, st) != 0)
    throw DomainError("iwahori: (3,3)-entry not a unit at p");
  return iwahori(g);
}

Mat3 recompose_iwahori(const IwahoriData& w) {
  return make_x_plus(w.upper.r, w.upper.m) * make_h(w.torus) *
         make_x_minus(w.lower.r, w.lower.m);
}

bool in_gamma_p(const Mat3& g, const Int& p) {
  long d = field_d();
  SplitType st = classify_prime(p, d);
  if (p == 2 && st != SplitType::Split)
    throw DomainError("in_gamma_p: even non-split prime not supported");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const QuadNum& x = g(i, j);
      QuadNum delta = x - QuadNum(i == j ? 1 : 0);
      switch (st) {
        case SplitType::Split:
        case SplitType::Inert:
          if (p == 2) {
            if (!entry_div_at2(delta, 8)) return false;
          } else if (!is_integral_at(x, p)) {
            return false;
          }
          break;
        case SplitType::Ramified:
          if (val_K(delta, p, st) < 1) return false;
          break;
      }
    }
  return true;
}

bool in_gamma_hat_p(const Mat3& g, const Int& p) {
  if (p != 2) return in_gamma_p(g, p);
  if (classify_prime(2, field_d()) != SplitType::Split)
    throw DomainError("in_gamma_hat_p: even non-split prime not supported");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      QuadNum delta = g(i, j) - QuadNum(i == j ? 1 : 0);
      if (!entry_div_at2(delta, 4)) return false;
    }
  return true;
}

bool in_global_gamma(const Mat3& g) {
  if (!is_member(g)) return false;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      QuadNum delta = g(i, j) - QuadNum(i == j ? 1 : 0);
      if (!divisible_8theta(delta)) return false;
    }
  return true;
}

Mat3 sl2_embed(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
  if (a * d - b * c != 1) throw DomainError("sl2_embed: ad - bc != 1");
  Mat3 g = identity3();
  g(0, 0) = QuadNum(a);
  g(0, 2) = QuadNum(Rat(0), b);
  g(2, 0) = QuadNum(Rat(0), -c / field_d());  // c / theta
  g(2, 2) = QuadNum(d);
  return g;
}

namespace {

Rat small_rat(std::mt19937_64& rng) {
  long num = static_cast<long>(rng() % 9) - 4;
  long den = (rng() % 2) ? 1 : 2;
  Rat q(num, den);
  q.canonicalize();
  return q;
}

long small_int(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1));
}

// Unipotent parameter with r = scale * z and m = -N(r)/2 + scale_t * t * theta.
UnipotentParam scaled_param(std::mt19937_64& rng, const QuadNum& scale,
                            long scale_t) {
  QuadNum z(Rat(small_int(rng, -2, 2)), Rat(small_int(rng, -2, 2)));
  QuadNum r = scale * z;
  Rat t(scale_t * small_int(rng, -2, 2));
  QuadNum m = QuadNum(-norm(r) / 2, t);
  return UnipotentParam{r, m};
}

}  // namespace

Mat3 random_group_element(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Mat3 g = identity3();
  int len = 1 + static_cast<int>(rng() % 8);
  for (int i = 0; i < len; ++i) {
    switch (rng() % 4) {
      case 0: {
        QuadNum r(small_rat(rng), small_rat(rng));
        QuadNum m(-norm(r) / 2, small_rat(rng));
        g = g * make_x_plus(r, m);
        break;
      }
      case 1: {
        QuadNum r(small_rat(rng), small_rat(rng));
        QuadNum m(-norm(r) / 2, small_rat(rng));
        g = g * make_x_minus(r, m);
        break;
      }
      case 2: {
        QuadNum lam(small_rat(rng), small_rat(rng));
        if (lam.is_zero()) lam = QuadNum(1);
        g = g * make_h(lam);
        break;
      }
      default:
        g = g * make_w(QuadNum(0), theta());
    }
  }
  return g;
}

Mat3 random_gamma_element(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Mat3 g = identity3();
  QuadNum scale = QuadNum(Rat(8)) * theta();  // 8 theta
  // Short words keep entry heights moderate, so that the prime support of
  // derived quantities (norms, traces of entry ratios) stays factorable.
  int len = 1 + static_cast<int>(rng() % 3);
  for (int i = 0; i < len; ++i) {
    UnipotentParam p = scaled_param(rng, scale, 8);
    g = (rng() % 2) ? g * make_x_plus(p.r, p.m) : g * make_x_minus(p.r, p.m);
  }
  return g;
}

namespace {

Mat3 random_congruence_word(std::uint64_t seed, long p, long level) {
  // level: 0 for "p-integral parameters", else entries of gamma - I lie in
  // level * O (level = 8 or 4 at the split even prime, theta at ramified p
  // encoded as level = -1).
  std::mt19937_64 rng(seed);
  Mat3 g = identity3();
  int len = 1 + static_cast<int>(rng() % 6);
  for (int i = 0; i < len; ++i) {
    int which = static_cast<int>(rng() % 3);
    if (level == 0) {
      // Maximal-compact case at odd unramified p: integral generators.
      if (which == 2) {
        long lam = small_int(rng, 1, 5);
        if (lam % p == 0) ++lam;
        g = g * ((rng() % 2) ? make_h(QuadNum(lam)) : make_h(theta()));
        continue;
      }
      UnipotentParam u = scaled_param(rng, QuadNum(1), 1);
      g = which == 0 ? g * make_x_plus(u.r, u.m) : g * make_x_minus(u.r, u.m);
      continue;
    }
    if (level == -1) {
      // Ramified: parameters in theta * O, torus 1 + p*u + v*theta.
      if (which == 2) {
        QuadNum lam(Rat(1 + p * small_int(rng, -1, 1)),
                    Rat(small_int(rng, -1, 1)));
        g = g * make_h(lam);
        continue;
      }
      UnipotentParam u = scaled_param(rng, theta(), 1);
      g = which == 0 ? g * make_x_plus(u.r, u.m) : g * make_x_minus(u.r, u.m);
      continue;
    }
    // Split even prime: parameters in level * O, rational torus 1 + level*k.
    if (which == 2) {
      g = g * make_h(QuadNum(Rat(1 + level * small_int(rng, -2, 2))));
      continue;
    }
    UnipotentParam u = scaled_param(rng, QuadNum(Rat(level)), level);
    g = which == 0 ? g * make_x_plus(u.r, u.m) : g * make_x_minus(u.r, u.m);
  }
  return g;
}

}  // namespace

Mat3 random_gamma_p_element(std::uint64_t seed, long p) {
  SplitType st = classify_prime(p, field_d());
  if (p == 2) {
    if (st != SplitType::Split)
      throw DomainError("random_gamma_p_element: even non-split prime");
    return random_congruence_word(seed, p, 8);
  }
  if (st == SplitType::Ramified) return random_congruence_word(seed, p, -1);
  return random_congruence_word(seed, p, 0);
}

Mat3 random_gamma_hat_p_element(std::uint64_t seed, long p) {
  if (p != 2) return random_gamma_p_element(seed, p);
  if (classify_prime(2, field_d()) != SplitType::Split)
    throw DomainError("random_gamma_hat_p_element: even non-split prime");
  return random_congruence_word(seed, 2, 4);
}

SL2Mat random_congruence_sl2(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  long d = field_d();
  Rat a(1), b(0), c(0), e(1);
  auto lmul = [&](Rat ga, Rat gb, Rat gc, Rat gd) {
    Rat na = a * ga + c * gb, nb = b * ga + e * gb;
    Rat nc = a * gc + c * gd, nd = b * gc + e * gd;
    a = na;
    b = nb;
    c = nc;
    e = nd;
  };
  int len = 1 + static_cast<int>(rng() % 6);
  for (int i = 0; i < len; ++i) {
    bool upper = rng() % 2;
    long sgn = (rng() % 2) ? 1 : -1;
    if (upper)
      lmul(Rat(1), Rat(8 * sgn), Rat(0), Rat(1));
    else
      lmul(Rat(1), Rat(0), Rat(8 * d * sgn), Rat(1));
  }
  return SL2Mat{a, b, c, e};
}

std::string mat_to_json(const Mat3& g) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < 3; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < 3; ++j) row.push_back(quad_to_string(g(i, j)));
    rows.push_back(row);
  }
  return rows.dump();
}

Mat3 mat_from_json(const std::string& text) {
  nlohmann::json rows = nlohmann::json::parse(text);
  if (!rows.is_array() || rows.size() != 3)
    throw DomainError("mat_from_json: expected 3 rows");
  Mat3 g;
  for (int i = 0; i < 3; ++i) {
    if (!rows[i].is_array() || rows[i].size() != 3)
      throw DomainError("mat_from_json: expected 3 columns");
    for (int j = 0; j < 3; ++j)
      g(i, j) = quad_from_string(rows[i][j].get<std::string>());
  }
  Mat3 c = conj_mat(g);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      QuadNum s(0);
      for (int k = 0; k < 3; ++k) s = s + g(k, i) * c(2 - k, j);
      if (s != QuadNum(i + j == 2 ? 1 : 0))
        throw DomainError("mat_from_json: Hermitian-form invariant fails");
    }
  if (det3(g) != QuadNum(1))
    throw DomainError("mat_from_json: determinant invariant fails");
  return g;
}

}  // namespace su21
