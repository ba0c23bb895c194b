#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "su21/kubota.hpp"

using namespace su21;

TEST_CASE("local contexts") {
  KubotaContext c2 = kubota_context(2);
  CHECK(c2.split_type == SplitType::Split);
  KubotaContext c3 = kubota_context(3);
  CHECK(c3.split_type == SplitType::Inert);
  KubotaContext c7 = kubota_context(7);
  CHECK(c7.split_type == SplitType::Ramified);
}

TEST_CASE("rho") {
  KubotaContext c7 = kubota_context(7);
  CHECK(rho(theta(), c7) == 1);            // zero trace
  CHECK(rho(QuadNum(0), c7) == 1);
  CHECK(rho(QuadNum(1), c7) == -1);        // (-2, 7)_7
  KubotaContext c5 = kubota_context(5);
  // tr != 0: the generic two-symbol value, frozen against the tame formula.
  CHECK(rho(QuadNum(Rat(1), Rat(1)), c5) ==
        hilbert_k(Rat(-2), Rat(8 * 7), Place::Finite(5)));
}

TEST_CASE("kappa on unipotents") {
  KubotaContext c2 = kubota_context(2);
  CHECK(kappa_p_unipotent_upper(QuadNum(0), 8 * theta(), c2) == 1);
  KubotaContext c5 = kubota_context(5);
  CHECK(kappa_p_unipotent_upper(8 * theta(), QuadNum(Rat(-224), Rat(8)), c5) == 1);
  CHECK(kappa_p_x_minus(QuadNum(0), 8 * theta(), c5) == 1);
  CHECK(kappa_p_x_minus(QuadNum(0), QuadNum(0), c5) == 1);
}

TEST_CASE("unipotent invariance of kappa_p") {
  std::mt19937_64 rng(3);
  for (long p : {2L, 3L, 7L, 11L}) {
    for (int i = 0; i < 25; ++i) {
      Mat3 g = random_gamma_p_element(rng(), p);
      Mat3 n = make_x_plus(8 * theta(), QuadNum(Rat(-224), Rat(8)));
      CHECK(kappa_p(mul(n, g), p) == kappa_p(g, p));
      CHECK(kappa_p(mul(g, n), p) == kappa_p(g, p));
    }
  }
}

TEST_CASE("kappa torus cases") {
  KubotaContext c11 = kubota_context(11);
  // Unit lambda with unit theta-coefficient: trivial row.
  CHECK(kappa_p_torus(QuadNum(Rat(1), Rat(1)), c11) == 1);
  // b = 0 mod p with a, b nonzero: the (a, b)_p row.
  QuadNum lam(Rat(3), Rat(11));
  CHECK(kappa_p_torus(lam, c11) ==
        hilbert_k(Rat(3), Rat(11), Place::Finite(11)));
  KubotaContext c2 = kubota_context(2);
  CHECK(kappa_p_torus(QuadNum(Rat(9), Rat(8)), c2) == 1);
  KubotaContext c7 = kubota_context(7);
  CHECK(kappa_p_torus(QuadNum(Rat(1), Rat(1)), c7) == 1);
}

TEST_CASE("split fix") {
  KubotaContext c11 = kubota_context(11);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 30; ++i) {
    Mat3 g = random_gamma_p_element(rng(), 11);
    UnipotentParam fix = split_fix(g, c11);
    Mat3 fixed = mul(g, make_x_plus(fix.r, fix.m));
    CHECK(val_p(norm(fixed(2, 2)), 11) == 0);
  }
  UnipotentParam triv = split_fix(identity3(), c11);
  CHECK(triv.r == QuadNum(0));
  CHECK(triv.m == QuadNum(0));
}

TEST_CASE("kappa_p identity and local coboundary") {
  for (long p : {2L, 3L, 7L, 11L}) CHECK(kappa_p(identity3(), p) == 1);
  std::mt19937_64 rng(11);
  for (long p : {2L, 3L, 7L, 11L}) {
    for (int i = 0; i < 25; ++i) {
      Mat3 g = random_gamma_p_element(rng(), p);
      Mat3 h = random_gamma_p_element(rng(), p);
      CHECK(sigma(g, h, Place::Finite(p)) ==
            kappa_p(g, p) * kappa_p(h, p) * kappa_p(mul(g, h), p));
    }
  }
}

TEST_CASE("square rule on the larger local group") {
  std::mt19937_64 rng(13);
  for (long p : {2L, 3L, 7L, 11L}) {
    for (int i = 0; i < 25; ++i) {
      Mat3 g = random_gamma_hat_p_element(rng(), p);
      Mat3 g2 = mul(g, g);
      if (!in_gamma_p(g2, p)) continue;
      CHECK(kappa_p(g2, p) == sigma(g, g, Place::Finite(p)));
    }
  }
}

TEST_CASE("support primes") {
  std::vector<Int> base = support_primes(identity3());
  bool has2 = false, has7 = false;
  for (const Int& p : base) {
    if (p == 2) has2 = true;
    if (p == 7) has7 = true;
  }
  CHECK(has2);
  CHECK(has7);
  // All primes off the support give kappa_p = 1.
  std::mt19937_64 rng(17);
  for (int i = 0; i < 5; ++i) {
    Mat3 g = random_gamma_element(rng());
    std::vector<Int> sup = support_primes(g);
    for (Int q : {Int(31), Int(37), Int(41), Int(43)}) {
      bool in_sup = false;
      for (const Int& p : sup)
        if (p == q) in_sup = true;
      if (!in_sup) CHECK(kappa_p(g, q) == 1);
    }
  }
}

TEST_CASE("global kappa") {
  CHECK(kappa_global(identity3()) == 1);
  std::mt19937_64 rng(19);
  for (int i = 0; i < 10; ++i) {
    Mat3 a = random_gamma_element(rng());
    Mat3 b = random_gamma_element(rng());
    int s = sigma(a, b, Place::Real());
    CHECK(kappa_global(a) * kappa_global(b) == s * kappa_global(mul(a, b)));
  }
}

TEST_CASE("Borel closed form") {
  CHECK(kappa_borel_closed_form(QuadNum(1)) == 1);
  CHECK(kappa_borel_closed_form(QuadNum(Rat(17))) == 1);
  QuadNum f(Rat(9), Rat(8));
  CHECK(kappa_borel_closed_form(f) ==
        legendre_symbol(Rat(8), Rat(9)) * hilbert_k(Rat(9), Rat(8), Place::Real()));
}

TEST_CASE("SL2 closed form") {
  CHECK(kappa_sl2(1, 0, 0, 1) == 1);
  CHECK(kappa_sl2(1, 8, 0, 1) == 1);
  std::mt19937_64 rng(23);
  for (int i = 0; i < 20; ++i) {
    SL2Mat s = random_congruence_sl2(rng());
    CHECK(kappa_sl2(s.a, s.b, s.c, s.d) ==
          kappa_global(sl2_embed(s.a, s.b, s.c, s.d)));
  }
}
