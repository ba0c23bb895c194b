#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "su21/localfield.hpp"
#include "su21/oracle.hpp"

using namespace su21;

namespace {

Rat nonzero_rat(std::mt19937_64& rng, long bound) {
  for (;;) {
    long num = static_cast<long>(rng() % (2 * bound + 1)) - bound;
    long den = static_cast<long>(rng() % bound) + 1;
    if (num == 0) continue;
    Rat r(num, den);
    r.canonicalize();
    return r;
  }
}

const std::vector<Place> kTestPlaces = {
    Place::Real(),      Place::Finite(2), Place::Finite(3),
    Place::Finite(5),   Place::Finite(7), Place::Finite(11)};

}  // namespace

TEST_CASE("prime classification") {
  CHECK(classify_prime(7, 7) == SplitType::Ramified);
  CHECK(classify_prime(2, 7) == SplitType::Split);
  CHECK(classify_prime(3, 7) == SplitType::Inert);
  CHECK(classify_prime(11, 7) == SplitType::Split);  // -7 = 4 = 2^2 mod 11
  CHECK(classify_prime(2, 1) == SplitType::Ramified);
  CHECK(classify_prime(2, 5) == SplitType::Ramified);  // -5 = 3 mod 4
  CHECK(classify_prime(2, 3) == SplitType::Inert);     // -3 = 5 mod 8
}

TEST_CASE("valuations") {
  CHECK(val_p(Rat(12), 2) == 2);
  CHECK(val_p(Rat(1, 9), 3) == -2);
  CHECK(val_p(Rat(5), 7) == 0);
  CHECK_THROWS_AS(val_p(Rat(0), 3), DomainError);
}

TEST_CASE("hensel square roots") {
  CHECK(hensel_sqrt(Rat(-7), 11, 1) == 2);
  CHECK(hensel_sqrt(Rat(4), 5, 3) == 2);
  CHECK_THROWS_AS(hensel_sqrt(Rat(2), 3, 1), DomainError);
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    Int p = std::vector<Int>{3, 5, 11, 13}[rng() % 4];
    Rat a = nonzero_rat(rng, 40);
    if (val_p(a, p) != 0) continue;
    Int r;
    try {
      r = hensel_sqrt(a, p, 4);
    } catch (const DomainError&) {
      continue;  // non-residue
    }
    Int mod;
    mpz_pow_ui(mod.get_mpz_t(), p.get_mpz_t(), 4);
    // r^2 = a mod p^M, i.e. r^2 * den(a) = num(a) mod p^M.
    CHECK((r * r * a.get_den() - a.get_num()) % mod == 0);
  }
}

TEST_CASE("rational Hilbert symbol frozen values") {
  CHECK(hilbert_k(Rat(2), Rat(3), Place::Finite(3)) == -1);
  CHECK(hilbert_k(Rat(-1), Rat(-1), Place::Real()) == -1);
  CHECK(hilbert_k(Rat(2), Rat(5), Place::Real()) == 1);
  CHECK_THROWS_AS(hilbert_k(Rat(0), Rat(3), Place::Finite(3)), DomainError);
}

TEST_CASE("rational Hilbert symbol properties") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 120; ++i) {
    Rat a = nonzero_rat(rng, 50), b = nonzero_rat(rng, 50),
        c = nonzero_rat(rng, 50);
    for (const Place& v : kTestPlaces) {
      int ab = hilbert_k(a, b, v);
      CHECK(ab == hilbert_k(b, a, v));                        // symmetry
      CHECK(hilbert_k(a, b * c, v) ==                         // bimultiplicative
            ab * hilbert_k(a, c, v));
      CHECK(hilbert_k(a, -a, v) == 1);
      if (a != 1) CHECK(hilbert_k(a, 1 - a, v) == 1);
      CHECK(hilbert_k(a, c * c * b, v) == ab);                // square invariance
    }
  }
}

TEST_CASE("Hilbert symbol against the conic oracle") {
  for (long a = -12; a <= 12; ++a) {
    if (a == 0) continue;
    for (long b = -12; b <= 12; ++b) {
      if (b == 0) continue;
      for (const Place& v : kTestPlaces) {
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(place_to_string(v));
        CHECK(hilbert_k(Rat(a), Rat(b), v) == hilbert_via_conic(Rat(a), Rat(b), v));
      }
    }
  }
}

TEST_CASE("Hilbert symbol over K at odd places") {
  std::mt19937_64 rng(23);
  std::vector<Int> odd_primes = {3, 5, 7, 11, 13};
  for (int i = 0; i < 60; ++i) {
    Int p = odd_primes[rng() % odd_primes.size()];
    QuadNum lam(nonzero_rat(rng, 12), nonzero_rat(rng, 12));
    QuadNum mu(nonzero_rat(rng, 12), nonzero_rat(rng, 12));
    QuadNum nu(nonzero_rat(rng, 12), nonzero_rat(rng, 12));
    CHECK(hilbert_K(lam, mu * mu, p) == 1);               // squares trivial
    CHECK(hilbert_K(lam, mu * nu, p) ==
          hilbert_K(lam, mu, p) * hilbert_K(lam, nu, p));  // bimultiplicative
    // Rational second slot reduces to the norm in the first slot.
    Rat b0 = nonzero_rat(rng, 12);
    CHECK(hilbert_K(lam, QuadNum(b0), p) ==
          hilbert_k(norm(lam), b0, Place::Finite(p)));
  }
  // Units at an inert prime pair trivially.
  CHECK(hilbert_K(QuadNum(Rat(1), Rat(1)), QuadNum(Rat(2), Rat(1)), 3) == 1);
  CHECK_THROWS_AS(hilbert_K(theta(), theta(), 2), DomainError);
}

TEST_CASE("Legendre symbol") {
  CHECK(legendre_symbol(Rat(2), Rat(15)) == 1);
  CHECK(legendre_symbol(Rat(1), Rat(21)) == 1);
  CHECK(legendre_symbol(Rat(5), Rat(1)) == 1);
  CHECK_THROWS_AS(legendre_symbol(Rat(3), Rat(15)), DomainError);
}

TEST_CASE("product formula for random rational pairs") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    Rat a = nonzero_rat(rng, 60), b = nonzero_rat(rng, 60);
    int prod = hilbert_k(a, b, Place::Real());
    Int support = 2 * a.get_num() * a.get_den() * b.get_num() * b.get_den();
    for (const Int& p : prime_factors(support))
      prod *= hilbert_k(a, b, Place::Finite(p));
    CHECK(prod == 1);
  }
}

TEST_CASE("prime factorisation helper") {
  std::vector<Int> f = prime_factors(Int(-360));
  CHECK(f == std::vector<Int>{2, 3, 5});
  CHECK(prime_factors(Int(1)).empty());
  Int big = Int("1000003") * Int("1000033") * 8;
  std::vector<Int> g = prime_factors(big);
  CHECK(g == std::vector<Int>{2, Int("1000003"), Int("1000033")});
}
