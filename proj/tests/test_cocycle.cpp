#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "su21/cocycle.hpp"

using namespace su21;

namespace {

const std::vector<Place> kTestPlaces = {
    Place::Real(),    Place::Finite(2), Place::Finite(3),
    Place::Finite(5), Place::Finite(7)};

QuadNum random_unit(std::mt19937_64& rng) {
  for (;;) {
    auto small = [&rng]() -> Rat {
      Rat r(static_cast<long>(rng() % 9) - 4, static_cast<long>(rng() % 3) + 1);
      r.canonicalize();
      return r;
    };
    QuadNum lam(small(), small());
    if (!lam.is_zero()) return lam;
  }
}

}  // namespace

TEST_CASE("X of a group element") {
  CHECK(X_of(identity3()) == QuadNum(1));
  CHECK(X_of(make_w(QuadNum(0), theta())) == QuadNum(1));
  std::mt19937_64 rng(2);
  for (int i = 0; i < 40; ++i) {
    QuadNum lam = random_unit(rng);
    CHECK(X_of(make_h(lam)) == lam);
  }
}

TEST_CASE("X is invariant under unipotent translation") {
  std::mt19937_64 rng(4);
  auto small = [&rng]() -> Rat {
    Rat r(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 3) + 1);
    r.canonicalize();
    return r;
  };
  for (int i = 0; i < 60; ++i) {
    Mat3 g = random_group_element(rng());
    QuadNum r(small(), small());
    QuadNum m(-norm(r) / 2, small());
    Mat3 n = make_x_plus(r, m);
    CHECK(X_of(mul(n, g)) == X_of(g));
    CHECK(X_of(mul(g, n)) == X_of(g));
  }
}

TEST_CASE("u function") {
  for (const Place& v : kTestPlaces) {
    CHECK(u_of(QuadNum(1), QuadNum(1), v) == 1);
    CHECK(u_of(theta(), theta(), v) == 1);  // (N0, -N0) = 1
  }
  CHECK(u_of(QuadNum(2), QuadNum(3), Place::Finite(3)) ==
        hilbert_k(Rat(2), Rat(-3), Place::Finite(3)));
  CHECK_THROWS_AS(u_of(QuadNum(0), QuadNum(1), Place::Real()), DomainError);
}

TEST_CASE("torus cocycle frozen values") {
  CHECK(sigma_torus(QuadNum(2), QuadNum(3), Place::Finite(3)) == -1);
  CHECK(sigma_torus(QuadNum(-1), QuadNum(-1), Place::Real()) == -1);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 40; ++i) {
    QuadNum lam = random_unit(rng);
    for (const Place& v : kTestPlaces)
      CHECK(sigma_torus(lam, QuadNum(1), v) == 1);
  }
}

TEST_CASE("sigma restricted to the torus equals sigma_torus") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 60; ++i) {
    QuadNum lam = random_unit(rng), mu = random_unit(rng);
    for (const Place& v : kTestPlaces)
      CHECK(sigma(make_h(lam), make_h(mu), v) == sigma_torus(lam, mu, v));
  }
  CHECK(sigma(make_h(QuadNum(2)), make_h(QuadNum(3)), Place::Finite(3)) == -1);
  CHECK(sigma(make_h(QuadNum(-1)), make_h(QuadNum(-1)), Place::Real()) == -1);
}

TEST_CASE("cocycle identity on random triples") {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 40; ++i) {
    Mat3 a = random_group_element(rng());
    Mat3 b = random_group_element(rng());
    Mat3 c = random_group_element(rng());
    for (const Place& v : kTestPlaces) {
      int lhs = sigma(a, b, v) * sigma(mul(a, b), c, v);
      int rhs = sigma(a, mul(b, c), v) * sigma(b, c, v);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("unipotent triviality and bi-invariance") {
  std::mt19937_64 rng(12);
  auto small = [&rng]() -> Rat {
    Rat r(static_cast<long>(rng() % 7) - 3, static_cast<long>(rng() % 3) + 1);
    r.canonicalize();
    return r;
  };
  for (int i = 0; i < 40; ++i) {
    Mat3 g = random_group_element(rng());
    Mat3 gp = random_group_element(rng());
    QuadNum r(small(), small());
    QuadNum m(-norm(r) / 2, small());
    Mat3 n = make_x_plus(r, m);
    for (const Place& v : kTestPlaces) {
      CHECK(sigma(g, n, v) == 1);
      CHECK(sigma(n, g, v) == 1);
      CHECK(sigma(mul(n, g), gp, v) == sigma(g, gp, v));
      CHECK(sigma(g, mul(gp, n), v) == sigma(g, gp, v));
      CHECK(sigma(g, mul(n, gp), v) == sigma(mul(g, n), gp, v));
    }
  }
}

TEST_CASE("torus commutator at odd places") {
  std::mt19937_64 rng(14);
  std::vector<long> odd_primes = {3, 5, 11, 13};
  for (int i = 0; i < 50; ++i) {
    QuadNum lam = random_unit(rng), mu = random_unit(rng);
    long p = odd_primes[rng() % odd_primes.size()];
    CHECK(commutator_torus(lam, lam, p) == 1);
    CHECK(commutator_torus(lam, mu, p) == hilbert_K(lam, conj(mu), p));
  }
  CHECK(commutator_torus(QuadNum(2), QuadNum(3), 5) == 1);
  CHECK(commutator_torus(theta(), QuadNum(Rat(1), Rat(1)), 11) ==
        hilbert_K(theta(), QuadNum(Rat(1), Rat(-1)), 11));
  CHECK_THROWS_AS(commutator_torus(theta(), theta(), 2), DomainError);
}

TEST_CASE("global product of sigma") {
  std::mt19937_64 rng(16);
  for (int i = 0; i < 50; ++i) {
    Mat3 a = random_group_element(rng());
    Mat3 b = random_group_element(rng());
    int prod = 1;
    for (const auto& [v, s] : sigma_all_places(a, b)) prod *= s;
    CHECK(prod == 1);
  }
  for (const auto& [v, s] : sigma_all_places(identity3(), random_group_element(99)))
    CHECK(s == 1);
}
