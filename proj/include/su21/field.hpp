// Exact arithmetic in Q and in the imaginary quadratic field K = Q(theta),
// theta^2 = -d with d a square-free positive integer.  All values are exact
// GMP rationals; no floating point appears in this layer.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace su21 {

using Rat = mpq_class;
using Int = mpz_class;

// Errors caused by invalid mathematical input (division by zero, malformed
// text, violated preconditions).
class DomainError : public std::runtime_error {
 public:
  explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

// Errors that indicate an internal inconsistency (a case the underlying
// theory rules out was reached anyway).
class InternalError : public std::runtime_error {
 public:
  explicit InternalError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Run-wide configuration: the square-free d > 0 with theta^2 = -d.
// Default is d = 7, for which 2 splits in Q(theta) (-7 = 1 mod 8).
long field_d();
void set_field_d(long d);
bool is_squarefree(long d);

// ---------------------------------------------------------------------------
// Rational utilities.

// Exponent of the prime p in x; throws DomainError on x = 0.
long val_p(const Rat& x, const Int& p);

// x^e for possibly negative e (x != 0 when e < 0).
Rat rat_pow(const Rat& x, long e);

std::string rat_to_string(const Rat& x);
Rat rat_from_string(const std::string& s);

// ---------------------------------------------------------------------------
// Elements a + b*theta of K.

struct QuadNum {
  Rat a;  // rational part
  Rat b;  // theta-coefficient

  QuadNum() : a(0), b(0) {}
  QuadNum(const Rat& ra) : a(ra), b(0) {}  // NOLINT: implicit from Q
  QuadNum(long v) : a(v), b(0) {}          // NOLINT: implicit from Z
  QuadNum(const Rat& ra, const Rat& rb) : a(ra), b(rb) {}

  bool is_zero() const { return a == 0 && b == 0; }
};

QuadNum theta();  // the generator theta itself

bool operator==(const QuadNum& x, const QuadNum& y);
bool operator!=(const QuadNum& x, const QuadNum& y);

QuadNum operator+(const QuadNum& x, const QuadNum& y);
QuadNum operator-(const QuadNum& x, const QuadNum& y);
QuadNum operator-(const QuadNum& x);
QuadNum operator*(const QuadNum& x, const QuadNum& y);
QuadNum operator/(const QuadNum& x, const QuadNum& y);  // throws on y = 0

QuadNum conj(const QuadNum& x);   // a + b*theta -> a - b*theta
QuadNum inv(const QuadNum& x);    // throws on x = 0
Rat norm(const QuadNum& x);       // a^2 + d b^2
Rat trace(const QuadNum& x);      // 2a

bool is_in_k(const QuadNum& x);        // b = 0
bool is_in_k_theta(const QuadNum& x);  // a = 0, b != 0

std::string quad_to_string(const QuadNum& x);
QuadNum quad_from_string(const std::string& s);

// ---------------------------------------------------------------------------
// The delta pair and y: h(lambda) = w(y(lambda), delta1) * w(0, delta2)^-1,
// with delta1/delta2 = lambda and delta2 in Q*theta.

struct DeltaPair {
  QuadNum delta1;
  QuadNum delta2;
};

DeltaPair deltas(const QuadNum& lambda);  // throws on lambda = 0

// delta2(lambda) = delta2_coef(lambda) * theta; the coefficient is rational
// (1 for rational lambda, 1/(2 b d) otherwise).
Rat delta2_coef(const QuadNum& lambda);

int y_of(const QuadNum& lambda);  // 0 iff lambda is rational; else 1

// ---------------------------------------------------------------------------
// Integrality in the maximal order O of Q(theta): basis {1, (1+theta)/2}
// when -d = 1 mod 4, else {1, theta}.

bool is_integral(const QuadNum& x);
// Local integrality of the coordinates at p (denominators prime to p, in the
// integral-basis sense at p = 2).
bool is_integral_at(const QuadNum& x, const Int& p);
// x / (8*theta) lies in the maximal order (globally).
bool divisible_8theta(const QuadNum& x);

}  // namespace su21
