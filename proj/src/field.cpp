#include "su21/field.hpp"

#include <atomic>

namespace su21 {

namespace {
std::atomic<long> g_field_d{7};
}  // namespace

long field_d() { return g_field_d.load(std::memory_order_relaxed); }

bool is_squarefree(long d) {
  if (d <= 0) return false;
  for (long q = 2; q * q <= d; ++q) {
    if (d % (q * q) == 0) return false;
  }
  return true;
}

void set_field_d(long d) {
  if (!is_squarefree(d)) {
    throw DomainError("field parameter d must be square-free and positive");
  }
  g_field_d.store(d, std::memory_order_relaxed);
}

long val_p(const Rat& x, const Int& p) {
  if (x == 0) throw DomainError("val_p of zero");
  mpz_class tmp;
  long vn = static_cast<long>(
      mpz_remove(tmp.get_mpz_t(), x.get_num().get_mpz_t(), p.get_mpz_t()));
  long vd = static_cast<long>(
      mpz_remove(tmp.get_mpz_t(), x.get_den().get_mpz_t(), p.get_mpz_t()));
  return vn - vd;
}

Rat rat_pow(const Rat& x, long e) {
  if (e == 0) return Rat(1);
  if (x == 0 && e < 0) throw DomainError("negative power of zero");
  Rat base = e > 0 ? x : Rat(1) / x;
  unsigned long n = static_cast<unsigned long>(e > 0 ? e : -e);
  Rat out;
  mpz_pow_ui(out.get_num().get_mpz_t(), base.get_num().get_mpz_t(), n);
  mpz_pow_ui(out.get_den().get_mpz_t(), base.get_den().get_mpz_t(), n);
  out.canonicalize();
  return out;
}

std::string rat_to_string(const Rat& x) { return x.get_str(); }

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw DomainError("empty rational literal");
  Rat r;
  if (r.set_str(s, 10) != 0) {
    throw DomainError("malformed rational literal: " + s);
  }
  if (r.get_den() == 0) throw DomainError("zero denominator: " + s);
  r.canonicalize();
  if (r.get_den() < 0) {
    // normalize sign into the numerator
    r.get_num() = -r.get_num();
    r.get_den() = -r.get_den();
  }
  return r;
}

QuadNum theta() { return QuadNum(Rat(0), Rat(1)); }

bool operator==(const QuadNum& x, const QuadNum& y) {
  return x.a == y.a && x.b == y.b;
}
bool operator!=(const QuadNum& x, const QuadNum& y) { return !(x == y); }

QuadNum operator+(const QuadNum& x, const QuadNum& y) {
  return QuadNum(x.a + y.a, x.b + y.b);
}
QuadNum operator-(const QuadNum& x, const QuadNum& y) {
  return QuadNum(x.a - y.a, x.b - y.b);
}
QuadNum operator-(const QuadNum& x) { return QuadNum(-x.a, -x.b); }

QuadNum operator*(const QuadNum& x, const QuadNum& y) {
  const long d = field_d();
  return QuadNum(x.a * y.a - d * x.b * y.b, x.a * y.b + x.b * y.a);
}

QuadNum conj(const QuadNum& x) { return QuadNum(x.a, -x.b); }

Rat norm(const QuadNum& x) { return x.a * x.a + field_d() * x.b * x.b; }

Rat trace(const QuadNum& x) { return 2 * x.a; }

QuadNum inv(const QuadNum& x) {
  if (x.is_zero()) throw DomainError("inverse of zero in K");
  const Rat n = norm(x);
  return QuadNum(x.a / n, -x.b / n);
}

QuadNum operator/(const QuadNum& x, const QuadNum& y) { return x * inv(y); }

bool is_in_k(const QuadNum& x) { return x.b == 0; }
bool is_in_k_theta(const QuadNum& x) { return x.a == 0 && x.b != 0; }

std::string quad_to_string(const QuadNum& x) {
  if (x.b == 0) return rat_to_string(x.a);
  std::string bt = rat_to_string(x.b >= 0 ? x.b : Rat(-x.b)) + "*t";
  if (x.a == 0) return (x.b < 0 ? "-" : "") + bt;
  return rat_to_string(x.a) + (x.b < 0 ? "-" : "+") + bt;
}

QuadNum quad_from_string(const std::string& s) {
  if (s.empty()) throw DomainError("empty field-element literal");
  const auto tlen = std::string("*t").size();
  if (s.size() >= tlen && s.compare(s.size() - tlen, tlen, "*t") == 0) {
    std::string body = s.substr(0, s.size() - tlen);
    // split at the sign that separates the rational part from the
    // theta-coefficient (signs inside a rational only occur at its front)
    std::size_t split = std::string::npos;
    for (std::size_t i = 1; i < body.size(); ++i) {
      if (body[i] == '+' || body[i] == '-') split = i;
    }
    if (split == std::string::npos) {
      return QuadNum(Rat(0), rat_from_string(body));
    }
    Rat a = rat_from_string(body.substr(0, split));
    Rat b = rat_from_string(body.substr(split + 1));
    if (body[split] == '-') b = -b;
    return QuadNum(a, b);
  }
  return QuadNum(rat_from_string(s));
}

DeltaPair deltas(const QuadNum& lambda) {
  if (lambda.is_zero()) throw DomainError("deltas of zero");
  if (lambda.b == 0) {
    return DeltaPair{lambda * theta(), theta()};
  }
  // delta1 = -1/2 - a/(2 b theta), delta2 = -1/(2 b theta);
  // with 1/theta = -theta/d these are exact rational-coordinate values.
  const long d = field_d();
  Rat c = Rat(1) / (2 * lambda.b * d);  // delta2 = c * theta
  QuadNum delta2(Rat(0), c);
  QuadNum delta1 = QuadNum(Rat(-1, 2), lambda.a * c);
  return DeltaPair{delta1, delta2};
}

Rat delta2_coef(const QuadNum& lambda) {
  if (lambda.is_zero()) throw DomainError("delta2 of zero");
  if (lambda.b == 0) return Rat(1);
  return Rat(1) / (2 * lambda.b * field_d());
}

int y_of(const QuadNum& lambda) {
  if (lambda.is_zero()) throw DomainError("y of zero");
  return lambda.b == 0 ? 0 : 1;
}

bool is_integral(const QuadNum& x) {
  const long d = field_d();
  if ((-d) % 4 == -3 || (-d) % 4 == 1) {  // -d = 1 mod 4, i.e. d = 3 mod 4
    // basis {1, (1+theta)/2}: coordinates (a - b, 2b)
    Rat u = x.a - x.b;
    Rat v = 2 * x.b;
    return u.get_den() == 1 && v.get_den() == 1;
  }
  return x.a.get_den() == 1 && x.b.get_den() == 1;
}

bool is_integral_at(const QuadNum& x, const Int& p) {
  auto ok = [&](const Rat& r) { return r == 0 || val_p(r, p) >= 0; };
  if (p == 2 && field_d() % 4 == 3) {
    Rat u = x.a - x.b;
    Rat v = 2 * x.b;
    return ok(u) && ok(v);
  }
  return ok(x.a) && ok(x.b);
}

bool divisible_8theta(const QuadNum& x) {
  if (x.is_zero()) return true;
  // x / (8 theta) = x * (-theta/d) / 8
  const long d = field_d();
  QuadNum q = QuadNum(x.b / 8, -x.a / (8 * Rat(d)));
  return is_integral(q);
}

}  // namespace su21
