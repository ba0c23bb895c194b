#include "su21/oracle.hpp"

#include <map>
#include <tuple>
#include <vector>

namespace su21 {

namespace {

// Replace the rational a by an integer in the same square class with
// p-valuation 0 or 1.
long reduce_coeff(const Rat& a, long p) {
  Int n = a.get_num() * a.get_den();
  Int p2 = Int(p) * p;
  while (n % p2 == 0) n /= p2;
  return n.get_si();
}

// Primitive solution of A x^2 + B y^2 = z^2 mod p^3, p odd.  Coefficient
// valuations are at most 1, so a primitive solution at this precision lifts
// by Hensel's lemma (derivative valuation at most 2 in the worst branch).
bool solvable_odd(long A, long B, long p) {
  long m = p * p * p;
  auto red = [m](long v) { return ((v % m) + m) % m; };
  long Am = red(A), Bm = red(B);
  std::vector<char> sq(m, 0), By2(m, 0);
  for (long z = 0; z < m; ++z) sq[z * z % m] = 1;
  for (long y = 0; y < m; ++y) By2[Bm * (y * y % m) % m] = 1;
  for (long y = 0; y < m; ++y)  // x = 1
    if (sq[(Am + Bm * (y * y % m)) % m]) return true;
  for (long x = 0; x < m; ++x)  // y = 1
    if (sq[(Bm + Am * (x * x % m)) % m]) return true;
  for (long x = 0; x < m; ++x)  // z = 1
    if (By2[red(1 - Am * (x * x % m))]) return true;
  return false;
}

// Primitive solution mod 32 (precision 2*2+1 covers derivative valuation 2).
bool solvable_even(long A, long B) {
  const long m = 32;
  auto red = [](long v) { return ((v % 32) + 32) % 32; };
  long Am = red(A), Bm = red(B);
  for (long x = 0; x < m; ++x)
    for (long y = 0; y < m; ++y) {
      long lhs = red(Am * x * x + Bm * y * y);
      for (long z = 0; z < m; ++z) {
        if (x % 2 == 0 && y % 2 == 0 && z % 2 == 0) continue;
        if (lhs == z * z % m) return true;
      }
    }
  return false;
}

}  // namespace

bool conic_solvable(const Rat& a, const Rat& b, const Place& v) {
  if (a == 0 || b == 0) throw DomainError("conic_solvable: zero coefficient");
  if (v.infinite) return a > 0 || b > 0;
  if (!v.p.fits_slong_p())
    throw DomainError("conic_solvable: prime too large for the search oracle");
  long p = v.p.get_si();
  long A = reduce_coeff(a, p), B = reduce_coeff(b, p);
  long m = p == 2 ? 32 : p * p * p;
  static std::map<std::tuple<long, long, long>, bool> memo;
  auto key = std::make_tuple(p, ((A % m) + m) % m, ((B % m) + m) % m);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  bool ok = p == 2 ? solvable_even(A, B) : solvable_odd(A, B, p);
  memo.emplace(key, ok);
  return ok;
}

int hilbert_via_conic(const Rat& a, const Rat& b, const Place& v) {
  return conic_solvable(a, b, v) ? 1 : -1;
}

}  // namespace su21
