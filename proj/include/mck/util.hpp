#pragma once
// Small integer utilities shared across the library.

#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace mck {

using QQ = mpq_class;
using ZZ = mpz_class;

struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw error(what);
}

inline int64_t imod(int64_t a, int64_t m) {
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

inline int64_t igcd(int64_t a, int64_t b) { return std::gcd(a, b); }
inline int64_t ilcm(int64_t a, int64_t b) { return std::lcm(a, b); }

inline int64_t ipow(int64_t b, int e) {
  int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline int64_t mod_pow(int64_t b, int64_t e, int64_t m) {
  b = imod(b, m);
  int64_t r = 1 % m;
  while (e > 0) {
    if (e & 1) r = (__int128)r * b % m;
    b = (__int128)b * b % m;
    e >>= 1;
  }
  return r;
}

inline int64_t mod_inv(int64_t a, int64_t m) {
  int64_t t = 0, nt = 1, r = m, nr = imod(a, m);
  while (nr != 0) {
    int64_t q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  require(r == 1, "mod_inv: not invertible");
  return imod(t, m);
}

inline bool is_prime(int64_t n) {
  if (n < 2) return false;
  for (int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Prime factorization by trial division; fine for the sizes we handle.
inline std::map<int64_t, int> factorize(int64_t n) {
  require(n != 0, "factorize(0)");
  if (n < 0) n = -n;
  std::map<int64_t, int> f;
  for (int64_t d = 2; d * d <= n; ++d)
    while (n % d == 0) { f[d]++; n /= d; }
  if (n > 1) f[n]++;
  return f;
}

inline int64_t euler_phi(int64_t n) {
  int64_t r = n;
  for (auto& [p, e] : factorize(n)) r = r / p * (p - 1);
  return r;
}

inline int64_t squarefree_part(int64_t n) {
  require(n != 0, "squarefree_part(0)");
  int64_t s = n < 0 ? -1 : 1;
  n = n < 0 ? -n : n;
  for (auto& [p, e] : factorize(n))
    if (e % 2 == 0) n /= ipow(p, e);
    else n /= ipow(p, e - 1);
  return s * n;
}

// Legendre symbol (a|p) for odd prime p.
inline int legendre(int64_t a, int64_t p) {
  a = imod(a, p);
  if (a == 0) return 0;
  return mod_pow(a, (p - 1) / 2, p) == 1 ? 1 : -1;
}

inline int64_t smallest_nonsquare(int64_t p) {
  for (int64_t a = 2; a < p; ++a)
    if (legendre(a, p) == -1) return a;
  throw error("smallest_nonsquare: none found");
}

// Deterministic xorshift generator so randomized checks are reproducible.
struct Rng {
  uint64_t s;
  explicit Rng(uint64_t seed = 0x9e3779b97f4a7c15ULL) : s(seed ? seed : 1) {}
  uint64_t next() {
    s ^= s << 13; s ^= s >> 7; s ^= s << 17;
    return s;
  }
  int64_t uniform(int64_t n) { return (int64_t)(next() % (uint64_t)n); }
};

inline QQ qq_pow(const QQ& b, long e) {
  QQ r = 1, x = b;
  bool inv = e < 0;
  unsigned long k = inv ? -e : e;
  while (k) {
    if (k & 1) r *= x;
    x *= x;
    k >>= 1;
  }
  if (inv) { require(r != 0, "qq_pow: zero base"); r = QQ(1) / r; }
  return r;
}

}  // namespace mck
