#pragma once
// Arithmetic in F_p and F_{p^2}, plus univariate polynomial utilities
// (gcd, roots, irreducible factorization) over those fields.
//
// F_{p^2} is realized as F_p[alpha], alpha^2 = a with a a fixed non-square,
// the smallest positive one unless stated otherwise.

#include <optional>
#include <vector>

#include "mck/util.hpp"

namespace mck {

// Element of F_p or F_{p^2}; f == 1 means c1 is identically 0.
struct Fq {
  int64_t p = 0;
  int f = 1;
  int64_t a = 0;  // non-square defining F_{p^2}; 0 when f == 1
  int64_t c0 = 0, c1 = 0;

  Fq() = default;
  Fq(int64_t p_, int64_t v) : p(p_), f(1), a(0), c0(imod(v, p_)), c1(0) {}
  Fq(int64_t p_, int64_t a_, int64_t v0, int64_t v1)
      : p(p_), f(2), a(imod(a_, p_)), c0(imod(v0, p_)), c1(imod(v1, p_)) {}

  bool is_zero() const { return c0 == 0 && c1 == 0; }
  bool in_prime_field() const { return c1 == 0; }
  int64_t q() const { return f == 1 ? p : p * p; }

  friend bool operator==(const Fq& x, const Fq& y) {
    return x.p == y.p && x.c0 == y.c0 && x.c1 == y.c1;
  }
  friend bool operator!=(const Fq& x, const Fq& y) { return !(x == y); }
  bool operator<(const Fq& y) const {
    return c0 != y.c0 ? c0 < y.c0 : c1 < y.c1;
  }
};

namespace detail {
inline void check_compat(const Fq& x, const Fq& y) {
  require(x.p == y.p, "Fq: mixed characteristics");
  require(x.f == 1 || y.f == 1 || x.a == y.a, "Fq: mixed quadratic models");
}
inline Fq promote(const Fq& x, const Fq& like) {
  if (x.f == like.f || like.f == 1) return x;
  return Fq(x.p, like.a, x.c0, x.c1);
}
}  // namespace detail

inline Fq operator+(const Fq& x, const Fq& y) {
  detail::check_compat(x, y);
  Fq r = x.f >= y.f ? x : detail::promote(x, y);
  Fq s = x.f >= y.f ? detail::promote(y, x) : y;
  r.c0 = imod(r.c0 + s.c0, r.p);
  r.c1 = imod(r.c1 + s.c1, r.p);
  return r;
}
inline Fq operator-(const Fq& x) {
  Fq r = x;
  r.c0 = imod(-r.c0, r.p);
  r.c1 = imod(-r.c1, r.p);
  return r;
}
inline Fq operator-(const Fq& x, const Fq& y) { return x + (-y); }
inline Fq operator*(const Fq& x, const Fq& y) {
  detail::check_compat(x, y);
  Fq r = x.f >= y.f ? x : detail::promote(x, y);
  Fq s = x.f >= y.f ? detail::promote(y, x) : y;
  int64_t p = r.p;
  int64_t u0 = ((__int128)r.c0 * s.c0 + (__int128)r.a % p * r.c1 % p * s.c1) % p;
  int64_t u1 = ((__int128)r.c0 * s.c1 + (__int128)r.c1 * s.c0) % p;
  r.c0 = imod(u0, p);
  r.c1 = imod(u1, p);
  return r;
}

inline Fq fq_conj(const Fq& x) {  // Frobenius x -> x^p
  Fq r = x;
  r.c1 = imod(-r.c1, r.p);
  return r;
}
inline int64_t fq_norm(const Fq& x) {  // to F_p
  Fq n = x * fq_conj(x);
  return n.c0;
}
inline int64_t fq_trace(const Fq& x) { return imod(2 * x.c0, x.p); }

inline Fq fq_inv(const Fq& x) {
  require(!x.is_zero(), "Fq: division by zero");
  if (x.f == 1 || x.c1 == 0) {
    Fq r = x;
    int64_t i = mod_inv(x.c0, x.p);
    r.c0 = i; r.c1 = 0;
    return r;
  }
  int64_t n = fq_norm(x);
  Fq r = fq_conj(x);
  int64_t i = mod_inv(n, x.p);
  r.c0 = (__int128)r.c0 * i % x.p;
  r.c1 = (__int128)r.c1 * i % x.p;
  return r;
}
inline Fq operator/(const Fq& x, const Fq& y) { return x * fq_inv(y); }

inline Fq fq_pow(Fq b, int64_t e) {
  require(!(b.is_zero() && e < 0), "fq_pow: zero to negative power");
  if (e < 0) { b = fq_inv(b); e = -e; }
  Fq r = b; r.c0 = 1; r.c1 = 0;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

// k_* protocol (see poly.hpp) so generic polynomial/linear algebra works.
inline Fq k_zero(const Fq& like) {
  Fq z = like;
  z.c0 = 0;
  z.c1 = 0;
  return z;
}
inline Fq k_one(const Fq& like) {
  Fq z = like;
  z.c0 = 1;
  z.c1 = 0;
  return z;
}
inline bool k_is_zero(const Fq& x) { return x.is_zero(); }
inline Fq k_inv(const Fq& x) { return fq_inv(x); }

// Square root in F_p (p odd), if any.
std::optional<int64_t> sqrt_mod_p(int64_t a, int64_t p);

// --- dense univariate polynomials over Fq (coefficient vector, c[i] x^i) ---

using FqPoly = std::vector<Fq>;

FqPoly fqp_trim(FqPoly f);
int fqp_deg(const FqPoly& f);  // deg(0) = -1
FqPoly fqp_add(const FqPoly& f, const FqPoly& g);
FqPoly fqp_sub(const FqPoly& f, const FqPoly& g);
FqPoly fqp_mul(const FqPoly& f, const FqPoly& g);
FqPoly fqp_rem(FqPoly f, const FqPoly& g);
FqPoly fqp_gcd(FqPoly f, FqPoly g);  // monic gcd
FqPoly fqp_monic(FqPoly f);
FqPoly fqp_powmod(FqPoly b, ZZ e, const FqPoly& m);
Fq fqp_eval(const FqPoly& f, const Fq& x);
FqPoly fqp_deriv(const FqPoly& f);

// All roots in the coefficient field (with multiplicity stripped).
std::vector<Fq> fqp_roots(const FqPoly& f);

// Irreducible factorization (squarefree input not required).
// Returns (factor, multiplicity) pairs, factors monic.
std::vector<std::pair<FqPoly, int>> fqp_factor(const FqPoly& f);

}  // namespace mck
