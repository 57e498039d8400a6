#pragma once
// Elliptic curves over Q in long Weierstrass form: exact group law, rational
// torsion, reduction types and Hecke coefficients a_n via point counting.

#include <optional>

#include "mck/util.hpp"

namespace mck {

struct ECPoint {
  bool infinity = true;
  QQ x, y;
  ECPoint() = default;
  ECPoint(QQ x_, QQ y_) : infinity(false), x(std::move(x_)), y(std::move(y_)) {}
  friend bool operator==(const ECPoint& p, const ECPoint& q) {
    if (p.infinity || q.infinity) return p.infinity == q.infinity;
    return p.x == q.x && p.y == q.y;
  }
};

struct ECCurve {
  QQ a1, a2, a3, a4, a6;

  QQ b2() const { return a1 * a1 + 4 * a2; }
  QQ b4() const { return 2 * a4 + a1 * a3; }
  QQ b6() const { return a3 * a3 + 4 * a6; }
  QQ b8() const {
    return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  }
  QQ c4() const { return b2() * b2() - 24 * b4(); }
  QQ c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }
  QQ disc() const {
    QQ B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
    return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
  }
  QQ j_invariant() const { return c4() * c4() * c4() / disc(); }

  bool on_curve(const ECPoint& p) const {
    if (p.infinity) return true;
    QQ lhs = p.y * p.y + a1 * p.x * p.y + a3 * p.y;
    QQ rhs = p.x * p.x * p.x + a2 * p.x * p.x + a4 * p.x + a6;
    return lhs == rhs;
  }
};

ECPoint ec_neg(const ECCurve& e, const ECPoint& p);
ECPoint ec_add(const ECCurve& e, const ECPoint& p, const ECPoint& q);
ECPoint ec_mul(const ECCurve& e, long n, const ECPoint& p);

// Reduction data at a prime.
enum class ReductionType { Good, SplitMult, NonsplitMult, Additive };
ReductionType reduction_type(const ECCurve& e, int64_t p);

// Number of points of E(F_p) (smooth model; the given model must be
// p-minimal and have good reduction at p).
int64_t ec_count_fp(const ECCurve& e, int64_t p);

// Trace of Frobenius at any prime (for bad p: 1 split, -1 nonsplit, 0 additive).
int64_t ec_ap(const ECCurve& e, int64_t p);

// Hecke coefficients a_1..a_n of the attached newform (by multiplicativity).
std::vector<ZZ> ec_an(const ECCurve& e, long nmax);

struct TorsionGroup {
  std::vector<long> invariants;  // e.g. {2, 8} for Z/2 x Z/8 (divisibility order)
  std::vector<ECPoint> points;   // all torsion points
};
// Rational torsion by reduction bounds at two good primes plus a bounded
// integral-point search on a scaled integral model.
TorsionGroup ec_torsion(const ECCurve& e);

// Order of a point if it is torsion (<= 16), else nullopt.
std::optional<long> ec_point_order(const ECCurve& e, const ECPoint& p);

}  // namespace mck
