#pragma once
// Exact linear-algebra recognition of q-series inside function fields:
// rational functions of a hauptmodul, and P0(h) + P1(h) g + P2(h) g^2
// decompositions on a cyclic triple cover split by exponent classes mod 3.

#include <optional>

#include "mck/numfield.hpp"
#include "mck/poly.hpp"
#include "mck/qseries.hpp"

namespace mck {

struct RationalFn {
  Poly<NFElement> num{nf_zero(NumberField::rational())};
  Poly<NFElement> den{nf_one(NumberField::rational())};
  // target = num(t)/den(t), den monic after reduction
  int degree() const { return std::max(num.deg(), den.deg()); }
};

// Find target = num(t)/den(t) with deg <= bound, requiring at least `surplus`
// more matched coefficients than unknowns. multiplier (optional) asks for
// target * den(t) = multiplier * num(t) instead.
std::optional<RationalFn> recognize_rational_function(const QSeries& target,
                                                      const QSeries& t, int bound,
                                                      const QSeries* multiplier = nullptr,
                                                      int surplus = 8);

// Evaluate a rational function on series (exact).
QSeries rationalfn_eval(const RationalFn& fn, const QSeries& t);

struct TripleCoverPiece {
  int residue;       // exponent class mod 3
  int g_power;       // 0, 1 or 2
  RationalFn fn;     // coefficient rational function of h
};
struct TripleCoverExpr {
  std::vector<TripleCoverPiece> pieces;
  // sqrt structure of the class-0 piece when it is a perfect square P0(h)^2
  std::optional<RationalFn> piece0_sqrt;
};

// Decompose target (exponents mixed mod 3) as R0(h) + R1(h) g + R2(h) g^2,
// where h has exponents = 0 mod 3 and g = 1 mod 3. Searches minimal degrees
// up to bound per piece; fails if insufficient precision or no solution.
std::optional<TripleCoverExpr> recognize_in_function_field(const QSeries& target,
                                                           const QSeries& h,
                                                           const QSeries& g, int bound);

// Assemble the series back from the expression (round-trip check helper).
QSeries triple_cover_eval(const TripleCoverExpr& expr, const QSeries& h, const QSeries& g);

}  // namespace mck
