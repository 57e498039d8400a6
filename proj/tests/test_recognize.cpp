#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mck/recognize.hpp"

using namespace mck;

namespace {
// Hauptmodul of X_0(m) as an eta quotient q^e prod((1-q^{mn})/(1-q^n))^k
QSeries eta_quotient_hauptmodul(long m, long k, long scale, long prec) {
  QSeries num = qs_substitute_power(euler_product(prec / m + 2), m);
  QSeries den = euler_product(prec + 2);
  QSeries r = qs_pow(num, k);
  r = qs_div(r, qs_pow(den, k));
  auto F = NumberField::rational();
  QSeries q(F, 1, prec + 2);
  q.set(1, nf(F, scale));
  return qs_mul(q, r);
}
}  // namespace

TEST_CASE("recognize j as a rational function of the X0(5) coordinate") {
  long prec = 60;
  // x = 125 q prod((1-q^{5n})/(1-q^n))^6 is the coordinate with j = (x^2+10x+5)^3/x
  QSeries x = eta_quotient_hauptmodul(5, 6, 125, prec);
  QSeries j = classical_series(ClassicalSeries::J, prec);
  std::optional<RationalFn> fn;
  for (int b = 1; b <= 6 && !fn; ++b) fn = recognize_rational_function(j, x, b);
  REQUIRE(fn.has_value());
  CHECK(fn->degree() == 6);
  // expected: num = (x^2+10x+5)^3, den = x
  auto F = NumberField::rational();
  Poly<NFElement> quad(nf_zero(F), {nf(F, 5), nf(F, 10), nf_one(F)});
  Poly<NFElement> num = quad * quad * quad;
  Poly<NFElement> den = Poly<NFElement>::x(nf_zero(F));
  // fn is normalized with monic den; den = x is monic already
  CHECK(fn->den.deg() == 1);
  CHECK((fn->den - den).is_zero());
  CHECK((fn->num - num).is_zero());
  // round trip
  QSeries back = rationalfn_eval(*fn, x);
  CHECK(qs_equal(back, j));
}

TEST_CASE("recognize trivial and product cases on the triple cover") {
  // synthetic h (0-graded) and g (1-graded)
  auto F = NumberField::rational();
  QSeries h(F, 1, 90);
  h.set(-3, nf_one(F));
  h.set(3, nf(F, 2));
  h.set(6, nf(F, 1));
  h.set(9, nf(F, 2));
  h.set(12, nf(F, 3));
  QSeries g(F, 1, 90);
  g.set(-2, nf_one(F));
  g.set(1, nf(F, -1));
  g.set(4, nf(F, 5));
  g.set(7, nf(F, 1));

  // target = h itself
  auto r1 = recognize_in_function_field(h, h, g, 3);
  REQUIRE(r1.has_value());
  CHECK(r1->pieces[0].fn.num.deg() == 1);
  CHECK(r1->pieces[0].fn.den.deg() == 0);
  CHECK(qs_equal(triple_cover_eval(*r1, h, g), h));

  // target = g*h: piece 1 should be h
  QSeries gh = qs_mul(g, h);
  auto r2 = recognize_in_function_field(gh, h, g, 3);
  REQUIRE(r2.has_value());
  CHECK(r2->pieces[1].fn.num.deg() == 1);
  CHECK(qs_equal(triple_cover_eval(*r2, h, g), gh));

  // mixed target with rational-function coefficients
  QSeries t = qs_add(qs_div(qs_one(F, 80), h), qs_mul(g, qs_mul(g, h)));
  auto r3 = recognize_in_function_field(t, h, g, 4);
  REQUIRE(r3.has_value());
  CHECK(qs_equal(triple_cover_eval(*r3, h, g), t));
}

TEST_CASE("perfect-square class-0 piece is detected") {
  auto F = NumberField::rational();
  QSeries h(F, 1, 120);
  h.set(-3, nf_one(F));
  h.set(3, nf(F, 1));
  h.set(9, nf(F, -2));
  QSeries g(F, 1, 120);
  g.set(-2, nf_one(F));
  g.set(1, nf(F, 3));
  // target = (h^2 + 2h + 3)^2 / (h-1)^2 + h g
  Poly<NFElement> p(nf_zero(F), {nf(F, 3), nf(F, 2), nf_one(F)});
  Poly<NFElement> d(nf_zero(F), {nf(F, -1), nf_one(F)});
  RationalFn sq{p * p, d * d};
  QSeries piece0 = rationalfn_eval(sq, h);
  QSeries target = qs_add(piece0, qs_mul(h, g));
  auto r = recognize_in_function_field(target, h, g, 5);
  REQUIRE(r.has_value());
  REQUIRE(r->piece0_sqrt.has_value());
  CHECK(r->piece0_sqrt->num.deg() == 2);
  CHECK(r->piece0_sqrt->den.deg() == 1);
}
