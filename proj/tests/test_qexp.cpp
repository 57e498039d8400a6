#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mck/ec.hpp"
#include "mck/qseries.hpp"

using namespace mck;

namespace {
QSeries from_an(const std::vector<ZZ>& a, long prec) {
  auto F = NumberField::rational();
  QSeries f(F, 1, prec);
  for (long n = 1; n < prec && n < (long)a.size(); ++n)
    f.set(n, nf(F, QQ(a[n])));
  return f;
}
}  // namespace

TEST_CASE("series ring operations") {
  auto F = NumberField::rational();
  QSeries f(F, 1, 10), g(F, 1, 10);
  f.set(1, nf_one(F));
  f.set(2, nf_one(F));
  g.set(1, nf_one(F));
  g.set(2, nf(F, -1));
  QSeries p = qs_mul(f, g);  // (q+q^2)(q-q^2) = q^2 - q^4
  CHECK(p.coeff(2) == nf_one(F));
  CHECK(p.coeff(3).is_zero());
  CHECK(p.coeff(4) == nf(F, -1));

  // invert_unit(1-q) = geometric series
  QSeries u(F, 1, 12);
  u.set(0, nf_one(F));
  u.set(1, nf(F, -1));
  QSeries iu = qs_invert_unit(u);
  for (long n = 0; n < 12; ++n) CHECK(iu.coeff(n) == nf_one(F));

  // f * invert_unit(f) = 1 for a random-ish unit
  QSeries w(F, 1, 15);
  w.set(0, nf(F, 3));
  w.set(1, nf(F, QQ(1) / 2));
  w.set(4, nf(F, -7));
  QSeries prod = qs_mul(w, qs_invert_unit(w));
  CHECK(prod.coeff(0) == nf_one(F));
  for (long n = 1; n < prod.prec; ++n) CHECK(prod.coeff(n).is_zero());
}

TEST_CASE("scale_variable and substitute") {
  auto F = NumberField::rational();
  QSeries f(F, 1, 3);
  f.set(1, nf_one(F));
  f.set(2, nf(F, -1));
  QSeries g = qs_scale_variable(f, 5);  // q^{1/5} - q^{2/5} + O(q^{3/5})
  CHECK(g.den == 5);
  CHECK(g.coeff(1) == nf_one(F));
  CHECK(g.coeff(2) == nf(F, -1));
  CHECK(g.prec == 3);
  // scale then substitute q -> q^5 is the identity
  QSeries h = qs_substitute_power(g, 5);
  CHECK(h.den == 1);
  CHECK(qs_equal(h, f));
}

TEST_CASE("residue_split") {
  auto F = NumberField::rational();
  QSeries f(F, 7, 20 * 7);
  f.set(1, nf_one(F));   // q^{1/7}
  f.set(2, nf_one(F));   // q^{2/7}
  f.set(8, nf_one(F));   // q^{8/7}
  auto parts = qs_residue_split(f, 7);
  CHECK(parts[1].c.size() == 2);
  CHECK(parts[2].c.size() == 1);
  // sum is f
  QSeries sum(F, 7, f.prec);
  for (auto& p : parts) sum = qs_add(sum, p);
  CHECK(qs_equal(sum, f));

  // f_i(z-1) = zeta^{-i} f_i(z): twisting exponents by zeta_7 multiplies
  // the i-th component by zeta_7^i
  auto C7 = NumberField::cyclotomic(7);
  NFElement z7 = nf_gen(C7);
  for (long i : {1L, 2L}) {
    QSeries tw = qs_twist_exponents(parts[i], z7);
    QSeries expected = qs_scal(nf_pow(z7, i), parts[i]);
    CHECK(qs_equal(tw, expected));
  }
}

TEST_CASE("classical series") {
  long prec = 40;
  QSeries e4 = classical_series(ClassicalSeries::E4, prec);
  QSeries e6 = classical_series(ClassicalSeries::E6, prec);
  QSeries dl = classical_series(ClassicalSeries::Delta, prec);
  auto F = NumberField::rational();
  CHECK(dl.coeff(1) == nf_one(F));
  CHECK(dl.coeff(2) == nf(F, -24));
  CHECK(dl.coeff(3) == nf(F, 252));

  // E4^3 - E6^2 = 1728 Delta
  QSeries lhs = qs_sub(qs_pow(e4, 3), qs_mul(e6, e6));
  QSeries rhs = qs_scal(QQ(1728), dl);
  CHECK(qs_equal(lhs, rhs));

  QSeries j = classical_series(ClassicalSeries::J, 30);
  CHECK(j.min_exp() == -1);
  CHECK(j.coeff(-1) == nf_one(F));
  CHECK(j.coeff(0) == nf(F, 744));
  CHECK(j.coeff(1) == nf(F, 196884));

  // j * Delta = E4^3
  QSeries jd = qs_mul(j, classical_series(ClassicalSeries::Delta, 32));
  QSeries e4c = qs_pow(classical_series(ClassicalSeries::E4, 32), 3);
  CHECK(qs_equal(jd, e4c));
}

TEST_CASE("conductor 49 curve coefficients by point counting") {
  // y^2 + xy = x^3 - x^2 - 2x - 1
  ECCurve e{QQ(1), QQ(-1), QQ(0), QQ(-2), QQ(-1)};
  auto a = ec_an(e, 20);
  CHECK(a[2] == 1);
  CHECK(a[4] == -1);
  CHECK(a[7] == 0);   // additive at 7
  CHECK(a[8] == -3);
  CHECK(a[9] == -3);
  CHECK(a[11] == 4);
  CHECK(a[3] == 0);
  CHECK(a[5] == 0);
  CHECK(a[13] == 0);  // inert primes of Q(sqrt(-7)) have a_p = 0 (CM)
}

TEST_CASE("weierstrass ODE solver leading terms and residual") {
  auto F = NumberField::rational();
  // simple omega = q (exactly), curve y^2 + xy = x^3 - x^2 - 2x - 1
  ECCurve e{QQ(1), QQ(-1), QQ(0), QQ(-2), QQ(-1)};
  auto a = ec_an(e, 30);
  QSeries omega = from_an(a, 25);
  WeierstrassODE cur{nf(F, e.a1), nf(F, e.a2), nf(F, e.a3), nf(F, e.a4), nf(F, e.a6)};
  auto [x, y] = solve_weierstrass_ode(omega, cur);
  CHECK(x.min_exp() == -2);
  CHECK(x.coeff(-2) == nf_one(F));
  CHECK(y.min_exp() == -3);
  CHECK(y.coeff(-3) == nf(F, -1));
  // curve equation residual vanishes to working precision
  QSeries lhs = qs_add(qs_mul(y, y),
                       qs_add(qs_scal(nf(F, e.a1), qs_mul(x, y)), qs_scal(nf(F, e.a3), y)));
  QSeries rhs = qs_add(qs_pow(x, 3),
                       qs_add(qs_scal(nf(F, e.a2), qs_mul(x, x)),
                              qs_add(qs_scal(nf(F, e.a4), x),
                                     qs_scal(nf(F, e.a6), qs_one(F, x.prec)))));
  QSeries resid = qs_sub(lhs, rhs);
  CHECK(resid.is_zero());
  // differential equation: q dx/dq = omega (2y + a1 x + a3)
  QSeries de = qs_sub(qs_qddq(x),
                      qs_mul(omega, qs_add(qs_scal(QQ(2), y),
                                           qs_add(qs_scal(nf(F, e.a1), x),
                                                  qs_scal(nf(F, e.a3), qs_one(F, x.prec))))));
  CHECK(de.is_zero());

  // h = (1+y)/(2-x) = q^-1 + 2q + q^2 + 2q^3 + 3q^4 + 4q^5 + 5q^6 + 7q^7 + 8q^8
  QSeries one = qs_one(F, x.prec);
  QSeries two = qs_scal(QQ(2), one);
  QSeries h = qs_div(qs_add(one, y), qs_sub(two, x));
  std::vector<long> expect{1, 0, 2, 1, 2, 3, 4, 5, 7, 8};  // h_{-1}, h_0, ..., h_8
  for (long i = 0; i < (long)expect.size(); ++i)
    CHECK(h.coeff(i - 1) == nf(F, expect[i]));
  CHECK(h.coeff(0).is_zero());
}

TEST_CASE("qs_root cube root") {
  auto F = NumberField::rational();
  QSeries f(F, 1, 12);
  f.set(0, nf_one(F));
  f.set(1, nf(F, 3));
  f.set(2, nf(F, -2));
  QSeries c = qs_mul(f, qs_mul(f, f));
  QSeries r = qs_root(c, 3);
  CHECK(qs_equal(r, f));
  // with negative leading exponent
  QSeries g(F, 1, 9);
  g.set(-6, nf_one(F));
  g.set(-3, nf(F, 5));
  g.set(0, nf(F, 1));
  QSeries g3 = qs_pow(g, 3);
  QSeries rr = qs_root(g3, 3);
  CHECK(qs_equal(rr, g));
}
