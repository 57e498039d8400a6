#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mck/fp.hpp"
#include "mck/linalg.hpp"
#include "mck/poly.hpp"

using namespace mck;

TEST_CASE("integer utilities") {
  CHECK(imod(-7, 5) == 3);
  CHECK(mod_pow(2, 10, 1000) == 24);
  CHECK(mod_inv(3, 7) == 5);
  CHECK(is_prime(71));
  CHECK(!is_prime(63));
  CHECK(squarefree_part(75) == 3);
  CHECK(squarefree_part(-12) == -3);
  CHECK(legendre(5, 11) == 1);
  CHECK(legendre(-1, 7) == -1);
  CHECK(smallest_nonsquare(7) == 3);
  CHECK(euler_phi(56) == 24);
}

TEST_CASE("Fq arithmetic in F_p and F_p2") {
  Fq a(7, 3), b(7, 5);
  CHECK((a + b).c0 == 1);
  CHECK((a * b).c0 == 1);
  CHECK(fq_inv(a).c0 == 5);

  int64_t ns = smallest_nonsquare(7);
  Fq x(7, ns, 2, 3), y(7, ns, 1, 6);
  Fq z = x * y;
  CHECK(fq_norm(x) == imod(2 * 2 - ns * 9, 7));
  CHECK((x * fq_inv(x)).c0 == 1);
  CHECK((x * fq_inv(x)).c1 == 0);
  // Frobenius is an automorphism
  CHECK(fq_conj(z) == fq_conj(x) * fq_conj(y));
  // x^(p^2) = x
  CHECK(fq_pow(x, 49) == x);
}

TEST_CASE("polynomial factorization over F_p") {
  // x^2 - 5 over F_11: roots 4, 7
  FqPoly f{Fq(11, -5), Fq(11, 0), Fq(11, 1)};
  auto roots = fqp_roots(f);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0].c0 == 4);
  CHECK(roots[1].c0 == 7);

  // (x^2+1)(x+3)^2 over F_7: x^2+1 irreducible (since -1 is not a QR mod 7)
  FqPoly g = fqp_mul(FqPoly{Fq(7, 1), Fq(7, 0), Fq(7, 1)},
                     fqp_mul(FqPoly{Fq(7, 3), Fq(7, 1)}, FqPoly{Fq(7, 3), Fq(7, 1)}));
  auto fac = fqp_factor(g);
  REQUIRE(fac.size() == 2);
  CHECK(fqp_deg(fac[0].first) == 1);
  CHECK(fac[0].second == 2);
  CHECK(fqp_deg(fac[1].first) == 2);
  CHECK(fac[1].second == 1);
}

TEST_CASE("polynomial factorization over F_p2") {
  int64_t p = 5, a = smallest_nonsquare(p);
  // alpha has minimal polynomial x^2 - a over F_5; over F_25 it splits
  FqPoly f{Fq(p, a, -a, 0), Fq(p, a, 0, 0), Fq(p, a, 1, 0)};
  auto roots = fqp_roots(f);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] * roots[0] == Fq(p, a, a, 0));
}

TEST_CASE("sqrt mod p") {
  CHECK(*sqrt_mod_p(5, 11) == 4);
  CHECK(!sqrt_mod_p(3, 7).has_value());
  auto r = sqrt_mod_p(5, 71);
  REQUIRE(r.has_value());
  CHECK(imod(*r * *r, 71) == 5);
}

TEST_CASE("Poly over QQ") {
  Poly<QQ> f(QQ(0), {QQ(-2), QQ(0), QQ(1)});  // x^2 - 2
  Poly<QQ> g(QQ(0), {QQ(1), QQ(1)});          // x + 1
  auto [q, r] = poly_divmod(f, g);
  CHECK(q.deg() == 1);
  CHECK(r.deg() == 0);
  CHECK(r.coeff(0) == QQ(-1));
  CHECK(f.eval(QQ(3)) == QQ(7));

  // gcd((x-1)(x-2), (x-2)(x-3)) = x-2
  Poly<QQ> a(QQ(0), {QQ(2), QQ(-3), QQ(1)});
  Poly<QQ> b(QQ(0), {QQ(6), QQ(-5), QQ(1)});
  auto d = poly_gcd(a, b);
  CHECK(d.deg() == 1);
  CHECK(d.coeff(0) == QQ(-2));

  // resultant(x^2-2, x-3) = 7
  Poly<QQ> h(QQ(0), {QQ(-3), QQ(1)});
  CHECK(poly_resultant(f, h) == QQ(7));
}

TEST_CASE("poly_sqrt") {
  Poly<QQ> s(QQ(0), {QQ(1), QQ(2), QQ(3)});
  Poly<QQ> s2 = s * s;
  // make monic: s2 has lead 9
  s2 = s2.scaled(QQ(1) / 9);
  Poly<QQ> out(QQ(0));
  REQUIRE(poly_sqrt(s2, out));
  CHECK((out * out - s2).is_zero());
}

TEST_CASE("linear algebra over QQ") {
  Mat<QQ> m(2, 3, QQ(0));
  // x + y + z = 0 ; x - y = 0 -> kernel span (1,1,-2)
  m.at(0, 0) = 1; m.at(0, 1) = 1; m.at(0, 2) = 1;
  m.at(1, 0) = 1; m.at(1, 1) = -1; m.at(1, 2) = 0;
  auto ker = kernel_basis(m);
  REQUIRE(ker.size() == 1);
  QQ x = ker[0][0], y = ker[0][1], z = ker[0][2];
  CHECK(x == y);
  CHECK(x + y + z == 0);

  Mat<QQ> m2(2, 2, QQ(0));
  m2.at(0, 0) = 2; m2.at(0, 1) = 1;
  m2.at(1, 0) = 1; m2.at(1, 1) = 1;
  auto sol = solve_linear(m2, {QQ(3), QQ(2)});
  REQUIRE(sol.has_value());
  CHECK((*sol)[0] == 1);
  CHECK((*sol)[1] == 1);
}
