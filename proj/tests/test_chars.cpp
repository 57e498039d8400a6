#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mck/chars.hpp"

using namespace mck;

TEST_CASE("character evaluation") {
  auto chi7 = DirichletCharacter::quadratic(7);
  CHECK(chi7.evaluate(1) == nf_one(chi7.value_field()));
  CHECK(chi7.evaluate(-1) == nf(chi7.value_field(), -1));  // 7 = 3 mod 4
  for (long n = 1; n < 7; ++n) {
    QQ v = chi7.evaluate(n).rational_value();
    CHECK(v == QQ(legendre(n, 7)));
  }
  CHECK(chi7.evaluate(14).is_zero());

  // cubic eps mod 7 with eps(3) = zeta_3: eps(2) = zeta_3^2 since 2 = 3^2 mod 7
  auto eps = DirichletCharacter::from_value(7, 3, 3, 1);
  CHECK(eps.order == 3);
  auto C3 = NumberField::cyclotomic(3);
  CHECK(eps.evaluate(3) == nf_gen(C3));
  CHECK(eps.evaluate(2) == nf_pow(nf_gen(C3), 2));
  CHECK(eps.evaluate(1) == nf_one(C3));

  // complete multiplicativity on units
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    long m = 1 + rng.uniform(100), n2 = 1 + rng.uniform(100);
    if (igcd(m, 7) != 1 || igcd(n2, 7) != 1) continue;
    CHECK(eps.evaluate(m * n2) == eps.evaluate(m) * eps.evaluate(n2));
  }
}

TEST_CASE("gauss sums") {
  // trivial chi mod p: g = -1
  for (long p : {3L, 5L, 7L}) {
    auto triv = DirichletCharacter::trivial(p);
    NFElement g = gauss_sum(triv, AdditiveCharacter(p, 1));
    CHECK(g == nf(g.F, -1));
  }
  // quadratic chi mod 5: g^2 = 5
  auto chi5 = DirichletCharacter::quadratic(5);
  NFElement g5 = gauss_sum(chi5, AdditiveCharacter(5, 1));
  CHECK(g5 * g5 == nf(g5.F, 5));

  // all primitive chi mod p in {3,5,7}: g(chi) g(chibar) = chi(-1) p
  for (long p : {3L, 5L, 7L}) {
    for (long d = 2; d <= p - 1; ++d) {
      if ((p - 1) % d != 0) continue;
      for (long k = 1; k < d; ++k) {
        if (igcd(k, d) != 1) continue;
        auto chi = DirichletCharacter::of_order(p, d, k);
        auto psi = AdditiveCharacter(p, 1);
        NFElement g = gauss_sum(chi, psi);
        NFElement gbar = gauss_sum(chi.inverse(), psi);
        NFElement prod = g * gbar;
        NFElement expect = QQ(p) * chi.chi_minus_one();
        CHECK(prod == expect);
      }
    }
  }
}

TEST_CASE("decompose CRT") {
  // chi mod 35 = quadratic at 5 times cubic at 7
  DirichletCharacter chi;
  chi.modulus = 35;
  chi.order = 6;
  {
    auto t5 = DirichletCharacter::trivial(5);
    auto t7 = DirichletCharacter::trivial(7);
    DirichletCharacter::Local l5 = t5.locals[0], l7 = t7.locals[0];
    l5.e = 3;  // chi_5(gen) = zeta_6^3 = -1 (quadratic)
    l7.e = 2;  // chi_7(gen) = zeta_6^2 = zeta_3 (cubic)
    chi.locals = {l5, l7};
  }
  auto parts = decompose(chi);
  REQUIRE(parts.size() == 2);
  CHECK(parts.at(5).order == 2);
  CHECK(parts.at(7).order == 3);
  // CRT consistency at random n
  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    long n = 1 + rng.uniform(1000);
    if (igcd(n, 35) != 1) continue;
    NFElement lhs = chi.evaluate(n);
    NFElement rhs = parts.at(5).evaluate(n) * parts.at(7).evaluate(n);
    CHECK(lhs == rhs);
  }
  // trivial character decomposes trivially
  auto triv = DirichletCharacter::trivial(35);
  for (auto& [p, part] : decompose(triv)) CHECK(part.is_trivial());
  // prime modulus: single component equal to chi
  auto eps = DirichletCharacter::from_value(7, 3, 3, 1);
  auto dp = decompose(eps);
  REQUIRE(dp.size() == 1);
  for (long n = 1; n < 7; ++n) CHECK(dp.at(7).evaluate(n) == eps.evaluate(n));
}

TEST_CASE("adelization") {
  // trivial chi: omega = 1 everywhere
  auto triv = DirichletCharacter::trivial(7);
  auto w = adelize(triv);
  CHECK(w.at_uniformizer(5) == nf_one(NumberField::rational()));
  CHECK(w.at_unit(7, 3) == nf_one(triv.value_field()));

  // cubic eps mod 7: omega_5(uniformizer) = eps(5)
  auto eps = DirichletCharacter::from_value(7, 3, 3, 1);
  auto we = adelize(eps);
  CHECK(we.at_uniformizer(5) == eps.evaluate(5));
  // unit at ramified prime: factors through eps^{-1}
  for (long u = 1; u < 7; ++u)
    CHECK(we.at_unit(7, u) == eps.inverse().evaluate(u));
  // uniformizer at ramified prime is undefined
  CHECK_THROWS_AS(we.at_uniformizer(7), mck::error);
}
