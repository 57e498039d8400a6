#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mck/numfield.hpp"

using namespace mck;

TEST_CASE("quadratic field arithmetic") {
  auto F5 = NumberField::quadratic(5);
  NFElement s5 = nf_gen(F5);
  CHECK(s5 * s5 == nf(F5, 5));  // (sqrt 5)^2 = 5

  auto F2 = NumberField::quadratic(2);
  NFElement s2 = nf_gen(F2);
  // inv(1 + sqrt2) = -1 + sqrt2
  NFElement e = nf_one(F2) + s2;
  NFElement inv = nf_inv(e);
  CHECK(inv == s2 - nf_one(F2));
  CHECK((e * inv) == nf_one(F2));
}

TEST_CASE("cyclotomic field arithmetic") {
  auto F3 = NumberField::cyclotomic(3);
  NFElement z = nf_gen(F3);
  CHECK(nf_pow(z, 3) == nf_one(F3));           // zeta_3^3 = 1
  CHECK(z * z + z + nf_one(F3) == nf_zero(F3));  // minimal polynomial

  auto F7 = NumberField::cyclotomic(7);
  NFElement z7 = nf_gen(F7);
  NFElement sum = nf_zero(F7);
  for (int i = 0; i < 7; ++i) sum = sum + nf_pow(z7, i);
  CHECK(sum.is_zero());
}

TEST_CASE("galois conjugation") {
  auto F5 = NumberField::quadratic(5);
  NFElement s5 = nf_gen(F5);
  CHECK(galois_conjugate(s5, 1) == -s5);
  auto Fm7 = NumberField::quadratic(-7);
  NFElement x = nf(Fm7, 3) + QQ(2) * nf_gen(Fm7);
  CHECK(galois_conjugate(x, 1) == nf(Fm7, 3) - QQ(2) * nf_gen(Fm7));

  // involution and multiplicativity on random elements
  Rng rng(42);
  for (int t = 0; t < 20; ++t) {
    NFElement a(Fm7, {QQ(rng.uniform(19) - 9), QQ(rng.uniform(19) - 9)});
    NFElement b(Fm7, {QQ(rng.uniform(19) - 9), QQ(rng.uniform(19) - 9)});
    CHECK(galois_conjugate(galois_conjugate(a, 1), 1) == a);
    CHECK(galois_conjugate(a * b, 1) == galois_conjugate(a, 1) * galois_conjugate(b, 1));
  }

  // cyclotomic: zeta -> zeta^2 twice = zeta^4
  auto F7 = NumberField::cyclotomic(7);
  NFElement z = nf_gen(F7);
  NFElement c2 = galois_conjugate(z, 2);
  CHECK(c2 == nf_pow(z, 2));
  CHECK(galois_conjugate(c2, 2) == nf_pow(z, 4));
}

TEST_CASE("embeddings and composite fields") {
  // sqrt(5) embeds into Q(zeta_5)
  auto C5 = NumberField::cyclotomic(5);
  NFElement r5 = nf_sqrt(C5, 5);
  CHECK(r5 * r5 == nf(C5, 5));

  // sqrt(-7) in Q(zeta_7)
  auto C7 = NumberField::cyclotomic(7);
  NFElement rm7 = nf_sqrt(C7, -7);
  CHECK(rm7 * rm7 == nf(C7, -7));

  // sqrt(2) needs zeta_8
  auto C8 = NumberField::cyclotomic(8);
  NFElement r2 = nf_sqrt(C8, 2);
  CHECK(r2 * r2 == nf(C8, 2));

  // mixed arithmetic: zeta_3 * sqrt(5) lands in Q(zeta_15)
  auto F3 = NumberField::cyclotomic(3);
  auto F5 = NumberField::quadratic(5);
  NFElement prod = nf_gen(F3) * nf_gen(F5);
  CHECK(prod.F->param == 15);
  NFElement sq = prod * prod;  // zeta_3^2 * 5
  NFElement expect = QQ(5) * nf_pow(nf_embed(nf_gen(F3), prod.F), 2);
  CHECK(sq == expect);

  // sqrt(-3) = 1 + 2 zeta_3
  NFElement rm3 = nf_sqrt(F3, -3);
  CHECK(rm3 == nf_one(F3) + QQ(2) * nf_gen(F3));
}

TEST_CASE("field axioms on random triples") {
  auto F = NumberField::cyclotomic(12);
  Rng rng(7);
  auto rnd = [&] {
    std::vector<QQ> c;
    for (int i = 0; i < F->deg; ++i)
      c.emplace_back(QQ(rng.uniform(11) - 5) / QQ(1 + rng.uniform(3)));
    return NFElement(F, c);
  };
  for (int t = 0; t < 25; ++t) {
    NFElement a = rnd(), b = rnd(), c = rnd();
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    if (!a.is_zero()) CHECK(a * nf_inv(a) == nf_one(F));
  }
}

TEST_CASE("reduce_mod_prime") {
  auto F5 = NumberField::quadratic(5);
  // sqrt 5 mod 11 via root 4
  auto s = make_prime_split(F5, 11, 0);
  CHECK(s.f == 1);
  CHECK(s.gen_image.c0 == 4);  // roots of x^2-5 mod 11 are {4,7}, sorted
  CHECK(reduce_mod_prime(nf_gen(F5), s).c0 == 4);

  // 1/2 mod 7 = 4
  auto FQ = NumberField::rational();
  auto s7 = make_prime_split(FQ, 7);
  CHECK(reduce_mod_prime(nf(FQ, QQ(1) / 2), s7).c0 == 4);

  // denominator divisible by p rejected
  CHECK_THROWS_AS(reduce_mod_prime(nf(FQ, QQ(1) / 7), s7), mck::error);

  // homomorphism on random pairs, several p including inert ones
  for (int64_t p : {3, 7, 11, 71}) {
    if (p == 5) continue;
    auto F = NumberField::quadratic(5);
    auto sp = make_prime_split(F, p);
    Rng rng(p);
    for (int t = 0; t < 50; ++t) {
      NFElement a(F, {QQ(rng.uniform(30) - 15), QQ(rng.uniform(30) - 15)});
      NFElement b(F, {QQ(rng.uniform(30) - 15), QQ(rng.uniform(30) - 15)});
      CHECK(reduce_mod_prime(a + b, sp) == reduce_mod_prime(a, sp) + reduce_mod_prime(b, sp));
      CHECK(reduce_mod_prime(a * b, sp) == reduce_mod_prime(a, sp) * reduce_mod_prime(b, sp));
    }
  }

  // inert case: sqrt(5) mod 7 lives in F_49
  auto s49 = make_prime_split(F5, 7);
  CHECK(s49.f == 2);
  Fq im = s49.gen_image;
  CHECK(im * im == Fq(7, im.a, 5, 0));
}

TEST_CASE("cyclotomic reduction mod p") {
  // zeta_3 mod 7: roots of x^2+x+1 mod 7 are 2 and 4
  auto F3 = NumberField::cyclotomic(3);
  auto s = make_prime_split(F3, 7);
  CHECK(s.f == 1);
  int64_t r = s.gen_image.c0;
  CHECK(imod(r * r + r + 1, 7) == 0);
}

TEST_CASE("norm_fiber") {
  // p=7, c=1: 8 elements including 1 and -1
  auto f1 = norm_fiber(1, 7);
  CHECK(f1.size() == 8);
  int64_t a = smallest_nonsquare(7);
  CHECK(std::find(f1.begin(), f1.end(), Fq(7, a, 1, 0)) != f1.end());
  CHECK(std::find(f1.begin(), f1.end(), Fq(7, a, 6, 0)) != f1.end());

  auto f2 = norm_fiber(1, 5);
  CHECK(f2.size() == 6);

  // p=7, c=3: exhaustive scan cross check
  auto f3 = norm_fiber(3, 7);
  CHECK(f3.size() == 8);
  for (auto& t : f3) CHECK(fq_norm(t) == 3);

  // fibers partition F_{p^2}^x
  size_t total = 0;
  for (int64_t c = 1; c < 7; ++c) total += norm_fiber(c, 7).size();
  CHECK(total == 48);
}
