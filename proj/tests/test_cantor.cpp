#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "mck/cantor.hpp"
#include "mck/ec.hpp"

using namespace mck;

namespace {
Poly<QQ> sextic_72() {
  // y^2 = -7599x^6 - 3682x^5 - 1217x^4 - 284x^3 - 17x^2 - 2x + 1
  return Poly<QQ>(QQ(0), {QQ(1), QQ(-2), QQ(-17), QQ(-284), QQ(-1217), QQ(-3682), QQ(-7599)});
}

struct Div {
  std::vector<QQ> u, v;  // coefficients low to high
};
std::vector<Div> printed_divisors() {
  return {
      {{QQ(3) / 50, QQ(7) / 50, 1}, {QQ(-121) / 2500, QQ(701) / 2500}},
      {{0, 0, 1}, {1, -1}},
      {{QQ(3) / 58, QQ(5) / 58, 1}, {QQ(-905) / 3364, QQ(-3345) / 3364}},
      {{QQ(1) / 19, QQ(4) / 19, 1}, {QQ(72) / 361, QQ(-776) / 361}},
      {{QQ(1) / 8, QQ(1) / 8, 1}, {QQ(145) / 64, QQ(-55) / 64}},
      {{QQ(1) / 15, QQ(2) / 15, 1}, {QQ(-14) / 75, QQ(2) / 75}},
      {{0, QQ(1) / 3, 1}, {-1, -3}},
      {{QQ(1) / 17, QQ(2) / 17, 1}, {0, 0}},
  };
}
}  // namespace

TEST_CASE("printed Mumford divisors are valid; group of order 16") {
  auto F = NumberField::rational();
  Poly<NFElement> f(nf_zero(F));
  for (auto& c : sextic_72().c) f.c.push_back(nf(F, c));
  f.trim();
  auto curve = g2_curve(f);  // lead -7599 is not a square: affine classes only
  std::vector<G2Class<NFElement>> gens;
  for (auto& d : printed_divisors()) {
    Poly<NFElement> u(nf_zero(F)), v(nf_zero(F));
    for (auto& c : d.u) u.c.push_back(nf(F, c));
    for (auto& c : d.v) v.c.push_back(nf(F, c));
    u.trim();
    v.trim();
    REQUIRE(mumford_valid(curve, u, v));
    G2Class<NFElement> cl;
    cl.even_model = true;
    cl.U = u;
    cl.V = v;
    cl.bplus = 0;
    cl.bminus = 0;
    gens.push_back(cl);
  }
  // counter-example: (x^2, x) is not valid
  {
    Poly<NFElement> u(nf_zero(F), {nf_zero(F), nf_zero(F), nf_one(F)});
    Poly<NFElement> v(nf_zero(F), {nf_zero(F), nf_one(F)});
    CHECK(!mumford_valid(curve, u, v));
  }
  // the v = 0 class is 2-torsion and is the unique involution-stable one
  int stable = 0, vzero_idx = -1;
  for (size_t i = 0; i < gens.size(); ++i) {
    if (g2_equal(gens[i], g2_neg(curve, gens[i]))) {
      stable++;
      vzero_idx = (int)i;
    }
  }
  CHECK(stable == 1);
  CHECK(gens[(size_t)vzero_idx].V.is_zero());
  CHECK(g2_mul(curve, 2, gens[(size_t)vzero_idx]).is_zero());

  // D + identity = D, D + (-D) = 0
  for (auto& g : gens) {
    CHECK(g2_equal(g2_add(curve, g, g2_zero(curve)), g));
    CHECK(g2_add(curve, g, g2_neg(curve, g)).is_zero());
  }

  // closure of {printed} U {involution images}: exactly 16 classes
  std::vector<G2Class<NFElement>> all{g2_zero(curve)};
  auto contains = [&](const G2Class<NFElement>& c) {
    for (auto& x : all)
      if (g2_equal(x, c)) return true;
    return false;
  };
  std::vector<G2Class<NFElement>> work = gens;
  for (auto& g : gens) work.push_back(g2_neg(curve, g));
  for (auto& g : work)
    if (!contains(g)) all.push_back(g);
  CHECK(all.size() == 16);  // 1 + 15 rational classes
  bool grew = true;
  while (grew) {
    grew = false;
    size_t n = all.size();
    for (size_t i = 0; i < n && !grew; ++i)
      for (size_t j = i; j < n; ++j) {
        G2Class<NFElement> s = g2_add(curve, all[i], all[j]);
        if (!contains(s)) {
          all.push_back(s);
          grew = true;
          break;
        }
      }
  }
  CHECK(all.size() == 16);
  // rational torsion injects into Jac(F_p) at good odd primes
  auto j1 = g2_jacobian_order(sextic_72(), 11);
  auto j2 = g2_jacobian_order(sextic_72(), 13);
  CHECK(j1.order % 16 == 0);
  CHECK(j2.order % 16 == 0);
  CHECK(igcd(j1.order, j2.order) % 16 == 0);
}

TEST_CASE("Jacobian orders within Weil bounds and L-palindrome") {
  Poly<QQ> f = sextic_72();
  for (int64_t p : {11, 13, 17, 23}) {
    auto jo = g2_jacobian_order(f, p);
    double sp = std::sqrt((double)p);
    double lo = std::pow(sp - 1, 4), hi = std::pow(sp + 1, 4);
    CHECK((double)jo.order >= lo);
    CHECK((double)jo.order <= hi);
    // |s1| <= 4 sqrt p, |s2| <= 6p-ish (Weil)
    CHECK(std::abs((double)jo.s1) <= 4 * sp + 1e-9);
  }
  // elliptic (degenerate) input rejected
  Poly<QQ> cubic(QQ(0), {1, 0, 0, 1});
  CHECK_THROWS_AS(g2_jacobian_order(cubic, 11), mck::error);
}

TEST_CASE("group law over F_p: axioms and annihilation by the group order") {
  // even model with split infinity: y^2 = x^6 + 3x^4 + x + 4 over F_11 etc.
  for (int64_t p : {11, 13}) {
    Fq ex(p, 0);
    Poly<Fq> f(ex, {Fq(p, 4), Fq(p, 1), Fq(p, 0), Fq(p, 0), Fq(p, 3), Fq(p, 0), Fq(p, 1)});
    if (poly_gcd(f, f.derivative()).deg() != 0) continue;
    auto curve = g2_curve(f, std::optional<Fq>(Fq(p, 1)));
    // order of the Jacobian
    Poly<QQ> fq(QQ(0), {4, 1, 0, 0, 3, 0, 1});
    long order = g2_jacobian_order(fq, p).order;
    // random affine points
    std::vector<std::pair<Fq, Fq>> pts;
    for (int64_t x = 0; x < p && pts.size() < 12; ++x) {
      Fq fx = f.eval(Fq(p, x));
      if (fx.is_zero()) { pts.push_back({Fq(p, x), Fq(p, 0)}); continue; }
      auto r = sqrt_mod_p(fx.c0, p);
      if (r) pts.push_back({Fq(p, x), Fq(p, *r)});
    }
    REQUIRE(pts.size() >= 4);
    Rng rng(p);
    std::vector<G2Class<Fq>> cls;
    for (int t = 0; t < 6; ++t) {
      auto A = pts[rng.uniform((long)pts.size())];
      auto B = pts[rng.uniform((long)pts.size())];
      cls.push_back(g2_class_from_points(curve, {A, B}));
    }
    cls.push_back(g2_infinity_difference(curve));
    for (auto& a : cls) {
      // order annihilates
      CHECK(g2_mul(curve, order, a).is_zero());
      CHECK(g2_add(curve, a, g2_neg(curve, a)).is_zero());
    }
    // associativity and commutativity on random triples
    for (int t = 0; t < 8; ++t) {
      auto& a = cls[rng.uniform((long)cls.size())];
      auto& b = cls[rng.uniform((long)cls.size())];
      auto& c = cls[rng.uniform((long)cls.size())];
      CHECK(g2_equal(g2_add(curve, a, b), g2_add(curve, b, a)));
      CHECK(g2_equal(g2_add(curve, g2_add(curve, a, b), c),
                     g2_add(curve, a, g2_add(curve, b, c))));
    }
  }
}

TEST_CASE("odd-degree model sanity") {
  int64_t p = 13;
  Fq ex(p, 0);
  Poly<Fq> f(ex, {Fq(p, 1), Fq(p, 1), Fq(p, 0), Fq(p, 0), Fq(p, 0), Fq(p, 1)});
  auto curve = g2_curve(f);
  Poly<QQ> fq(QQ(0), {1, 1, 0, 0, 0, 1});
  long order = g2_jacobian_order(fq, p).order;
  std::vector<std::pair<Fq, Fq>> pts;
  for (int64_t x = 0; x < p && pts.size() < 8; ++x) {
    Fq fx = f.eval(Fq(p, x));
    if (fx.is_zero()) { pts.push_back({Fq(p, x), Fq(p, 0)}); continue; }
    auto r = sqrt_mod_p(fx.c0, p);
    if (r) pts.push_back({Fq(p, x), Fq(p, *r)});
  }
  REQUIRE(pts.size() >= 2);
  auto a = g2_class_from_points(curve, {pts[0], pts[1]});
  CHECK(g2_mul(curve, order, a).is_zero());
  CHECK(g2_add(curve, a, g2_neg(curve, a)).is_zero());
}
