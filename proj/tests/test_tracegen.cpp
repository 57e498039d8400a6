#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mck/plane.hpp"
#include "mck/tracegen.hpp"

using namespace mck;

TEST_CASE("hauptmodul j-formulas are the classical ones") {
  auto f5 = x0_j_formula(5);
  // (t^2 + 10t + 5)^3 / t
  CHECK(f5.den.deg() == 1);
  CHECK(f5.num.coeff(0).rational_value() == 125);
  CHECK(f5.num.coeff(5).rational_value() == 30);
  auto f7 = x0_j_formula(7);
  // (t^2 + 13t + 49)(t^2 + 245t + 2401)^3 / t^7
  CHECK(f7.den.deg() == 7);
  CHECK(f7.num.coeff(0).rational_value() == QQ(ZZ("678223072849")));
  auto f9 = x0_j_formula(9);
  CHECK(f9.den.deg() == 11);  // t^9 (t^2 + 9t + 27)
}

TEST_CASE("fiber-product counts agree with full enumeration") {
  for (auto [m1, m2] : std::vector<std::pair<long, long>>{{5, 7}, {9, 7}}) {
    for (int64_t p : {11, 13, 17}) {
      auto j1 = x0_j_formula(m1), j2 = x0_j_formula(m2);
      auto split = make_prime_split(NumberField::rational(), p);
      // build the plane curve and enumerate with branch resolution
      Fq ex(p, 0);
      // reconstruct via count function vs direct enumeration
      long fast = count_x0_product_points(m1, m2, p, 1);
      // direct: build bivariate poly over F_p
      auto topoly = [&](const Poly<NFElement>& f) {
        FqPoly r;
        for (int i = 0; i <= f.deg(); ++i) {
          QQ q = f.coeff(i).rational_value();
          int64_t num = (int64_t)mpz_fdiv_ui(q.get_num().get_mpz_t(), (unsigned long)p);
          r.push_back(Fq(p, num));
        }
        return r;
      };
      FqPoly N1 = topoly(j1.num), D1 = topoly(j1.den);
      FqPoly N2 = topoly(j2.num), D2 = topoly(j2.den);
      int dx = std::max(fqp_deg(N1), fqp_deg(D1));
      int dy = std::max(fqp_deg(N2), fqp_deg(D2));
      Poly2<Fq> F(ex, dx, dy);
      for (int i = 0; i <= fqp_deg(N1); ++i)
        for (int j = 0; j <= fqp_deg(D2); ++j)
          F.at(i, j) = F.at(i, j) + N1[(size_t)i] * D2[(size_t)j];
      for (int i = 0; i <= fqp_deg(D1); ++i)
        for (int j = 0; j <= fqp_deg(N2); ++j)
          F.at(i, j) = F.at(i, j) - D1[(size_t)i] * N2[(size_t)j];
      auto pts = enumerate_biproj(biproj(F, dx, dy));
      CHECK((long)pts.size() == fast);
      (void)split;
    }
  }
}

TEST_CASE("level 35 orbit record") {
  auto rec = orbit35_record(120);
  CHECK(rec.hecke_field->param == 17);
  // printed expansions: f2 = 2q - q^2 - q^3 + 5q^4 + 2q^5 - 8q^6 - 2q^7 - 9q^8
  //                        + 3q^9 - q^10 + q^11, f3 = q^2 - q^3 - q^4 + q^8 + ...
  std::vector<long> f2{0, 2, -1, -1, 5, 2, -8, -2, -9, 3, -1, 1};
  std::vector<long> f3{0, 0, 1, -1, -1, 0, 0, 0, 1, 1, 1, 1};
  for (long n = 1; n <= 11; ++n) {
    NFElement tr = rec.an[(size_t)n] + galois_conjugate(rec.an[(size_t)n], 1);
    CHECK(tr == nf(rec.hecke_field, f2[(size_t)n]));
    CHECK(rec.an[(size_t)n].c[1] * 2 == QQ(f3[(size_t)n]));
  }
  // norm consistency against F_{p^2} counts for a few primes
  auto aE = ec_an(curve_35a(), 50);
  for (int64_t p : {13, 17, 19, 23}) {
    long c2 = count_x0_product_points(5, 7, p, 2);
    // p^2 + 1 - #X(F_p^2) = sum_f (a_f^2 - 2p)
    NFElement ap = rec.an[(size_t)p];
    NFElement sq = ap * ap + galois_conjugate(ap * ap, 1);
    QQ expected = QQ(aE[(size_t)p] * aE[(size_t)p] - 2 * p) + sq.c[0] * 2 / 2 - 4 * QQ(p);
    // sq is the trace of a^2: tr(a^2) = a^2 + conj
    QQ defect = QQ(p) * p + 1 - c2;
    CHECK(defect == QQ(aE[(size_t)p] * aE[(size_t)p] - 2 * p) + sq.c[0] - 4 * QQ(p));
    (void)expected;
  }
  // AL data: lambda_5 = -a_5 = -1, lambda_7 = -a_7 = +1 (paper: signs (-1, 1))
  CHECK(rec.al.at(5) == nf(rec.hecke_field, -1));
  CHECK(rec.al.at(7) == nf(rec.hecke_field, 1));
}

TEST_CASE("level 63 orbit record") {
  auto rec = orbit63_record(100);
  long d = rec.hecke_field->param;
  // inner twist structure: a_p rational at split p, pure sqrt(d) at inert p
  for (long p = 2; p <= 97; ++p) {
    if (!is_prime(p) || p == 3 || p == 7) continue;
    if (imod(p, 3) == 1) CHECK(rec.an[(size_t)p].c[1] == 0);
    else CHECK(rec.an[(size_t)p].c[0] == 0);
  }
  CHECK(rec.an[3].is_zero());
  CHECK(rec.an[7] == nf_one(rec.hecke_field));
  // Hecke bound
  for (long p = 2; p <= 97; ++p) {
    if (!is_prime(p)) continue;
    NFElement ap = rec.an[(size_t)p];
    QQ norm = ap.c[0] * ap.c[0] - QQ(d) * ap.c[1] * ap.c[1];
    QQ tracesq = 4 * ap.c[0] * ap.c[0];
    CHECK(tracesq <= QQ(16 * p));  // |trace| <= 4 sqrt(p) for the pair
    (void)norm;
  }
  MESSAGE("63 orbit Hecke field: Q(sqrt(", d, "))");
}

TEST_CASE("elliptic records and the twist") {
  auto r15 = elliptic_record("15a", 15, curve_15a(), 60,
                             {{3, {LocalType::Steinberg, 0}}, {5, {LocalType::Steinberg, 0}}});
  CHECK(r15.al.at(5) == nf(r15.hecke_field, -1));
  CHECK(r15.al.at(3) == nf(r15.hecke_field, 1));
  auto r21 = elliptic_record("21a", 21, curve_21a(), 60,
                             {{3, {LocalType::Steinberg, 0}}, {7, {LocalType::Steinberg, 0}}});
  CHECK(r21.al.at(7) == nf(r21.hecke_field, 1));
  auto r63a = twist_record_by_chi3(r21, "63a", 63);
  // check the twist against a conductor-63 curve found independently
  // a_2(63a) = +1, a_5 = 2, a_11 = -4, a_13 = -2
  CHECK(r63a.an[2] == nf(r63a.hecke_field, 1));
  CHECK(r63a.an[5] == nf(r63a.hecke_field, 2));
  CHECK(r63a.an[11] == nf(r63a.hecke_field, -4));
  CHECK(r63a.an[13] == nf(r63a.hecke_field, -2));
  CHECK(r63a.an[3].is_zero());
}

TEST_CASE("nfdata round trip") {
  auto rec = orbit35_record(40);
  std::string text = nfdata_serialize(rec);
  auto back = nfdata_parse(text);
  nfdata_validate(back);
  CHECK(back.level == 35);
  CHECK(back.hecke_field->param == 17);
  for (long n = 1; n <= 40; ++n) CHECK(back.an[(size_t)n] == rec.an[(size_t)n]);
  CHECK(back.al.at(5) == rec.al.at(5));
  CHECK(back.local.at(5).type == LocalType::Steinberg);
}
