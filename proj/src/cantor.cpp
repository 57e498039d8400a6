#include "mck/cantor.hpp"

namespace mck {

long g2_count_points(const G2Curve<Fq>& c) {
  const Fq& ex = c.f.ex;
  int64_t q = ex.q();
  long n = 0;
  auto chi = [&](const Fq& v) -> long {
    if (v.is_zero()) return 0;
    Fq r = fq_pow(v, (q - 1) / 2);
    return r.c0 == 1 && r.c1 == 0 ? 1 : -1;
  };
  std::vector<Fq> elems;
  if (ex.f == 1)
    for (int64_t v = 0; v < ex.p; ++v) elems.push_back(Fq(ex.p, v));
  else
    for (int64_t u = 0; u < ex.p; ++u)
      for (int64_t v = 0; v < ex.p; ++v) elems.push_back(Fq(ex.p, ex.a, u, v));
  for (const Fq& u : elems) n += 1 + chi(c.f.eval(u));
  if (c.f.deg() == 5) n += 1;
  else n += 1 + chi(c.f.lead());
  return n;
}

JacobianOrder g2_jacobian_order(const Poly<QQ>& f, int64_t p) {
  require(f.deg() == 5 || f.deg() == 6, "g2_jacobian_order: genus-2 models only");
  auto reduce_poly = [&](const Fq& ex) {
    Poly<Fq> r{ex};
    for (int i = 0; i <= f.deg(); ++i) {
      QQ c = f.coeff(i);
      require(mpz_fdiv_ui(c.get_den().get_mpz_t(), (unsigned long)p) != 0,
              "g2_jacobian_order: denominator at p");
      int64_t num = (int64_t)mpz_fdiv_ui(c.get_num().get_mpz_t(), (unsigned long)p);
      int64_t den = (int64_t)mpz_fdiv_ui(c.get_den().get_mpz_t(), (unsigned long)p);
      Fq v = ex;
      v.c0 = (__int128)num * mod_inv(den, p) % p;
      v.c1 = 0;
      r.c.push_back(v);
    }
    r.trim();
    return r;
  };
  Poly<Fq> f1 = reduce_poly(Fq(p, 0));
  require(f1.deg() == f.deg(), "g2_jacobian_order: bad reduction (degree drop)");
  // squarefree check mod p
  require(poly_gcd(f1, f1.derivative()).deg() == 0,
          "g2_jacobian_order: bad reduction (not squarefree)");
  Poly<Fq> f2 = reduce_poly(Fq(p, smallest_nonsquare(p), 0, 0));
  G2Curve<Fq> c1{f1, std::nullopt, std::nullopt, std::nullopt};
  G2Curve<Fq> c2{f2, std::nullopt, std::nullopt, std::nullopt};
  long N1 = g2_count_points(c1);
  long N2 = g2_count_points(c2);
  long s1 = p + 1 - N1;
  long s2 = (N2 - (long)(p * p) - 1 + s1 * s1) / 2;
  require((N2 - (long)(p * p) - 1 + s1 * s1) % 2 == 0, "g2_jacobian_order: parity");
  long order = 1 - s1 + s2 - p * s1 + (long)(p * p);
  return {order, s1, s2, p};
}

}  // namespace mck
