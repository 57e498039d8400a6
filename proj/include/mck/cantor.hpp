#pragma once
// Genus-2 Jacobian arithmetic in Mumford representation, including the
// balanced treatment of even-degree (sextic) models: divisor classes are
// represented relative to the divisor at infinity K = inf+ + inf-, and the
// class [inf+ - inf-] is first-class (it carries the torsion the catalog
// cares about). Works over any exact field via the k_* protocol.

#include <optional>

#include "mck/fp.hpp"
#include "mck/numfield.hpp"
#include "mck/poly.hpp"

namespace mck {

template <class K>
struct G2Curve {
  Poly<K> f;                   // v^2 = f(u), deg 5 or 6, squarefree
  std::optional<K> lead_sqrt;  // s with s^2 = lead(f), when available (deg 6)
  std::optional<Poly<K>> principal_part;  // S, deg 3, f - S^2 of degree <= 2
  std::optional<std::pair<Poly<K>, Poly<K>>> winf;  // affine zero divisor W of v - S

  bool even() const { return f.deg() == 6; }
};

// Reduced class [A + b+ inf+ + b- inf- - K] with deg A + b+ + b- = 2 and
// min(b+, b-) = 0 unless the class is zero. For odd models the two infinity
// slots collapse (bminus stays 0 and the zero class is b+ = 2).
template <class K>
struct G2Class {
  Poly<K> U, V;
  int bplus = 0, bminus = 0;
  bool even_model = true;

  bool is_zero() const {
    if (U.deg() != 0) return false;
    return even_model ? (bplus == 1 && bminus == 1) : (bplus == 2 && bminus == 0);
  }
};

namespace g2detail {

// classical Cantor composition of two semi-reduced pairs
template <class K>
std::pair<Poly<K>, Poly<K>> compose_pair(const G2Curve<K>& c, const Poly<K>& U1,
                                         const Poly<K>& V1, const Poly<K>& U2,
                                         const Poly<K>& V2) {
  if (U1.deg() == 0) return {U2, V2};
  if (U2.deg() == 0) return {U1, V1};
  auto [d1, e1, e2] = poly_xgcd(U1, U2);
  Poly<K> sum = V1 + V2;
  auto [d, c1, c2] = poly_xgcd(d1, sum);
  Poly<K> s1 = c1 * e1, s2 = c1 * e2, s3 = c2;
  Poly<K> U = poly_div_exact(U1 * U2, d * d);
  Poly<K> num = s1 * U1 * V2 + s2 * U2 * V1 + s3 * (V1 * V2 + c.f);
  Poly<K> V = poly_mod(poly_div_exact(num, d), U);
  U = U.monic();
  return {U, V};
}

// zero order of v - cc at inf+ (sign=+1) or inf- (sign=-1); negative = pole.
template <class K>
int ord_inf(const G2Curve<K>& c, const Poly<K>& cc, int sign) {
  if (!c.even()) {
    int dv = -5;
    int dc = cc.is_zero() ? 1000000 : -2 * cc.deg();
    return std::min(dv, dc);
  }
  require(c.lead_sqrt.has_value(),
          "g2: arithmetic touching a single infinity needs a split model");
  const Poly<K>& S = *c.principal_part;
  Poly<K> Ssigned = sign > 0 ? S : -S;
  Poly<K> diff = Ssigned - cc;
  if (!diff.is_zero()) return -diff.deg();
  Poly<K> rem = c.f - S * S;
  return 3 - rem.deg();
}

template <class K>
G2Class<K> reduce_state(const G2Curve<K>& c, Poly<K> U, Poly<K> V, int bplus, int bminus,
                        int t) {
  int guard = 0;
  bool even = c.even();
  while (true) {
    require(++guard < 96, "g2 reduce: no termination");
    // fold negative infinity counts (-k inf+ ~ k inf- - k K)
    if (bplus < 0) { bminus += -bplus; t += bplus; bplus = 0; }
    if (bminus < 0) { bplus += -bminus; t += bminus; bminus = 0; }
    // cancel infinity pairs (even) or double points (odd)
    if (even) {
      int beta = std::min(bplus, bminus);
      bplus -= beta;
      bminus -= beta;
      t -= beta;
    } else {
      require(bminus == 0, "g2 reduce: odd model uses a single infinity slot");
      while (bplus >= 2 && t > 1) {
        bplus -= 2;
        t -= 1;
      }
    }
    int degU = std::max(U.deg(), 0);
    require(degU + bplus + bminus == 2 * t, "g2 reduce: degree bookkeeping broken");
    if (t == 1) break;
    if (degU >= 3) {
      Poly<K> cc = V;
      Poly<K> num = c.f - cc * cc;
      Poly<K> U2 = poly_div_exact(num, U);
      require(!U2.is_zero(), "g2 reduce: degenerate division");
      U2 = U2.monic();
      Poly<K> V2 = poly_mod(-cc, U2);
      int aplus, aminus;
      if (even) {
        aplus = -ord_inf(c, cc, +1);
        aminus = -ord_inf(c, cc, -1);
      } else {
        aplus = -ord_inf(c, cc, +1);
        aminus = 0;
      }
      int degE2 = U2.deg();
      require(degU + degE2 == aplus + aminus, "g2 reduce: divisor degree mismatch");
      U = U2;
      V = V2;
      bplus += aplus;
      bminus += aminus;
      t += degE2;
      continue;
    }
    // infinity-heavy state on an even model
    require(even && c.lead_sqrt.has_value(),
            "g2 reduce: infinity-heavy state on a model without split infinity");
    const auto& [UW, VW] = *c.winf;
    int w = UW.deg();
    require(3 - w >= 1, "g2 reduce: degenerate principal part");
    if (bplus >= bminus) {
      require(bplus >= 3 - w, "g2 reduce: cannot trade infinity for affine support");
      auto [Uc, Vc] = compose_pair(c, U, V, UW, -VW);
      U = Uc;
      V = Vc;
      bplus -= 3 - w;
      bminus += 3;
      t += w;
    } else {
      require(bminus >= 3 - w, "g2 reduce: cannot trade infinity for affine support");
      auto [Uc, Vc] = compose_pair(c, U, V, UW, VW);
      U = Uc;
      V = Vc;
      bminus -= 3 - w;
      bplus += 3;
      t += w;
    }
  }
  G2Class<K> out;
  out.even_model = even;
  out.U = U.deg() <= 0 ? Poly<K>::constant(k_one(c.f.ex)) : U;
  out.V = U.deg() <= 0 ? Poly<K>(c.f.ex) : V;
  out.bplus = bplus;
  out.bminus = bminus;
  return out;
}

}  // namespace g2detail

template <class K>
G2Curve<K> g2_curve(const Poly<K>& f, std::optional<K> lead_sqrt = std::nullopt) {
  require(f.deg() == 5 || f.deg() == 6, "g2_curve: degree must be 5 or 6");
  G2Curve<K> c;
  c.f = f;
  if (f.deg() == 6 && lead_sqrt) {
    require(k_is_zero(*lead_sqrt * *lead_sqrt - f.lead()), "g2_curve: bad lead_sqrt");
    c.lead_sqrt = lead_sqrt;
    Poly<K> S(f.ex);
    S.c.assign(4, f.ex);
    S.c[3] = *lead_sqrt;
    K two = k_one(f.ex) + k_one(f.ex);
    for (int i = 2; i >= 0; --i) {
      K acc = f.coeff(3 + i);
      for (int a = i + 1; a <= 3; ++a) {
        int b2 = 3 + i - a;
        if (b2 > 3 || b2 < 0 || b2 <= i) continue;
        acc = acc - S.c[(size_t)a] * S.c[(size_t)b2];
      }
      S.c[(size_t)i] = acc * k_inv(two * S.c[3]);
    }
    S.trim();
    c.principal_part = S;
    Poly<K> rem = f - S * S;
    require(!rem.is_zero() && rem.deg() <= 2, "g2_curve: principal part failed");
    Poly<K> UW = rem.monic();
    Poly<K> VW = poly_mod(S, UW);
    c.winf = std::make_pair(UW, VW);
  }
  return c;
}

template <class K>
G2Class<K> g2_zero(const G2Curve<K>& c) {
  G2Class<K> z;
  z.even_model = c.even();
  z.U = Poly<K>::constant(k_one(c.f.ex));
  z.V = Poly<K>(c.f.ex);
  z.bplus = c.even() ? 1 : 2;
  z.bminus = c.even() ? 1 : 0;
  return z;
}

template <class K>
G2Class<K> g2_infinity_difference(const G2Curve<K>& c) {
  require(c.even() && c.lead_sqrt.has_value(),
          "g2_infinity_difference: needs split points at infinity");
  G2Class<K> t;
  t.even_model = true;
  t.U = Poly<K>::constant(k_one(c.f.ex));
  t.V = Poly<K>(c.f.ex);
  t.bplus = 2;
  t.bminus = 0;
  return t;
}

template <class K>
bool mumford_valid(const G2Curve<K>& c, const Poly<K>& u, const Poly<K>& v) {
  if (u.is_zero() || !k_is_zero(u.lead() - k_one(u.ex))) return false;
  if (u.deg() > 2) return false;
  if (!v.is_zero() && v.deg() >= std::max(u.deg(), 1)) return false;
  Poly<K> r = poly_mod(c.f - v * v, u);
  return r.is_zero();
}

template <class K>
G2Class<K> g2_neg(const G2Curve<K>& c, const G2Class<K>& a) {
  (void)c;
  G2Class<K> r = a;
  r.V = -a.V;
  if (a.even_model) std::swap(r.bplus, r.bminus);
  return r;
}

template <class K>
G2Class<K> g2_add(const G2Curve<K>& c, const G2Class<K>& a, const G2Class<K>& b) {
  auto [U, V] = g2detail::compose_pair(c, a.U, a.V, b.U, b.V);
  return g2detail::reduce_state(c, U, V, a.bplus + b.bplus, a.bminus + b.bminus, 2);
}

template <class K>
bool g2_equal(const G2Class<K>& a, const G2Class<K>& b) {
  if (a.bplus != b.bplus || a.bminus != b.bminus) return false;
  return (a.U - b.U).is_zero() && (a.V - b.V).is_zero();
}

template <class K>
G2Class<K> g2_mul(const G2Curve<K>& c, long n, const G2Class<K>& a) {
  G2Class<K> r = g2_zero(c);
  G2Class<K> base = n < 0 ? g2_neg(c, a) : a;
  unsigned long k = n < 0 ? -n : n;
  while (k) {
    if (k & 1) r = g2_add(c, r, base);
    base = g2_add(c, base, base);
    k >>= 1;
  }
  return r;
}

template <class K>
std::optional<long> g2_class_order(const G2Curve<K>& c, const G2Class<K>& a, long bound) {
  G2Class<K> r = a;
  for (long n = 1; n <= bound; ++n) {
    if (r.is_zero()) return n;
    r = g2_add(c, r, a);
  }
  return std::nullopt;
}

template <class K>
G2Class<K> g2_class_from_points(const G2Curve<K>& c,
                                const std::vector<std::pair<K, K>>& pts,
                                int binf_plus = 0, int binf_minus = 0) {
  Poly<K> U = Poly<K>::constant(k_one(c.f.ex));
  Poly<K> V(c.f.ex);
  for (auto& [x0, y0] : pts) {
    require(k_is_zero(c.f.eval(x0) - y0 * y0), "g2_class_from_points: point not on curve");
    Poly<K> Up(c.f.ex, {k_zero(c.f.ex) - x0, k_one(c.f.ex)});
    Poly<K> Vp = Poly<K>::constant(y0);
    auto [Uc, Vc] = g2detail::compose_pair(c, U, V, Up, Vp);
    U = Uc;
    V = Vc;
  }
  int total = (int)pts.size() + binf_plus + binf_minus;
  require(total == 2, "g2_class_from_points: degree must be 2");
  return g2detail::reduce_state(c, U, V, binf_plus, binf_minus, 1);
}

// #C(F_q) of the smooth model; #Jac(F_p) via the L-polynomial.
long g2_count_points(const G2Curve<Fq>& c);
struct JacobianOrder {
  long order;
  long s1, s2;
  int64_t p;
};
JacobianOrder g2_jacobian_order(const Poly<QQ>& f_rational, int64_t p);

}  // namespace mck
