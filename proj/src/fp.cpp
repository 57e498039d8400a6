#include "mck/fp.hpp"

#include <algorithm>

namespace mck {

std::optional<int64_t> sqrt_mod_p(int64_t a, int64_t p) {
  a = imod(a, p);
  if (a == 0) return 0;
  if (p == 2) return a;
  if (legendre(a, p) != 1) return std::nullopt;
  // Tonelli-Shanks
  int64_t q = p - 1, s = 0;
  while (q % 2 == 0) { q /= 2; s++; }
  if (s == 1) return mod_pow(a, (p + 1) / 4, p);
  int64_t z = smallest_nonsquare(p);
  int64_t m = s, c = mod_pow(z, q, p), t = mod_pow(a, q, p),
          r = mod_pow(a, (q + 1) / 2, p);
  while (t != 1) {
    int64_t i = 0, tt = t;
    while (tt != 1) { tt = (__int128)tt * tt % p; i++; }
    int64_t b = mod_pow(c, ipow(2, (int)(m - i - 1)), p);
    m = i;
    c = (__int128)b * b % p;
    t = (__int128)t * c % p;
    r = (__int128)r * b % p;
  }
  return r;
}

FqPoly fqp_trim(FqPoly f) {
  while (!f.empty() && f.back().is_zero()) f.pop_back();
  return f;
}

int fqp_deg(const FqPoly& f) {
  for (int i = (int)f.size() - 1; i >= 0; --i)
    if (!f[i].is_zero()) return i;
  return -1;
}

FqPoly fqp_add(const FqPoly& f, const FqPoly& g) {
  FqPoly r = f.size() >= g.size() ? f : g;
  const FqPoly& s = f.size() >= g.size() ? g : f;
  for (size_t i = 0; i < s.size(); ++i) r[i] = r[i] + s[i];
  return fqp_trim(r);
}

FqPoly fqp_sub(const FqPoly& f, const FqPoly& g) {
  FqPoly ng = g;
  for (auto& c : ng) c = -c;
  return fqp_add(f, ng);
}

FqPoly fqp_mul(const FqPoly& f, const FqPoly& g) {
  if (f.empty() || g.empty()) return {};
  FqPoly r(f.size() + g.size() - 1, f[0] * Fq(f[0].p, 0));
  // zero out
  for (auto& c : r) { c.c0 = 0; c.c1 = 0; }
  for (size_t i = 0; i < f.size(); ++i) {
    if (f[i].is_zero()) continue;
    for (size_t j = 0; j < g.size(); ++j) {
      if (g[j].is_zero()) continue;
      r[i + j] = r[i + j] + f[i] * g[j];
    }
  }
  return fqp_trim(r);
}

FqPoly fqp_rem(FqPoly f, const FqPoly& g) {
  FqPoly gg = fqp_trim(g);
  require(!gg.empty(), "fqp_rem: division by zero polynomial");
  f = fqp_trim(f);
  int dg = (int)gg.size() - 1;
  Fq inv_l = fq_inv(gg.back());
  while ((int)f.size() - 1 >= dg) {
    Fq c = f.back() * inv_l;
    int shift = (int)f.size() - 1 - dg;
    for (int i = 0; i <= dg; ++i)
      f[i + shift] = f[i + shift] - c * gg[i];
    f = fqp_trim(f);
    if (f.empty()) break;
  }
  return f;
}

FqPoly fqp_monic(FqPoly f) {
  f = fqp_trim(f);
  if (f.empty()) return f;
  Fq inv_l = fq_inv(f.back());
  for (auto& c : f) c = c * inv_l;
  return f;
}

FqPoly fqp_gcd(FqPoly f, FqPoly g) {
  f = fqp_trim(f);
  g = fqp_trim(g);
  while (!g.empty()) {
    FqPoly r = fqp_rem(f, g);
    f = g;
    g = r;
  }
  return fqp_monic(f);
}

FqPoly fqp_powmod(FqPoly b, ZZ e, const FqPoly& m) {
  FqPoly r{Fq(m[0].p, 1)};
  if (m[0].f == 2 || b[0].f == 2) {
    Fq one(m[0].p, m[0].f == 2 ? m[0].a : b[0].a, 1, 0);
    r = FqPoly{one};
  }
  b = fqp_rem(b, m);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = fqp_rem(fqp_mul(r, b), m);
    b = fqp_rem(fqp_mul(b, b), m);
    e >>= 1;
  }
  return r;
}

Fq fqp_eval(const FqPoly& f, const Fq& x) {
  Fq r(x.p, 0);
  if (x.f == 2) r = Fq(x.p, x.a, 0, 0);
  for (int i = (int)f.size() - 1; i >= 0; --i) r = r * x + f[i];
  return r;
}

FqPoly fqp_deriv(const FqPoly& f) {
  FqPoly r;
  for (size_t i = 1; i < f.size(); ++i) {
    Fq c = f[i];
    Fq k = c;  // same field shape
    k.c0 = imod((int64_t)i, c.p);
    k.c1 = 0;
    r.push_back(c * k);
  }
  return fqp_trim(r);
}

namespace {

Fq fq_zero_like(const FqPoly& f) {
  Fq z = f.at(0);
  z.c0 = 0; z.c1 = 0;
  return z;
}

// Equal-degree splitting (Cantor-Zassenhaus), f squarefree product of
// irreducibles of degree d over F_q, q odd.
void edf(const FqPoly& f, int d, Rng& rng, std::vector<FqPoly>& out) {
  int n = fqp_deg(f);
  if (n == d) { out.push_back(fqp_monic(f)); return; }
  Fq z = fq_zero_like(f);
  ZZ q = z.f == 1 ? ZZ(z.p) : ZZ(z.p) * z.p;
  ZZ e = (ZZ(1) * 1); // (q^d - 1)/2
  ZZ qd = 1;
  for (int i = 0; i < d; ++i) qd *= q;
  e = (qd - 1) / 2;
  while (true) {
    FqPoly r(n, z);
    for (auto& c : r) {
      c.c0 = (int64_t)(rng.next() % (uint64_t)z.p);
      if (z.f == 2) c.c1 = (int64_t)(rng.next() % (uint64_t)z.p);
    }
    r = fqp_trim(r);
    if (fqp_deg(r) < 1) continue;
    FqPoly g = fqp_gcd(r, f);
    if (fqp_deg(g) > 0 && fqp_deg(g) < n) {
      edf(g, d, rng, out);
      FqPoly h = fqp_monic(fqp_trim([&] {  // f / g
        FqPoly quo;
        FqPoly rem = f;
        FqPoly gg = fqp_trim(g);
        int dg = fqp_deg(gg);
        Fq il = fq_inv(gg.back());
        quo.assign(fqp_deg(rem) - dg + 1, z);
        while (fqp_deg(rem) >= dg) {
          int sh = fqp_deg(rem) - dg;
          Fq c = rem.back() * il;
          quo[sh] = c;
          for (int i = 0; i <= dg; ++i)
            rem[i + sh] = rem[i + sh] - c * gg[i];
          rem = fqp_trim(rem);
        }
        return quo;
      }()));
      edf(h, d, rng, out);
      return;
    }
    FqPoly w = fqp_powmod(r, e, f);
    // w - 1
    if (w.empty()) w.push_back(z);
    w[0].c0 = imod(w[0].c0 - 1, z.p);
    w = fqp_trim(w);
    g = fqp_gcd(w, f);
    if (fqp_deg(g) > 0 && fqp_deg(g) < n) {
      edf(g, d, rng, out);
      // f / g
      FqPoly h = f;
      FqPoly gg = fqp_trim(g);
      FqPoly quo(fqp_deg(f) - fqp_deg(gg) + 1, z);
      Fq il = fq_inv(gg.back());
      while (fqp_deg(h) >= fqp_deg(gg)) {
        int sh = fqp_deg(h) - fqp_deg(gg);
        Fq c = h.back() * il;
        quo[sh] = c;
        for (int i = 0; i <= fqp_deg(gg); ++i)
          h[i + sh] = h[i + sh] - c * gg[i];
        h = fqp_trim(h);
      }
      edf(fqp_monic(quo), d, rng, out);
      return;
    }
  }
}

FqPoly fqp_div_exact(const FqPoly& f, const FqPoly& g) {
  FqPoly rem = fqp_trim(f);
  FqPoly gg = fqp_trim(g);
  Fq z = fq_zero_like(gg);
  int dg = fqp_deg(gg);
  FqPoly quo(std::max(0, fqp_deg(rem) - dg + 1), z);
  Fq il = fq_inv(gg.back());
  while (fqp_deg(rem) >= dg) {
    int sh = fqp_deg(rem) - dg;
    Fq c = rem.back() * il;
    quo[sh] = c;
    for (int i = 0; i <= dg; ++i) rem[i + sh] = rem[i + sh] - c * gg[i];
    rem = fqp_trim(rem);
  }
  require(rem.empty(), "fqp_div_exact: not divisible");
  return fqp_trim(quo);
}

}  // namespace

std::vector<std::pair<FqPoly, int>> fqp_factor(const FqPoly& fin) {
  std::vector<std::pair<FqPoly, int>> result;
  FqPoly f = fqp_monic(fin);
  require(!f.empty(), "fqp_factor: zero polynomial");
  if (fqp_deg(f) == 0) return result;
  Fq z = fq_zero_like(f);
  int64_t p = z.p;
  ZZ q = z.f == 1 ? ZZ(p) : ZZ(p) * p;
  Rng rng(0xabcdef1234567ULL);

  // squarefree decomposition via repeated gcd with derivative
  struct Piece { FqPoly sqfree; int mult; };
  std::vector<Piece> pieces;
  FqPoly rest = f;
  int multiplier = 1;
  while (fqp_deg(rest) > 0) {
    FqPoly d = fqp_deriv(rest);
    if (fqp_deg(d) < 0) {
      // rest is a p-th power: x^(kp) coefficients only; take p-th root
      FqPoly root;
      for (int i = 0; i <= fqp_deg(rest); i += (int)p) {
        Fq c = rest[i];
        // c^(q/p) is the p-th root in F_q
        ZZ e = q / p;
        root.push_back(fq_pow(c, e.get_si()));
      }
      rest = fqp_trim(root);
      multiplier *= (int)p;
      continue;
    }
    FqPoly g = fqp_gcd(rest, d);
    FqPoly sq = fqp_div_exact(rest, g);  // squarefree part
    // distribute: for each factor h of sq with multiplicity m in rest
    int m = 1;
    FqPoly w = sq;
    FqPoly r2 = g;
    while (fqp_deg(w) > 0) {
      FqPoly w2 = fqp_gcd(w, r2);
      FqPoly piece = fqp_div_exact(w, w2);  // factors with exact multiplicity m
      if (fqp_deg(piece) > 0) pieces.push_back({piece, m * multiplier});
      w = w2;
      if (fqp_deg(r2) > 0 && fqp_deg(w2) >= 0) {
        // strip one power of w from r2
        FqPoly stripped = r2;
        if (fqp_deg(w2) > 0) stripped = fqp_div_exact(r2, w2);
        r2 = stripped;
      }
      m++;
    }
    rest = r2;
    if (fqp_deg(rest) == 0) break;
    // remaining rest is p-th-power part; loop handles via derivative == 0
  }

  for (auto& piece : pieces) {
    // distinct-degree then equal-degree factorization of the squarefree piece
    FqPoly g = piece.sqfree;
    FqPoly x{z, z};
    x[1].c0 = 1;
    FqPoly h = x;
    int d = 0;
    while (fqp_deg(g) > 0) {
      d++;
      if (2 * d > fqp_deg(g)) {
        result.push_back({fqp_monic(g), piece.mult});
        break;
      }
      h = fqp_powmod(h, q, g);
      FqPoly hx = fqp_sub(h, x);
      FqPoly gd = fqp_gcd(hx, g);
      if (fqp_deg(gd) > 0) {
        std::vector<FqPoly> irr;
        edf(gd, d, rng, irr);
        for (auto& u : irr) result.push_back({u, piece.mult});
        g = fqp_div_exact(g, gd);
      }
    }
  }
  std::sort(result.begin(), result.end(),
            [](const auto& a, const auto& b) {
              if (fqp_deg(a.first) != fqp_deg(b.first))
                return fqp_deg(a.first) < fqp_deg(b.first);
              for (size_t i = 0; i < a.first.size(); ++i) {
                if (!(a.first[i] == b.first[i]))
                  return a.first[i] < b.first[i];
              }
              return a.second < b.second;
            });
  return result;
}

std::vector<Fq> fqp_roots(const FqPoly& f) {
  std::vector<Fq> roots;
  for (auto& [g, m] : fqp_factor(f))
    if (fqp_deg(g) == 1) {
      Fq r = -g[0];  // monic x + c -> root -c
      roots.push_back(r);
    }
  std::sort(roots.begin(), roots.end());
  return roots;
}

}  // namespace mck
