#include "mck/qseries.hpp"

#include <algorithm>
#include <sstream>

namespace mck {

namespace {
long sat_mul(long a, long m) {
  if (a >= QS_INF / m) return QS_INF;
  return a * m;
}
void coerce_fields(QSeries& f, QSeries& g) {
  if (!f.F->same_as(*g.F)) {
    NFPtr J = nf_join(f.F, g.F);
    auto lift = [&](QSeries& s) {
      QSeries r(J, s.den, s.prec);
      for (auto& [e, v] : s.c) r.c.emplace(e, nf_embed(v, J));
      s = std::move(r);
    };
    lift(f);
    lift(g);
  }
}
}  // namespace

QSeries qs_zero(NFPtr F, long den, long prec) { return QSeries(std::move(F), den, prec); }

QSeries qs_one(NFPtr F, long prec) {
  QSeries r(F, 1, prec);
  r.set(0, nf_one(F));
  return r;
}

QSeries qs_with_den(const QSeries& f, long new_den) {
  require(new_den % f.den == 0, "qs_with_den: non-multiple denominator");
  long m = new_den / f.den;
  if (m == 1) return f;
  QSeries r(f.F, new_den, sat_mul(f.prec, m));
  for (auto& [e, v] : f.c) r.c.emplace(e * m, v);
  return r;
}

QSeries qs_add(const QSeries& f0, const QSeries& g0) {
  QSeries f = f0, g = g0;
  coerce_fields(f, g);
  long d = ilcm(f.den, g.den);
  f = qs_with_den(f, d);
  g = qs_with_den(g, d);
  QSeries r(f.F, d, std::min(f.prec, g.prec));
  r.c = f.c;
  for (auto& [e, v] : g.c) {
    auto it = r.c.find(e);
    if (it == r.c.end()) r.c.emplace(e, v);
    else {
      it->second = it->second + v;
      if (it->second.is_zero()) r.c.erase(it);
    }
  }
  r.c.erase(r.c.lower_bound(r.prec), r.c.end());
  return r;
}

QSeries qs_neg(const QSeries& f) {
  QSeries r = f;
  for (auto& [e, v] : r.c) v = -v;
  return r;
}

QSeries qs_sub(const QSeries& f, const QSeries& g) { return qs_add(f, qs_neg(g)); }

QSeries qs_scal(const NFElement& s, const QSeries& f0) {
  QSeries f = f0;
  if (s.is_zero()) return QSeries(f.F, f.den, f.prec);
  NFPtr J = nf_join(s.F, f.F);
  QSeries r(J, f.den, f.prec);
  NFElement sj = nf_embed(s, J);
  for (auto& [e, v] : f.c) {
    NFElement w = sj * nf_embed(v, J);
    if (!w.is_zero()) r.c.emplace(e, w);
  }
  return r;
}

QSeries qs_scal(const QQ& s, const QSeries& f) {
  return qs_scal(nf(NumberField::rational(), s), f);
}

QSeries qs_mul(const QSeries& f0, const QSeries& g0) {
  QSeries f = f0, g = g0;
  coerce_fields(f, g);
  long d = ilcm(f.den, g.den);
  f = qs_with_den(f, d);
  g = qs_with_den(g, d);
  long prec = QS_INF;
  if (f.prec < QS_INF || g.prec < QS_INF) {
    long p1 = f.prec >= QS_INF ? QS_INF : f.prec + g.min_exp();
    long p2 = g.prec >= QS_INF ? QS_INF : g.prec + f.min_exp();
    prec = std::min(p1, p2);
    if (f.c.empty() || g.c.empty()) prec = std::min(f.prec, g.prec);
  }
  QSeries r(f.F, d, prec);
  for (auto& [ef, vf] : f.c) {
    if (!g.c.empty() && ef + g.min_exp() >= prec) break;
    for (auto& [eg, vg] : g.c) {
      long e = ef + eg;
      if (e >= prec) break;
      NFElement w = vf * vg;
      if (w.is_zero()) continue;
      auto it = r.c.find(e);
      if (it == r.c.end()) r.c.emplace(e, w);
      else {
        it->second = it->second + w;
        if (it->second.is_zero()) r.c.erase(it);
      }
    }
  }
  return r;
}

QSeries qs_invert_unit(const QSeries& f) {
  require(!f.c.empty(), "qs_invert_unit: zero leading coefficient");
  long m = f.min_exp();
  NFElement lead = f.c.begin()->second;
  long rel = f.prec >= QS_INF ? QS_INF : f.prec - m;
  if (rel >= QS_INF) {
    if (f.c.size() == 1) {
      QSeries r(f.F, f.den, QS_INF);
      r.c.emplace(-m, nf_inv(lead));
      return r;
    }
    rel = 64 * f.den;  // exact non-monomial input: expand to a generous bound
  }
  QSeries r(f.F, f.den, -m + rel);
  NFElement il = nf_inv(lead);
  r.c.emplace(-m, il);
  for (long k = 1; k < rel; ++k) {
    NFElement acc = nf_zero(f.F);
    for (auto it = std::next(f.c.begin()); it != f.c.end(); ++it) {
      long t = it->first - m;
      if (t > k) break;
      NFElement gprev = r.coeff(-m + k - t);
      if (!gprev.is_zero()) acc = acc + it->second * gprev;
    }
    if (!acc.is_zero()) r.c.emplace(-m + k, -(il * acc));
  }
  return r;
}

QSeries qs_div(const QSeries& f, const QSeries& g) { return qs_mul(f, qs_invert_unit(g)); }

QSeries qs_pow(const QSeries& f, long k) {
  require(k >= 0, "qs_pow: negative exponent (use qs_invert_unit)");
  QSeries r = qs_one(f.F, f.prec >= QS_INF ? QS_INF : QS_INF);
  r = qs_with_den(r, f.den);
  if (k == 0) return r;
  QSeries b = f;
  long e = k;
  QSeries acc = r;
  while (e) {
    if (e & 1) acc = qs_mul(acc, b);
    if (e >>= 1) b = qs_mul(b, b);
  }
  return acc;
}

QSeries qs_root(const QSeries& f, long k) {
  require(!f.c.empty(), "qs_root: zero series");
  long m = f.min_exp();
  require(m % k == 0, "qs_root: leading exponent not divisible by k");
  NFElement lead = f.c.begin()->second;
  require(lead == nf_one(f.F), "qs_root: leading coefficient must be 1");
  long rel = f.prec >= QS_INF ? 64 * f.den : f.prec - m;
  QSeries target(f.F, f.den, rel);
  for (auto& [e, v] : f.c)
    if (e - m < rel) target.c.emplace(e - m, v);
  // u = 1 + ..., u^k = target; maintain powers u^1..u^k, update with
  // monomial corrections via the binomial theorem (each step O(terms)).
  std::vector<QSeries> pw;  // pw[j] = u^(j+1)
  for (long j = 1; j <= k; ++j) {
    QSeries uj(f.F, f.den, rel);
    uj.set(0, nf_one(f.F));
    pw.push_back(uj);
  }
  std::vector<std::vector<QQ>> binom(k + 1, std::vector<QQ>(k + 1, QQ(0)));
  for (int i = 0; i <= k; ++i) {
    binom[i][0] = 1;
    for (int j = 1; j <= i; ++j)
      binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : QQ(0));
  }
  QQ kk(k);
  for (long n = 1; n < rel; ++n) {
    NFElement diff = target.coeff(n) - pw[k - 1].coeff(n);
    if (diff.is_zero()) continue;
    NFElement un = QQ(1) / kk * diff;
    // update u^j for j = k down to 1
    std::vector<QSeries> updated = pw;
    for (long j = k; j >= 1; --j) {
      QSeries acc = pw[j - 1];
      NFElement dpow = un;
      for (long i = 1; i <= j; ++i) {
        // add C(j,i) u^{j-i} un^i q^{n i}
        if (n * i >= rel) break;
        QSeries term(f.F, f.den, rel);
        if (j - i >= 1) {
          for (auto& [e, v] : pw[j - i - 1].c) {
            if (e + n * i >= rel) break;
            term.c.emplace(e + n * i, binom[j][i] * (v * dpow));
          }
        } else {
          term.set(n * i, binom[j][i] * dpow);
        }
        acc = qs_add(acc, term);
        dpow = dpow * un;
      }
      updated[j - 1] = acc;
    }
    pw = std::move(updated);
  }
  QSeries u = pw[0];
  const QSeries& chk = pw[k - 1];
  for (auto& [e, v] : target.c)
    require(chk.coeff(e) == v, "qs_root: verification failed");
  QSeries r(f.F, f.den, f.prec >= QS_INF ? QS_INF : m / k + rel);
  for (auto& [e, v] : u.c) r.c.emplace(e + m / k, v);
  return r;
}

bool qs_equal(const QSeries& f0, const QSeries& g0) {
  QSeries d = qs_sub(f0, g0);
  return d.c.empty();
}

QSeries qs_scale_variable(const QSeries& f, long m) {
  require(m >= 1, "qs_scale_variable: m >= 1");
  QSeries r(f.F, f.den * m, f.prec);
  r.c = f.c;
  return r;
}

QSeries qs_substitute_power(const QSeries& f, long m) {
  require(m >= 1, "qs_substitute_power: m >= 1");
  QSeries r(f.F, f.den, sat_mul(f.prec, m));
  for (auto& [e, v] : f.c) r.c.emplace(e * m, v);
  long gg = r.den;
  for (auto& [e, v] : r.c) gg = igcd(gg, e < 0 ? -e : e);
  if (r.prec < QS_INF) gg = igcd(gg, r.prec);
  if (gg > 1 && r.den % gg == 0) {
    QSeries s(r.F, r.den / gg, r.prec >= QS_INF ? QS_INF : r.prec / gg);
    for (auto& [e, v] : r.c) s.c.emplace(e / gg, v);
    return s;
  }
  return r;
}

QSeries qs_twist_exponents(const QSeries& f, const NFElement& zeta) {
  NFPtr J = nf_join(f.F, zeta.F);
  QSeries r(J, f.den, f.prec);
  NFElement z = nf_embed(zeta, J);
  for (auto& [e, v] : f.c) {
    NFElement w = nf_pow(z, e) * nf_embed(v, J);
    if (!w.is_zero()) r.c.emplace(e, w);
  }
  return r;
}

std::vector<QSeries> qs_residue_split(const QSeries& f, long p) {
  require(f.den % p == 0, "qs_residue_split: denominator not divisible by p");
  std::vector<QSeries> parts;
  for (long i = 0; i < p; ++i) parts.emplace_back(f.F, f.den, f.prec);
  for (auto& [e, v] : f.c) parts[imod(e, p)].c.emplace(e, v);
  return parts;
}

QSeries qs_qddq(const QSeries& f) {
  QSeries r(f.F, f.den, f.prec);
  for (auto& [e, v] : f.c) {
    if (e == 0) continue;
    NFElement w = QQ(e) / QQ(f.den) * v;
    r.c.emplace(e, w);
  }
  return r;
}

namespace {
ZZ sigma_k(long n, int k) {
  ZZ s = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    ZZ dk = 1, ek = 1;
    for (int i = 0; i < k; ++i) dk *= d;
    long e = n / d;
    for (int i = 0; i < k; ++i) ek *= e;
    s += dk;
    if (e != d) s += ek;
  }
  return s;
}

QSeries euler_product_series(long prec) {
  // prod (1 - q^n) via the pentagonal number theorem
  auto F = NumberField::rational();
  QSeries e(F, 1, prec);
  e.set(0, nf_one(F));
  for (long k = 1;; ++k) {
    long g1 = k * (3 * k - 1) / 2, g2 = k * (3 * k + 1) / 2;
    if (g1 >= prec && g2 >= prec) break;
    QQ s = (k % 2) ? QQ(-1) : QQ(1);
    if (g1 < prec) e.set(g1, nf(F, s));
    if (g2 < prec) e.set(g2, nf(F, s));
  }
  return e;
}
}  // namespace

QSeries euler_product(long prec) { return euler_product_series(prec); }

QSeries classical_series(ClassicalSeries which, long prec) {
  auto F = NumberField::rational();
  switch (which) {
    case ClassicalSeries::E4: {
      QSeries r(F, 1, prec);
      r.set(0, nf_one(F));
      for (long n = 1; n < prec; ++n) r.set(n, nf(F, QQ(240) * QQ(sigma_k(n, 3))));
      return r;
    }
    case ClassicalSeries::E6: {
      QSeries r(F, 1, prec);
      r.set(0, nf_one(F));
      for (long n = 1; n < prec; ++n) r.set(n, nf(F, QQ(-504) * QQ(sigma_k(n, 5))));
      return r;
    }
    case ClassicalSeries::Delta: {
      QSeries e = euler_product_series(prec);
      QSeries e24 = qs_pow(e, 24);
      QSeries q(F, 1, prec + 1);
      q.set(1, nf_one(F));
      return qs_mul(q, e24);
    }
    case ClassicalSeries::J: {
      QSeries e4 = classical_series(ClassicalSeries::E4, prec + 2);
      QSeries delta = classical_series(ClassicalSeries::Delta, prec + 2);
      return qs_div(qs_pow(e4, 3), delta);
    }
  }
  throw error("classical_series: unknown");
}

std::pair<QSeries, QSeries> solve_weierstrass_ode(const QSeries& omega,
                                                  const WeierstrassODE& cur) {
  require(omega.den == 1, "ode: omega must have integer exponents");
  require(omega.prec < QS_INF, "ode: omega must have finite precision");
  NFPtr F = omega.F;
  for (const NFElement* a : {&cur.a1, &cur.a2, &cur.a3, &cur.a4, &cur.a6})
    F = nf_join(F, a->F);
  QSeries om(F, 1, omega.prec);
  for (auto& [e, v] : omega.c) om.c.emplace(e, nf_embed(v, F));
  NFElement b1 = om.coeff(1);
  require(om.min_exp() == 1 && !b1.is_zero(), "ode: omega must start with a nonzero q^1 term");

  NFElement a1 = nf_embed(cur.a1, F), a2 = nf_embed(cur.a2, F), a3 = nf_embed(cur.a3, F),
            a4 = nf_embed(cur.a4, F), a6 = nf_embed(cur.a6, F);
  NFElement b2 = a1 * a1 + QQ(4) * a2;
  NFElement b4 = QQ(2) * a4 + a1 * a3;
  NFElement b6 = a3 * a3 + QQ(4) * a6;

  long P = om.prec;
  long xprec = P - 2;
  // (x')^2 = A * (4x^3 + b2 x^2 + 2 b4 x + b6), A = Omega^2
  QSeries A = qs_mul(om, om);

  NFElement x_m2 = nf_inv(b1 * b1);
  QSeries x(F, 1, xprec);
  x.set(-2, x_m2);
  QSeries x2 = qs_mul(x, x);
  QSeries x3 = qs_mul(x2, x);
  QSeries xp(F, 1, xprec);
  xp.set(-2, QQ(-2) * x_m2);
  QSeries xp2 = qs_mul(xp, xp);

  auto coeff_of_product = [&](const QSeries& u, const QSeries& v, long target) {
    NFElement acc = nf_zero(F);
    if (v.c.empty()) return acc;
    long vmin = v.min_exp();
    for (auto& [e, w] : u.c) {
      if (e > target - vmin) break;
      auto it = v.c.find(target - e);
      if (it != v.c.end()) acc = acc + w * it->second;
    }
    return acc;
  };

  for (long n = -1; n < xprec; ++n) {
    long M = n - 2;
    NFElement lhs = xp2.coeff(M);
    NFElement rhs = QQ(4) * coeff_of_product(A, x3, M);
    rhs = rhs + b2 * coeff_of_product(A, x2, M);
    rhs = rhs + QQ(2) * b4 * coeff_of_product(A, x, M);
    rhs = rhs + b6 * A.coeff(M);
    NFElement resid = lhs - rhs;
    if (resid.is_zero()) continue;
    // adding x_n q^n changes (lhs - rhs) at q^M by lam * x_n with
    // lam = -4 n x_m2 - 12 A_2 x_m2^2  (A_2 = b1^2, x_m2 = 1/b1^2)
    NFElement lam = QQ(-4) * QQ(n) * x_m2 - QQ(12) * (A.coeff(2) * x_m2 * x_m2);
    require(!lam.is_zero(), "ode: degenerate recurrence");
    NFElement xn = -(resid / lam);
    QSeries dx(F, 1, xprec);
    dx.set(n, xn);
    QSeries dx2 = qs_mul(dx, dx);
    QSeries d3 = qs_add(qs_scal(QQ(3), qs_mul(x2, dx)),
                        qs_add(qs_scal(QQ(3), qs_mul(x, dx2)), qs_mul(dx2, dx)));
    x2 = qs_add(x2, qs_add(qs_scal(QQ(2), qs_mul(x, dx)), dx2));
    x3 = qs_add(x3, d3);
    QSeries dxp(F, 1, xprec);
    dxp.set(n, QQ(n) * xn);
    xp2 = qs_add(xp2, qs_add(qs_scal(QQ(2), qs_mul(xp, dxp)), qs_mul(dxp, dxp)));
    xp = qs_add(xp, dxp);
    x = qs_add(x, dx);
  }

  QSeries W = qs_invert_unit(om);
  QSeries s = qs_mul(xp, W);
  QSeries a1x = qs_scal(a1, x);
  QSeries a3s(F, 1, x.prec);
  a3s.set(0, a3);
  QSeries y = qs_scal(QQ(1) / 2, qs_sub(qs_sub(s, a1x), a3s));
  return {x, y};
}

std::pair<QSeries, QSeries> solve_weierstrass_ode_short(const QSeries& omega,
                                                        const NFElement& g2,
                                                        const NFElement& g3) {
  WeierstrassODE cur{nf_zero(g2.F), nf_zero(g2.F), nf_zero(g2.F),
                     QQ(-1) / 4 * g2, QQ(-1) / 4 * nf_embed(g3, g2.F)};
  auto [x, y] = solve_weierstrass_ode(omega, cur);
  return {x, qs_scal(QQ(2), y)};
}

std::string to_string(const QSeries& f, int max_terms) {
  std::ostringstream os;
  int shown = 0;
  for (auto& [e, v] : f.c) {
    if (shown++ >= max_terms) { os << " + ..."; break; }
    if (shown > 1) os << " + ";
    os << "(" << to_string(v) << ")q^(" << e << "/" << f.den << ")";
  }
  if (f.c.empty()) os << "0";
  if (f.prec < QS_INF) os << " + O(q^(" << f.prec << "/" << f.den << "))";
  return os.str();
}

}  // namespace mck
