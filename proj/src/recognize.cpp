#include "mck/recognize.hpp"

#include "mck/linalg.hpp"

namespace mck {

namespace {

Poly<NFElement> reduce_pair(Poly<NFElement>& num, Poly<NFElement>& den) {
  Poly<NFElement> g = poly_gcd(num, den);
  if (g.deg() >= 1) {
    num = poly_div_exact(num, g);
    den = poly_div_exact(den, g);
  }
  if (!den.is_zero()) {
    NFElement il = nf_inv(den.lead());
    den = den.scaled(il);
    num = num.scaled(il);
  }
  return g;
}

}  // namespace

std::optional<RationalFn> recognize_rational_function(const QSeries& target,
                                                      const QSeries& t, int bound,
                                                      const QSeries* multiplier,
                                                      int surplus) {
  NFPtr F = nf_join(target.F, t.F);
  if (multiplier) F = nf_join(F, multiplier->F);
  long den = ilcm(target.den, t.den);
  if (multiplier) den = ilcm(den, multiplier->den);
  QSeries tgt = qs_with_den(target, den);
  QSeries tt = qs_with_den(t, den);
  QSeries mult = multiplier ? qs_with_den(*multiplier, den) : qs_one(F, QS_INF);
  mult = qs_with_den(mult, den);

  // columns: tgt * t^i (i = 0..bound) and -mult * t^i
  std::vector<QSeries> cols;
  QSeries tp = qs_one(F, QS_INF);
  tp = qs_with_den(tp, den);
  for (int i = 0; i <= bound; ++i) {
    cols.push_back(qs_mul(tgt, tp));
    if (i < bound) tp = qs_mul(tp, tt);
  }
  tp = qs_one(F, QS_INF);
  tp = qs_with_den(tp, den);
  for (int i = 0; i <= bound; ++i) {
    cols.push_back(qs_neg(qs_mul(mult, tp)));
    if (i < bound) tp = qs_mul(tp, tt);
  }
  long lo = QS_INF, hi = QS_INF;
  for (auto& c : cols) {
    if (!c.c.empty()) lo = std::min(lo, c.min_exp());
    hi = std::min(hi, c.prec);
  }
  if (lo >= hi) return std::nullopt;
  long rows = hi - lo;
  long unknowns = 2 * (bound + 1);
  if (rows < unknowns + surplus) return std::nullopt;  // insufficient precision

  Mat<NFElement> m((int)rows, (int)cols.size(), nf_zero(F));
  for (size_t j = 0; j < cols.size(); ++j)
    for (auto& [e, v] : cols[j].c) {
      if (e < lo || e >= hi) continue;
      m.at((int)(e - lo), (int)j) = nf_embed(v, F);
    }
  auto ker = kernel_basis(m);
  if (ker.empty()) return std::nullopt;
  // pick a kernel vector with nonzero denominator part
  for (auto& v : ker) {
    Poly<NFElement> D(nf_zero(F)), N(nf_zero(F));
    D.c.assign(bound + 1, nf_zero(F));
    N.c.assign(bound + 1, nf_zero(F));
    for (int i = 0; i <= bound; ++i) {
      D.c[i] = v[i];
      N.c[i] = v[bound + 1 + i];
    }
    D.trim();
    N.trim();
    if (D.is_zero()) continue;
    reduce_pair(N, D);
    RationalFn fn{N, D};
    // verify: target * den(t) * (1/mult) - num(t) = 0 at available precision
    QSeries lhs = qs_mul(tgt, [&] {
      QSeries s(F, den, QS_INF);
      QSeries acc = qs_with_den(qs_one(F, QS_INF), den);
      QSeries out(F, den, QS_INF);
      QSeries tpow = acc;
      for (int i = 0; i <= D.deg(); ++i) {
        out = qs_add(out, qs_scal(D.coeff(i), tpow));
        if (i < D.deg()) tpow = qs_mul(tpow, tt);
      }
      (void)s;
      return out;
    }());
    QSeries rhs(F, den, QS_INF);
    {
      QSeries tpow = qs_with_den(qs_one(F, QS_INF), den);
      for (int i = 0; i <= N.deg(); ++i) {
        rhs = qs_add(rhs, qs_scal(N.coeff(i), tpow));
        if (i < N.deg()) tpow = qs_mul(tpow, tt);
      }
      rhs = qs_mul(mult, rhs);
    }
    if (qs_equal(lhs, rhs)) return fn;
  }
  return std::nullopt;
}

QSeries rationalfn_eval(const RationalFn& fn, const QSeries& t) {
  NFPtr F = nf_join(fn.num.ex.F, t.F);
  QSeries num(F, t.den, QS_INF), den(F, t.den, QS_INF);
  QSeries tpow = qs_with_den(qs_one(F, QS_INF), t.den);
  int dmax = std::max(fn.num.deg(), fn.den.deg());
  for (int i = 0; i <= dmax; ++i) {
    if (i <= fn.num.deg()) num = qs_add(num, qs_scal(fn.num.coeff(i), tpow));
    if (i <= fn.den.deg()) den = qs_add(den, qs_scal(fn.den.coeff(i), tpow));
    if (i < dmax) tpow = qs_mul(tpow, t);
  }
  return qs_div(num, den);
}

std::optional<TripleCoverExpr> recognize_in_function_field(const QSeries& target,
                                                           const QSeries& h,
                                                           const QSeries& g, int bound) {
  require(target.den == 1 && h.den == 1 && g.den == 1,
          "recognize_in_function_field: integer exponents expected");
  // sanity of the grading
  for (auto& [e, v] : h.c) require(imod(e, 3) == 0, "h must be 0-graded mod 3");
  for (auto& [e, v] : g.c) require(imod(e, 3) == 1, "g must be 1-graded mod 3");
  QSeries g2 = qs_mul(g, g);
  std::vector<QSeries> parts(3, QSeries(target.F, 1, target.prec));
  for (auto& [e, v] : target.c) parts[imod(e, 3)].c.emplace(e, v);
  for (int r = 0; r < 3; ++r) parts[r].prec = target.prec;

  TripleCoverExpr out;
  for (int r = 0; r < 3; ++r) {
    int gp = r;  // residue r needs g^r (g is 1-graded)
    const QSeries* mult = nullptr;
    QSeries mseries;
    if (gp == 1) { mseries = g; mult = &mseries; }
    if (gp == 2) { mseries = g2; mult = &mseries; }
    if (parts[r].is_zero()) {
      RationalFn zero{Poly<NFElement>(nf_zero(target.F)),
                      Poly<NFElement>::constant(nf_one(target.F))};
      out.pieces.push_back({r, gp, zero});
      continue;
    }
    std::optional<RationalFn> found;
    for (int b = 0; b <= bound && !found; ++b)
      found = recognize_rational_function(parts[r], h, b, mult);
    if (!found) return std::nullopt;
    out.pieces.push_back({r, gp, *found});
  }
  // detect a perfect-square class-0 piece: num and den both squares (up to
  // making them monic; account for a square leading ratio)
  const RationalFn& p0 = out.pieces[0].fn;
  if (!p0.num.is_zero()) {
    Poly<NFElement> ns(nf_zero(target.F)), ds(nf_zero(target.F));
    Poly<NFElement> nmon = p0.num.monic(), dmon = p0.den.monic();
    if (p0.num.deg() % 2 == 0 && p0.den.deg() % 2 == 0 && poly_sqrt(nmon, ns) &&
        poly_sqrt(dmon, ds)) {
      // leading coefficient of num must be a square in the field for an exact
      // square root; report the monic square root pair regardless (degree data)
      out.piece0_sqrt = RationalFn{ns, ds};
    }
  }
  return out;
}

QSeries triple_cover_eval(const TripleCoverExpr& expr, const QSeries& h, const QSeries& g) {
  QSeries acc(h.F, 1, QS_INF);
  for (auto& piece : expr.pieces) {
    QSeries val = rationalfn_eval(piece.fn, h);
    for (int i = 0; i < piece.g_power; ++i) val = qs_mul(val, g);
    acc = qs_add(acc, val);
  }
  return acc;
}

}  // namespace mck
