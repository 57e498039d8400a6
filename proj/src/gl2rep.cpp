#include "mck/gl2rep.hpp"

#include <algorithm>
#include <set>

namespace mck {

namespace {
long unitgen(long p) {
  for (long g = 2; g < p; ++g) {
    bool ok = true;
    for (auto& [q, e] : factorize(p - 1))
      if (mod_pow(g, (p - 1) / q, p) == 1) { ok = false; break; }
    if (ok) return g;
  }
  throw error("unitgen: none");
}
}  // namespace

std::vector<Mat2> torus_elements(const TorusSpec& t) {
  std::vector<Mat2> out;
  if (t.kind == TorusSpec::Kind::Split) {
    for (long u = 1; u < t.p; ++u)
      for (long w = 1; w < t.p; ++w) out.emplace_back(t.p, u, 0, 0, w);
  } else {
    for (long u = 0; u < t.p; ++u)
      for (long v = 0; v < t.p; ++v) {
        if (u == 0 && v == 0) continue;
        out.emplace_back(t.p, u, t.a * v, v, u);
      }
  }
  return out;
}

std::vector<Mat2> torus_generators(const TorusSpec& t) {
  std::vector<Mat2> gens;
  if (t.kind == TorusSpec::Kind::Split) {
    long g = unitgen(t.p);
    gens.emplace_back(t.p, g, 0, 0, 1);
    gens.emplace_back(t.p, 1, 0, 0, g);
  } else {
    // find (u,v) with u + v sqrt(a) generating F_{p^2}^x
    long q = t.p * t.p;
    for (long u = 0; u < t.p; ++u)
      for (long v = 1; v < t.p; ++v) {
        Fq x(t.p, t.a, u, v);
        long ord = 1;
        Fq y = x;
        Fq one(t.p, t.a, 1, 0);
        while (!(y == one)) { y = y * x; ord++; }
        if (ord == q - 1) {
          gens.emplace_back(t.p, u, t.a * v, v, u);
          return gens;
        }
      }
    throw error("torus_generators: no generator found");
  }
  return gens;
}

Mat2 normalizer_extra(const TorusSpec& t) {
  if (t.kind == TorusSpec::Kind::Split) return Mat2(t.p, 0, -1, 1, 0);
  // conjugation by diag(1,-1) inverts (u,av;v,u) -> (u,-av;-v,u), the
  // Frobenius on F_{p^2}
  return Mat2(t.p, 1, 0, 0, -1);
}

PrincipalSeriesRep::PrincipalSeriesRep(long p_, DirichletCharacter chi_)
    : p(p_), chi(std::move(chi_)) {
  require(chi.modulus == p, "PrincipalSeriesRep: character modulus must be p");
  F = chi.order <= 2 ? NumberField::rational() : NumberField::cyclotomic(chi.order);
}

RepVector PrincipalSeriesRep::delta(long x) const {
  RepVector v((size_t)dim(), nf_zero(F));
  v[imod(x, p)] = nf_one(F);
  return v;
}
RepVector PrincipalSeriesRep::delta_inf() const {
  RepVector v((size_t)dim(), nf_zero(F));
  v[p] = nf_one(F);
  return v;
}

RepVector ps_action(const PrincipalSeriesRep& rep, const Mat2& g, const RepVector& v) {
  require(g.p == rep.p, "ps_action: p mismatch");
  require((int)v.size() == rep.dim(), "ps_action: dimension mismatch");
  require(g.invertible(), "ps_action: singular matrix");
  long p = rep.p;
  RepVector out((size_t)rep.dim(), nf_zero(rep.F));
  // (g.f)(w) = f(g_w g) where g_inf = I, g_x = [[0,1],[1,x]]
  auto value_factor = [&](const Mat2& m, long& wprime) {
    // write m = b * g_{w'}; return chi(b11) chi^{-1}(b22)
    if (m.c != 0) {
      wprime = imod(m.d * mod_inv(m.c, p), p);
      // b = m * g_{w'}^{-1}, g_x^{-1} = [[-x,1],[1,0]]
      Mat2 b = m * Mat2(p, -wprime, 1, 1, 0);
      require(b.c == 0, "ps_action: factorization failed");
      return rep.chi.evaluate(b.a) * nf_inv(rep.chi.evaluate(b.d));
    }
    wprime = p;  // infinity
    return rep.chi.evaluate(m.a) * nf_inv(rep.chi.evaluate(m.d));
  };
  for (long w = 0; w <= p; ++w) {
    Mat2 gw = (w == p) ? Mat2::identity(p) : Mat2(p, 0, 1, 1, w);
    Mat2 m = gw * g;
    long wprime;
    NFElement f = value_factor(m, wprime);
    if (!v[wprime].is_zero()) out[w] = f * v[wprime];
  }
  return out;
}

CuspidalRep::CuspidalRep(long p_, long a_, long r_, AdditiveCharacter psi_)
    : p(p_), a(imod(a_, p_)), r(imod(r_, p_ + 1)), psi(psi_) {
  require(legendre(a, p) == -1, "CuspidalRep: a must be a non-square");
  require(psi.p == p && psi.k != 0, "CuspidalRep: invalid additive character");
  F = NumberField::cyclotomic(ilcm(p, p + 1));
  // canonical generator: smallest (u,v) in lex order generating F_{p^2}^x
  long q = p * p;
  bool found = false;
  for (long u = 0; u < p && !found; ++u)
    for (long v = 0; v < p && !found; ++v) {
      if (u == 0 && v == 0) continue;
      Fq x(p, a, u, v);
      long ord = 1;
      Fq y = x;
      Fq one(p, a, 1, 0);
      while (!(y == one)) { y = y * x; ord++; }
      if (ord == q - 1) {
        generator = x;
        found = true;
      }
    }
  require(found, "CuspidalRep: no generator");
  log_table.assign((size_t)q, -1);
  Fq cur(p, a, 1, 0);
  for (long k = 0; k < q - 1; ++k) {
    log_table[(size_t)(cur.c0 * p + cur.c1)] = k;
    cur = cur * generator;
  }
}

NFElement CuspidalRep::theta(const Fq& t) const {
  require(!t.is_zero(), "theta: zero argument");
  long lg = log_table[(size_t)(t.c0 * p + t.c1)];
  require(lg >= 0, "theta: log table miss");
  return nf_pow(nf_zeta(F, p + 1), imod(r * lg, p + 1));
}

NFElement CuspidalRep::psi_val(long x) const {
  return nf_pow(nf_zeta(F, p), imod(psi.k * x, p));
}

RepVector CuspidalRep::delta(long x) const {
  RepVector v((size_t)dim(), nf_zero(F));
  long xm = imod(x, p);
  require(xm != 0, "delta: x must be nonzero");
  v[xm - 1] = nf_one(F);
  return v;
}

RepVector cusp_action(const CuspidalRep& rep, const Mat2& g, const RepVector& v) {
  require(g.p == rep.p, "cusp_action: p mismatch");
  require((int)v.size() == rep.dim(), "cusp_action: dimension mismatch");
  require(g.invertible(), "cusp_action: singular matrix");
  long p = rep.p;
  RepVector out((size_t)rep.dim(), nf_zero(rep.F));
  if (g.c == 0) {
    // (g.f)(x) = psi((b/d) x) f((a/d) x)
    long bd = imod(g.b * mod_inv(g.d, p), p);
    long ad = imod(g.a * mod_inv(g.d, p), p);
    for (long x = 1; x < p; ++x) {
      long src = imod(ad * x, p);
      if (v[src - 1].is_zero()) continue;
      out[x - 1] = rep.psi_val(imod(bd * x, p)) * v[src - 1];
    }
    return out;
  }
  // k(x,y;g) = -(1/p) psi((a x + d y)/c) sum_{N(t) = (x/y) det g} psi(-(y/c) Tr t) theta(t)
  long det = g.det();
  long cinv = mod_inv(g.c, p);
  QQ minus_inv_p = QQ(-1) / QQ(p);
  for (long y = 1; y < p; ++y) {
    if (v[y - 1].is_zero()) continue;
    long yinv = mod_inv(y, p);
    for (long x = 1; x < p; ++x) {
      long normval = imod(x * yinv % p * det, p);
      NFElement s = nf_zero(rep.F);
      for (const Fq& t : norm_fiber(normval, p, rep.a)) {
        long tr = fq_trace(t);
        long arg = imod(-(y * cinv % p) * tr, p);
        s = s + rep.psi_val(arg) * rep.theta(t);
      }
      NFElement k = minus_inv_p * (rep.psi_val(imod((g.a * x + g.d * y) % p * cinv, p)) * s);
      out[x - 1] = out[x - 1] + k * v[y - 1];
    }
  }
  return out;
}

namespace {
template <class Rep, class ActionFn>
std::vector<RepVector> fixed_space_impl(const Rep& rep, const std::vector<Mat2>& gens,
                                        ActionFn action) {
  int n = rep.dim();
  Mat<NFElement> stacked((int)gens.size() * n, n, nf_zero(rep.F));
  for (size_t k = 0; k < gens.size(); ++k) {
    Mat<NFElement> m = action_matrix(rep, gens[k], action);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        NFElement val = m.at(i, j);
        if (i == j) val = val - nf_one(rep.F);
        stacked.at((int)k * n + i, j) = val;
      }
  }
  return kernel_basis(stacked);
}
}  // namespace

std::vector<RepVector> fixed_space_ps(const PrincipalSeriesRep& rep,
                                      const std::vector<Mat2>& gens) {
  return fixed_space_impl(rep, gens,
                          [](const PrincipalSeriesRep& r, const Mat2& g, const RepVector& v) {
                            return ps_action(r, g, v);
                          });
}

std::vector<RepVector> fixed_space_cusp(const CuspidalRep& rep,
                                        const std::vector<Mat2>& gens) {
  return fixed_space_impl(rep, gens,
                          [](const CuspidalRep& r, const Mat2& g, const RepVector& v) {
                            return cusp_action(r, g, v);
                          });
}

RepVector ps_nonsplit_fixed(const PrincipalSeriesRep& rep, const TorusSpec& torus) {
  require(!rep.chi.is_trivial(), "ps_nonsplit_fixed: chi must be nontrivial");
  require(torus.kind == TorusSpec::Kind::NonSplit && torus.p == rep.p,
          "ps_nonsplit_fixed: need a nonsplit torus at p");
  long p = rep.p, a = torus.a;
  RepVector v((size_t)rep.dim(), nf_zero(rep.F));
  v[p] = nf_one(rep.F);  // f(inf) = 1
  for (long x = 0; x < p; ++x) {
    long arg = imod(a - x * x, p);
    v[x] = nf_inv(rep.chi.evaluate(arg));
  }
  return v;
}

RepVector cusp_nonsplit_fixed(const CuspidalRep& rep, const TorusSpec& torus) {
  require(rep.valid(), "cusp_nonsplit_fixed: degenerate theta");
  require(torus.kind == TorusSpec::Kind::NonSplit && torus.p == rep.p && torus.a == rep.a,
          "cusp_nonsplit_fixed: torus parameter must match the model");
  long p = rep.p, a = rep.a;
  RepVector v((size_t)rep.dim(), nf_zero(rep.F));
  v[0] = nf_one(rep.F);  // delta_1
  QQ minus_inv_p = QQ(-1) / QQ(p);
  for (long x = 1; x < p; ++x) {
    NFElement acc = nf_zero(rep.F);
    for (long u = 0; u < p; ++u) {
      long nval = imod(x * (u * u - a), p);
      NFElement inner = nf_zero(rep.F);
      for (const Fq& t : norm_fiber(nval, p, a)) {
        long arg = imod(u * (x + 1) - fq_trace(t), p);
        inner = inner + rep.psi_val(arg) * rep.theta(t);
      }
      acc = acc + inner;
    }
    v[x - 1] = v[x - 1] + minus_inv_p * acc;
  }
  return v;
}

bool rep_vectors_proportional(const RepVector& v, const RepVector& w) {
  require(v.size() == w.size(), "proportional: size mismatch");
  int iv = -1;
  for (size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) { iv = (int)i; break; }
  if (iv < 0) {
    for (auto& x : w)
      if (!x.is_zero()) return false;
    return true;
  }
  if (w[iv].is_zero()) return false;
  NFElement lam = w[iv] / v[iv];
  for (size_t i = 0; i < v.size(); ++i)
    if (!(lam * v[i] == w[i])) return false;
  return true;
}

GL2F3Audit gl2f3_subgroup_audit() {
  const long p = 3;
  // encode matrices as indices 0..80
  auto enc = [&](const Mat2& m) {
    return (int)(((m.a * p + m.b) * p + m.c) * p + m.d);
  };
  std::vector<Mat2> elems;
  std::vector<int> code_to_idx(81, -1);
  for (long a = 0; a < p; ++a)
    for (long b = 0; b < p; ++b)
      for (long c = 0; c < p; ++c)
        for (long d = 0; d < p; ++d) {
          Mat2 m(p, a, b, c, d);
          if (m.invertible()) {
            code_to_idx[enc(m)] = (int)elems.size();
            elems.push_back(m);
          }
        }
  int n = (int)elems.size();  // 48
  std::vector<std::vector<int>> mul(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mul[i][j] = code_to_idx[enc(elems[i] * elems[j])];

  using Mask = std::pair<uint64_t, uint64_t>;  // 48 bits used
  auto set_bit = [](Mask& m, int i) {
    if (i < 64) m.first |= 1ULL << i;
    else m.second |= 1ULL << (i - 64);
  };
  auto get_bit = [](const Mask& m, int i) {
    return i < 64 ? (m.first >> i) & 1 : (m.second >> (i - 64)) & 1;
  };

  auto closure = [&](std::vector<int> gens) {
    std::vector<int> elts{code_to_idx[enc(Mat2::identity(p))]};
    Mask seen{0, 0};
    set_bit(seen, elts[0]);
    for (int g : gens)
      if (!get_bit(seen, g)) { set_bit(seen, g); elts.push_back(g); }
    bool grew = true;
    while (grew) {
      grew = false;
      size_t sz = elts.size();
      for (size_t i = 0; i < sz; ++i)
        for (size_t j = 0; j < sz; ++j) {
          int k = mul[elts[i]][elts[j]];
          if (!get_bit(seen, k)) {
            set_bit(seen, k);
            elts.push_back(k);
            grew = true;
          }
        }
    }
    return seen;
  };

  // enumerate all subgroups: grow from cyclic subgroups
  std::set<Mask> subgroups;
  std::vector<Mask> frontier;
  for (int g = 0; g < n; ++g) {
    Mask m = closure({g});
    if (subgroups.insert(m).second) frontier.push_back(m);
  }
  while (!frontier.empty()) {
    std::vector<Mask> next;
    for (const Mask& h : frontier) {
      std::vector<int> base;
      for (int i = 0; i < n; ++i)
        if (get_bit(h, i)) base.push_back(i);
      for (int g = 0; g < n; ++g) {
        if (get_bit(h, g)) continue;
        std::vector<int> gens = base;
        gens.push_back(g);
        Mask m = closure(gens);
        if (subgroups.insert(m).second) next.push_back(m);
      }
    }
    frontier = std::move(next);
  }

  Mask sl2{0, 0};
  int sl2n = 0;
  for (int i = 0; i < n; ++i)
    if (elems[i].det() == 1) { set_bit(sl2, i); sl2n++; }

  GL2F3Audit audit;
  audit.group_order = n;
  audit.sl2_order = sl2n;
  audit.subgroup_count = (long)subgroups.size();
  audit.unique_large_is_sl2 = true;
  for (const Mask& m : subgroups) {
    int sz = __builtin_popcountll(m.first) + __builtin_popcountll(m.second);
    if (sz >= 24 && sz < n) {
      audit.orders_ge_24.push_back(sz);
      if (!(m == sl2)) audit.unique_large_is_sl2 = false;
    }
  }
  return audit;
}

}  // namespace mck
