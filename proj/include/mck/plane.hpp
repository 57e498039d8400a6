#pragma once
// Plane curves: dense bivariate polynomials over exact fields, finite-field
// point enumeration on the smooth model (branch resolution at singular
// points), resultant-based elimination, singular-point extraction, the
// 4-collinear-points line search and the semistability-degree classifier.

#include <functional>
#include <optional>

#include "mck/fp.hpp"
#include "mck/numfield.hpp"
#include "mck/poly.hpp"

namespace mck {

template <class K>
struct Poly2 {
  K ex;
  int nx = 1, ny = 1;  // allocated sizes (degree bounds + 1)
  std::vector<K> c;    // c[i*ny + j] = coeff of x^i y^j

  explicit Poly2(const K& exemplar, int dx = 0, int dy = 0)
      : ex(k_zero(exemplar)), nx(dx + 1), ny(dy + 1),
        c((size_t)(dx + 1) * (dy + 1), k_zero(exemplar)) {}
  K& at(int i, int j) { return c[(size_t)i * ny + j]; }
  const K& at(int i, int j) const { return c[(size_t)i * ny + j]; }
  K coeff(int i, int j) const {
    if (i < 0 || j < 0 || i >= nx || j >= ny) return ex;
    return at(i, j);
  }
  int degx() const {
    for (int i = nx - 1; i >= 0; --i)
      for (int j = 0; j < ny; ++j)
        if (!k_is_zero(at(i, j))) return i;
    return -1;
  }
  int degy() const {
    for (int j = ny - 1; j >= 0; --j)
      for (int i = 0; i < nx; ++i)
        if (!k_is_zero(at(i, j))) return j;
    return -1;
  }
  int total_degree() const {
    int d = -1;
    for (int i = 0; i < nx; ++i)
      for (int j = 0; j < ny; ++j)
        if (!k_is_zero(at(i, j))) d = std::max(d, i + j);
    return d;
  }
  bool is_zero() const { return degx() < 0; }
  K eval(const K& x, const K& y) const {
    K r = ex;
    for (int i = nx - 1; i >= 0; --i) {
      K row = ex;
      for (int j = ny - 1; j >= 0; --j) row = row * y + at(i, j);
      r = r * x + row;
    }
    return r;
  }
  Poly<K> eval_x(const K& x) const {  // polynomial in y
    Poly<K> r(ex);
    r.c.assign(ny, ex);
    for (int j = 0; j < ny; ++j) {
      K acc = ex;
      for (int i = nx - 1; i >= 0; --i) acc = acc * x + at(i, j);
      r.c[j] = acc;
    }
    r.trim();
    return r;
  }
  Poly<K> eval_y(const K& y) const {  // polynomial in x
    Poly<K> r(ex);
    r.c.assign(nx, ex);
    for (int i = 0; i < nx; ++i) {
      K acc = ex;
      for (int j = ny - 1; j >= 0; --j) acc = acc * y + at(i, j);
      r.c[i] = acc;
    }
    r.trim();
    return r;
  }
  Poly2 dx() const {
    Poly2 r(ex, std::max(0, nx - 2), ny - 1);
    for (int i = 1; i < nx; ++i)
      for (int j = 0; j < ny; ++j) {
        K k = ex;
        for (int t = 0; t < i; ++t) k = k + k_one(ex);
        r.at(i - 1, j) = at(i, j) * k;
      }
    return r;
  }
  Poly2 dy() const {
    Poly2 r(ex, nx - 1, std::max(0, ny - 2));
    for (int i = 0; i < nx; ++i)
      for (int j = 1; j < ny; ++j) {
        K k = ex;
        for (int t = 0; t < j; ++t) k = k + k_one(ex);
        r.at(i, j - 1) = at(i, j) * k;
      }
    return r;
  }
};

template <class K>
Poly2<K> p2_add(const Poly2<K>& f, const Poly2<K>& g) {
  Poly2<K> r(f.ex, std::max(f.nx, g.nx) - 1, std::max(f.ny, g.ny) - 1);
  for (int i = 0; i < r.nx; ++i)
    for (int j = 0; j < r.ny; ++j) r.at(i, j) = f.coeff(i, j) + g.coeff(i, j);
  return r;
}
template <class K>
Poly2<K> p2_neg(const Poly2<K>& f) {
  Poly2<K> r = f;
  for (auto& v : r.c) v = k_zero(f.ex) - v;
  return r;
}
template <class K>
Poly2<K> p2_sub(const Poly2<K>& f, const Poly2<K>& g) { return p2_add(f, p2_neg(g)); }
template <class K>
Poly2<K> p2_mul(const Poly2<K>& f, const Poly2<K>& g) {
  Poly2<K> r(f.ex, f.nx + g.nx - 2, f.ny + g.ny - 2);
  for (int i = 0; i < f.nx; ++i)
    for (int j = 0; j < f.ny; ++j) {
      if (k_is_zero(f.at(i, j))) continue;
      for (int k = 0; k < g.nx; ++k)
        for (int l = 0; l < g.ny; ++l) {
          if (k_is_zero(g.at(k, l))) continue;
          r.at(i + k, j + l) = r.at(i + k, j + l) + f.at(i, j) * g.at(k, l);
        }
    }
  return r;
}
template <class K>
Poly2<K> p2_scal(const K& s, const Poly2<K>& f) {
  Poly2<K> r = f;
  for (auto& v : r.c) v = s * v;
  return r;
}

// Reduction of a number-field bivariate polynomial mod a prime split.
Poly2<Fq> p2_reduce(const Poly2<NFElement>& f, const PrimeSplitData& s);

// --- points of a curve model over F_q -----------------------------------

// A point of the smooth model lying over a (possibly singular) point of a
// plane model chart. Branch identity at multi-branch points is the tangent
// direction (our singularities have pairwise distinct branch tangents).
struct CurvePoint {
  int chart = 0;
  Fq x, y;
  int branches_here = 1;
  bool singular_base = false;
  bool tangent_inf = false;  // branch tangent to the vertical line
  Fq tangent;                // valid when singular_base && branches_here > 1
  bool operator<(const CurvePoint& o) const;
  bool operator==(const CurvePoint& o) const;
};

// Branch resolution at one plane point: number of F_q-rational branches and
// their tangent tags. Throws on unsupported singularity shapes.
struct BranchInfo {
  int rational_branches = 0;
  std::vector<std::pair<bool, Fq>> tangents;  // (tangent_inf, value), per rational branch
  // degree-2 clusters (pairs of conjugate branches over F_{q^2}), as the
  // quadratic tangent-direction polynomials z^2 + b z + c.
  std::vector<std::pair<Fq, Fq>> quad_clusters;
};
BranchInfo resolve_branches(const Poly2<Fq>& f, const Fq& x0, const Fq& y0);

// All F_q-points of the smooth model of a bi-projective (P1 x P1) model.
// Charts: 0 (x,y), 1 (x,1/y), 2 (1/x,y), 3 (1/x,1/y); points on the lines at
// infinity appear in the minimal chart that contains them.
struct BiprojCurve {
  Poly2<Fq> f;              // affine chart-0 equation
  int dx, dy;               // bidegree (for homogenization)
  Poly2<Fq> chart(int id) const;
};
BiprojCurve biproj(const Poly2<Fq>& f, int dx, int dy);
std::vector<CurvePoint> enumerate_biproj(const BiprojCurve& c);

// Projective plane curve (degree d homogenization of the affine equation).
struct ProjCurve {
  Poly2<Fq> f;  // affine z=1 equation
  int deg;
  Poly2<Fq> chart(int id) const;  // 0: (x,y); 1: y=1 line coords (x, z); 2: point x=1 (y,z)
};
ProjCurve proj(const Poly2<Fq>& f, int deg);
std::vector<CurvePoint> enumerate_proj(const ProjCurve& c);

// Plain projective point count of the plane model (no branch resolution);
// independent oracle for tests.
long count_plane_points_proj(const Poly2<Fq>& f, int deg);

// Frobenius on curve points (x -> x^p on coordinates and tangent tags).
CurvePoint frobenius(const CurvePoint& pt);

// --- resultants and singular points over Q ------------------------------

// Resultant with respect to y (eliminating y), exact over Q by evaluation
// and interpolation.
Poly<QQ> resultant_y(const Poly2<QQ>& f, const Poly2<QQ>& g);
Poly<QQ> resultant_x(const Poly2<QQ>& f, const Poly2<QQ>& g);

// Factors of degree <= maxdeg of a rational polynomial (deterministic:
// rational roots plus Hensel-lifted quadratic factors).
std::vector<Poly<QQ>> small_factors(const Poly<QQ>& f, int maxdeg = 2);

struct SingularPoint {
  Poly<QQ> min_poly_x{QQ(0)};  // degree <= 2 minimal polynomial of the x-coordinate
  // y expressed as a + b*x over Q (on the curve, for that x-root), or a
  // second minimal polynomial when y does not lie in Q(x0).
  bool y_linear_in_x = true;
  QQ ya, yb;                   // y = ya + yb * x0
  Poly<QQ> min_poly_y{QQ(0)};  // used when !y_linear_in_x
};
// Singular points of the affine plane curve with coordinates of degree <= 2.
std::vector<SingularPoint> singular_points(const Poly2<QQ>& f);

// Number of affine singular points over F_p (Jacobian-rank scan oracle).
long count_singular_points_fp(const Poly2<Fq>& f);

// --- Lemma 3.4 line search ----------------------------------------------

struct LineSearchResult {
  bool found = false;
  // line a x + b y + c z = 0
  int64_t a = 0, b = 0, cc = 0;
  long lines_scanned = 0;
};
// Search P2(F_q)^dual for a line meeting the (smooth) quartic in 4 distinct
// rational points; exhaustive scan certificate when none exists.
LineSearchResult line_search_4pts(const Poly2<Fq>& quartic_affine, int64_t q);

// Sturm count of distinct real roots of a rational polynomial.
int sturm_real_roots(const Poly<QQ>& f);

// --- semistability degree (section-6 classifier) -------------------------

struct SemistabilityResult {
  int e;  // minimal e with 12 | v(Delta) e
  enum class Hint { None, JZero, J1728 } hint;
};
SemistabilityResult semistability_degree(long vA, long vB, long vDelta);

}  // namespace mck
