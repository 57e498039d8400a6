#pragma once
// Finite representation models of GL_2(F_p): the principal series on
// functions on P^1(F_p) and the cuspidal Kirillov model on functions on
// F_p^x, with fixed-vector computation under tori and their normalizers
// (both closed-form and by exact linear solve).

#include "mck/chars.hpp"
#include "mck/linalg.hpp"

namespace mck {

struct Mat2 {
  int64_t p;
  int64_t a, b, c, d;  // [[a, b], [c, d]]
  Mat2(int64_t p_, int64_t a_, int64_t b_, int64_t c_, int64_t d_)
      : p(p_), a(imod(a_, p_)), b(imod(b_, p_)), c(imod(c_, p_)), d(imod(d_, p_)) {}
  int64_t det() const { return imod(a * d - b * c, p); }
  bool invertible() const { return det() != 0; }
  static Mat2 identity(int64_t p) { return Mat2(p, 1, 0, 0, 1); }
  friend Mat2 operator*(const Mat2& x, const Mat2& y) {
    require(x.p == y.p, "Mat2: mixed p");
    return Mat2(x.p, x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
                x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d);
  }
  Mat2 inverse() const {
    int64_t di = mod_inv(det(), p);
    return Mat2(p, d * di, -b * di, -c * di, a * di);
  }
  friend bool operator==(const Mat2& x, const Mat2& y) {
    return x.p == y.p && x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

struct TorusSpec {
  enum class Kind { Split, NonSplit };
  Kind kind;
  long p;
  long a = 0;  // non-square parameter, NonSplit only
  static TorusSpec split(long p) { return {Kind::Split, p, 0}; }
  static TorusSpec nonsplit(long p, long a) {
    require(legendre(a, p) == -1, "TorusSpec: a must be a non-square");
    return {Kind::NonSplit, p, imod(a, p)};
  }
};

// All elements of the torus (split: invertible diagonal; nonsplit:
// (u, a v; v, u) with (u,v) != (0,0)).
std::vector<Mat2> torus_elements(const TorusSpec& t);
// Generators of the torus together with the extra normalizer generator.
std::vector<Mat2> torus_generators(const TorusSpec& t);
Mat2 normalizer_extra(const TorusSpec& t);

using RepVector = std::vector<NFElement>;

// pi = Ind(chi (x) chi^{-1}) realized on functions on P^1(F_p);
// indices 0..p-1 are the points of F_p, index p is infinity.
struct PrincipalSeriesRep {
  long p;
  DirichletCharacter chi;  // modulus p
  NFPtr F;                 // coefficient field
  PrincipalSeriesRep(long p_, DirichletCharacter chi_);
  int dim() const { return (int)p + 1; }
  bool steinberg_carrier() const { return chi.is_trivial(); }
  RepVector delta(long x) const;   // x in [0,p-1]
  RepVector delta_inf() const;
};

RepVector ps_action(const PrincipalSeriesRep& rep, const Mat2& g, const RepVector& v);

// Cuspidal representation with trivial central character in the Kirillov
// model: functions on F_p^x (indices 0..p-2 represent x = 1..p-1), with
// parameter theta(gen)= zeta_{p+1}^r on a fixed generator of F_{p^2}^x.
struct CuspidalRep {
  long p;
  long a;        // non-square defining F_{p^2}
  long r;        // theta exponent; valid iff order of zeta_{p+1}^r exceeds 2
  AdditiveCharacter psi;
  NFPtr F;
  Fq generator;                 // canonical generator of F_{p^2}^x
  std::vector<long> log_table;  // discrete log base generator, indexed u*p+v
  CuspidalRep(long p_, long a_, long r_, AdditiveCharacter psi_);
  int dim() const { return (int)p - 1; }
  long theta_order() const { return (p + 1) / igcd(r, p + 1); }
  bool valid() const { return theta_order() > 2; }
  NFElement theta(const Fq& t) const;
  NFElement psi_val(long x) const;
  RepVector delta(long x) const;  // x in [1, p-1]
};

RepVector cusp_action(const CuspidalRep& rep, const Mat2& g, const RepVector& v);

// Matrix of g acting on the representation (columns are images of basis vectors).
template <class Rep, class ActionFn>
Mat<NFElement> action_matrix(const Rep& rep, const Mat2& g, ActionFn action) {
  int n = rep.dim();
  Mat<NFElement> m(n, n, nf_zero(rep.F));
  for (int j = 0; j < n; ++j) {
    RepVector e(n, nf_zero(rep.F));
    e[j] = nf_one(rep.F);
    RepVector img = action(rep, g, e);
    for (int i = 0; i < n; ++i) m.at(i, j) = img[i];
  }
  return m;
}

// Exact fixed space of a list of group elements (kernel of stacked (g-1)).
std::vector<RepVector> fixed_space_ps(const PrincipalSeriesRep& rep,
                                      const std::vector<Mat2>& gens);
std::vector<RepVector> fixed_space_cusp(const CuspidalRep& rep,
                                        const std::vector<Mat2>& gens);

// Closed-form nonsplit-torus fixed vectors.
// Principal series: delta_inf + sum_psi A_psi v_psi, A_psi = sum_x chi(a-x^2)^{-1} psibar(x);
// equivalently f(x) = chi(a-x^2)^{-1}, f(inf) = 1.
RepVector ps_nonsplit_fixed(const PrincipalSeriesRep& rep, const TorusSpec& torus);
// Cuspidal: delta_1 + sum_x A_{theta,x} delta_x with
// A_{theta,x} = -(1/p) sum_u sum_{N(t)=x(u^2-a)} psi(u(x+1)-Tr t) theta(t).
RepVector cusp_nonsplit_fixed(const CuspidalRep& rep, const TorusSpec& torus);

bool rep_vectors_proportional(const RepVector& v, const RepVector& w);

// Exhaustive subgroup enumeration of GL_2(F_3) certifying that the unique
// proper subgroup of order >= 24 is SL_2(F_3).
struct GL2F3Audit {
  long group_order = 0;
  long sl2_order = 0;
  long subgroup_count = 0;
  std::vector<long> orders_ge_24;  // proper subgroup orders >= 24 found
  bool unique_large_is_sl2 = false;
};
GL2F3Audit gl2f3_subgroup_audit();

}  // namespace mck
