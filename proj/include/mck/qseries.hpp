#pragma once
// Truncated q-series with fractional exponents (fixed denominator) and
// number-field coefficients. Exponents are stored as integer numerators over
// a common denominator `den`; coefficients with numerator >= prec are unknown.
//
// A weight-2 form with expansion sum a_n q^n is identified with the
// differential (sum a_n q^n) dq/q throughout the library.

#include <map>

#include "mck/numfield.hpp"

namespace mck {

constexpr long QS_INF = (long)4e15;  // "exact" precision sentinel

struct QSeries {
  NFPtr F;
  long den = 1;
  long prec = QS_INF;               // exponent-numerator bound
  std::map<long, NFElement> c;      // numerator -> nonzero coefficient

  QSeries() : F(NumberField::rational()) {}
  QSeries(NFPtr field, long den_, long prec_) : F(std::move(field)), den(den_), prec(prec_) {}

  bool is_zero() const { return c.empty(); }
  long min_exp() const { return c.empty() ? prec : c.begin()->first; }
  NFElement coeff(long num) const {
    auto it = c.find(num);
    return it == c.end() ? nf_zero(F) : it->second;
  }
  // coefficient of q^(num/d) given in other denominator d | den scaling
  NFElement coeff_frac(long num, long d) const {
    require(den % d == 0, "coeff_frac: incompatible denominator");
    return coeff(num * (den / d));
  }
  void set(long num, const NFElement& v) {
    if (v.is_zero()) c.erase(num);
    else if (num < prec) c[num] = nf_embed(v, F);
  }
};

QSeries qs_zero(NFPtr F, long den, long prec);
QSeries qs_one(NFPtr F, long prec);  // den 1

// Rescale to a denominator that is a multiple of the current one.
QSeries qs_with_den(const QSeries& f, long new_den);

QSeries qs_add(const QSeries& f, const QSeries& g);
QSeries qs_sub(const QSeries& f, const QSeries& g);
QSeries qs_neg(const QSeries& f);
QSeries qs_scal(const NFElement& s, const QSeries& f);
QSeries qs_scal(const QQ& s, const QSeries& f);
QSeries qs_mul(const QSeries& f, const QSeries& g);
QSeries qs_invert_unit(const QSeries& f);
QSeries qs_div(const QSeries& f, const QSeries& g);
QSeries qs_pow(const QSeries& f, long k);
// k-th root with leading coefficient an exact k-th power (checked; the
// monic-leading case is what the library needs).
QSeries qs_root(const QSeries& f, long k);

bool qs_equal(const QSeries& f, const QSeries& g);  // up to min precision

// f(z/m): every exponent e becomes e/m.
QSeries qs_scale_variable(const QSeries& f, long m);
// q -> q^m: every exponent e becomes e*m.
QSeries qs_substitute_power(const QSeries& f, long m);
// q^(n/d) -> zeta^n q^(n/d) for a fixed root of unity zeta (formal z -> z+1/den shift).
QSeries qs_twist_exponents(const QSeries& f, const NFElement& zeta);

// Split by numerator residue mod p (denominator must be divisible by p).
std::vector<QSeries> qs_residue_split(const QSeries& f, long p);

// q d/dq: multiplies the q^(n/d) coefficient by n/d.
QSeries qs_qddq(const QSeries& f);

enum class ClassicalSeries { E4, E6, Delta, J };
QSeries classical_series(ClassicalSeries which, long prec);

// prod_{n>=1} (1 - q^n) to O(q^prec) (pentagonal number theorem).
QSeries euler_product(long prec);

// Unique Laurent solution of the Weierstrass system
//   y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6,  dx/(2y + a1 x + a3) = Omega
// with x = (1/b1^2) q^-2 + ..., where Omega = sum_{n>=1} b_n q^n (b1 != 0)
// stands for the differential Omega dq/q. Integer exponents required.
struct WeierstrassODE {
  NFElement a1, a2, a3, a4, a6;
};
std::pair<QSeries, QSeries> solve_weierstrass_ode(const QSeries& omega,
                                                  const WeierstrassODE& curve);
// Short form y^2 = 4x^3 - g2 x - g3 (returns that y, i.e. twice the long-form y).
std::pair<QSeries, QSeries> solve_weierstrass_ode_short(const QSeries& omega,
                                                        const NFElement& g2,
                                                        const NFElement& g3);

std::string to_string(const QSeries& f, int max_terms = 12);

}  // namespace mck
