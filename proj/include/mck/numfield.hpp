#pragma once
// Exact arithmetic in small number fields: Q, quadratic fields Q(sqrt d),
// cyclotomic fields Q(zeta_n), and ad-hoc fields Q[x]/(m). Elements are
// rational coordinate vectors in the power basis of the generator.
//
// Mixed-field arithmetic goes through explicit embeddings into a common
// cyclotomic overfield (quadratic fields embed via Gauss sums).

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mck/fp.hpp"
#include "mck/util.hpp"

namespace mck {

struct NumberField;
using NFPtr = std::shared_ptr<const NumberField>;

struct NumberField {
  enum class Kind { Rational, Quadratic, Cyclotomic, General };
  Kind kind;
  long param;  // d for Quadratic (squarefree, not 0/1), n for Cyclotomic
  int deg;
  std::vector<QQ> minpoly;  // monic, length deg+1
  std::string name;
  std::vector<std::vector<QQ>> redrows;  // x^(deg+i) reduced, i in [0, deg-1)

  static NFPtr rational();
  static NFPtr quadratic(long d);
  static NFPtr cyclotomic(long n);  // canonicalizes n (1,2 -> Q; 2 mod 4 -> n/2)
  static NFPtr general(std::vector<QQ> minpoly, std::string name);

  bool same_as(const NumberField& o) const;
};

// Conductor of Q(sqrt d) inside cyclotomics: |disc| = |d| or 4|d|.
long quadratic_conductor(long d);

// Cyclotomic polynomial Phi_n over Z (as QQ coefficients).
std::vector<QQ> cyclotomic_polynomial(long n);

struct NFElement {
  NFPtr F;
  std::vector<QQ> c;  // power-basis coordinates, size F->deg

  NFElement() = default;
  NFElement(NFPtr field, std::vector<QQ> coords);

  bool is_zero() const;
  bool is_rational() const;
  QQ rational_value() const;  // requires is_rational()

  friend bool operator==(const NFElement& a, const NFElement& b);
  friend bool operator!=(const NFElement& a, const NFElement& b) { return !(a == b); }
};

NFElement nf(NFPtr F, const QQ& v);           // rational constant in F
NFElement nf_gen(NFPtr F);                    // the power-basis generator
NFElement nf_zero(NFPtr F);
NFElement nf_one(NFPtr F);

NFElement operator+(const NFElement& a, const NFElement& b);
NFElement operator-(const NFElement& a, const NFElement& b);
NFElement operator-(const NFElement& a);
NFElement operator*(const NFElement& a, const NFElement& b);
NFElement operator*(const QQ& s, const NFElement& a);
NFElement nf_inv(const NFElement& a);
NFElement operator/(const NFElement& a, const NFElement& b);
NFElement nf_pow(const NFElement& a, long e);

std::string to_string(const NFElement& a);

// k_* protocol so Poly<NFElement>/Mat<NFElement> work.
inline NFElement k_zero(const NFElement& like) { return nf_zero(like.F); }
inline NFElement k_one(const NFElement& like) { return nf_one(like.F); }
inline bool k_is_zero(const NFElement& x) { return x.is_zero(); }
inline NFElement k_inv(const NFElement& x) { return nf_inv(x); }

// Galois action. Quadratic fields: sigma = 1 is the nontrivial conjugation.
// Cyclotomic(n): sigma = k with gcd(k,n) = 1 sends zeta to zeta^k.
NFElement galois_conjugate(const NFElement& a, long sigma);

// zeta_m inside a cyclotomic field whose index m divides (canonical) n.
NFElement nf_zeta(NFPtr cyclo, long m);
// Image of sqrt(d) inside cyclotomic field (conductor must divide n).
NFElement nf_sqrt(NFPtr cyclo, long d);

// Smallest common overfield and coercion into it.
NFPtr nf_join(const NFPtr& A, const NFPtr& B);
NFElement nf_embed(const NFElement& x, const NFPtr& target);

// --- reduction mod p ---

struct PrimeSplitData {
  NFPtr F;
  int64_t p = 0;
  int f = 1;       // residue degree
  Fq gen_image;    // image of the power-basis generator in F_{p^f}
};

// Choose a split: find a root of the minimal polynomial in F_p, else F_{p^2}.
// root_index selects among the sorted roots of smallest-degree residue field.
PrimeSplitData make_prime_split(NFPtr F, int64_t p, int root_index = 0);

// Ring homomorphism for p-integral elements (denominators prime to p).
Fq reduce_mod_prime(const NFElement& x, const PrimeSplitData& s);

// All t in F_{p^2}^* with N(t) = t^(p+1) = c (c != 0 mod p); size p+1.
std::vector<Fq> norm_fiber(int64_t c, int64_t p);
std::vector<Fq> norm_fiber(int64_t c, int64_t p, int64_t a);  // explicit non-square

}  // namespace mck
