#pragma once
// Dirichlet characters with exact cyclotomic values, Gauss sums, prime-part
// decomposition and the adelization convention used by the assembly pipeline.

#include "mck/numfield.hpp"

namespace mck {

// chi(x) = zeta_order^(sum_i e_i log_{g_i}(x mod p_i^(k_i))) via CRT over the
// factorization of the modulus. Moduli supported: odd prime powers and 2, 4.
struct DirichletCharacter {
  long modulus = 1;
  long order = 1;
  struct Local {
    long pk = 1;      // prime power
    long p = 1;
    long gen = 1;     // generator of (Z/pk)^x
    long gorder = 1;  // its order
    long e = 0;       // chi(gen) = zeta_order^e
  };
  std::vector<Local> locals;

  static DirichletCharacter trivial(long modulus);
  // quadratic character mod an odd prime (Legendre symbol)
  static DirichletCharacter quadratic(long p);
  // character mod an odd prime of given order d | p-1 with chi(gen) = zeta_d^k
  static DirichletCharacter of_order(long p, long d, long k = 1);
  // character mod an odd prime determined by chi(n0) = zeta_d^k (n0 a unit
  // whose class generates enough of the group; errors if inconsistent)
  static DirichletCharacter from_value(long p, long n0, long d, long k);

  bool is_trivial() const;
  NFPtr value_field() const;  // Q(zeta_order)
  NFElement evaluate(long n) const;
  // chi(n) as exponent of zeta_order, or -1 when gcd(n, modulus) > 1
  long evaluate_exponent(long n) const;
  DirichletCharacter inverse() const;
  NFElement chi_minus_one() const { return evaluate(-1); }
};

struct AdditiveCharacter {
  long p = 0;
  long k = 1;  // psi(x) = zeta_p^(k x)
  AdditiveCharacter() = default;
  AdditiveCharacter(long p_, long k_) : p(p_), k(imod(k_, p_)) {}
  NFPtr value_field() const { return NumberField::cyclotomic(p); }
  NFElement evaluate(long x) const {
    return nf_pow(nf_zeta(value_field(), p), imod(k * x, p));
  }
  AdditiveCharacter conj() const { return AdditiveCharacter(p, -k); }
};

// g(chi) = sum_{x mod p} chi(x) psi(x), exact in Q(zeta_{lcm(order, p)}).
NFElement gauss_sum(const DirichletCharacter& chi_p, const AdditiveCharacter& psi);
inline NFElement gauss_sum(const DirichletCharacter& chi_p) {
  require(chi_p.locals.size() == 1 && chi_p.locals[0].pk == chi_p.locals[0].p,
          "gauss_sum: prime modulus required");
  return gauss_sum(chi_p, AdditiveCharacter(chi_p.modulus, 1));
}

// chi = prod chi_q over primes q | M (M squarefree).
std::map<long, DirichletCharacter> decompose(const DirichletCharacter& chi);

// Adelization omega_chi: omega_p(uniformizer) = chi(p) for p coprime to the
// modulus; the unit restriction factors through chi^{-1}.
struct Adelization {
  DirichletCharacter chi;
  // omega_p(p) for p not dividing the modulus
  NFElement at_uniformizer(long p) const;
  // omega_p(u) for a unit u; equals chi_p^{-1}(u) at ramified p, 1 elsewhere
  NFElement at_unit(long p, long u) const;
};
Adelization adelize(const DirichletCharacter& chi);

}  // namespace mck
