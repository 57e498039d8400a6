#include "mck/chars.hpp"

namespace mck {

namespace {

NFElement zeta_of_order(long m) {
  if (m == 1) return nf_one(NumberField::rational());
  if (m == 2) return nf(NumberField::rational(), -1);
  return nf_zeta(NumberField::cyclotomic(m), m);
}

long unit_group_generator(long pk, long p) {
  if (pk == 1 || pk == 2) return 1;
  if (pk == 4) return 3;
  require(p % 2 == 1, "characters: modulus 8 and higher 2-powers unsupported");
  long ord = pk / p * (p - 1);  // phi(p^k)
  for (long g = 2; g < pk; ++g) {
    if (igcd(g, pk) != 1) continue;
    bool gen = true;
    for (auto& [q, e] : factorize(ord))
      if (mod_pow(g, ord / q, pk) == 1) { gen = false; break; }
    if (gen) return g;
  }
  throw error("unit_group_generator: none found");
}

long dlog(long g, long x, long m, long gorder) {
  long cur = 1 % m;
  for (long k = 0; k < gorder; ++k) {
    if (cur == imod(x, m)) return k;
    cur = (__int128)cur * g % m;
  }
  throw error("dlog: not in cyclic subgroup");
}

}  // namespace

DirichletCharacter DirichletCharacter::trivial(long modulus) {
  DirichletCharacter chi;
  chi.modulus = modulus;
  chi.order = 1;
  for (auto& [p, e] : factorize(modulus)) {
    Local l;
    l.p = p;
    l.pk = ipow(p, e);
    l.gen = unit_group_generator(l.pk, p);
    l.gorder = euler_phi(l.pk);
    l.e = 0;
    chi.locals.push_back(l);
  }
  return chi;
}

DirichletCharacter DirichletCharacter::quadratic(long p) {
  require(is_prime(p) && p % 2 == 1, "quadratic: odd prime required");
  DirichletCharacter chi = trivial(p);
  chi.order = 2;
  chi.locals[0].e = 1;  // chi(gen) = zeta_2 = -1
  return chi;
}

DirichletCharacter DirichletCharacter::of_order(long p, long d, long k) {
  require(is_prime(p) && p % 2 == 1, "of_order: odd prime required");
  require((p - 1) % d == 0, "of_order: d must divide p-1");
  DirichletCharacter chi = trivial(p);
  long dd = d / igcd(d, k);
  chi.order = dd;
  // chi(gen) = zeta_d^k = zeta_dd^(k')
  chi.locals[0].e = imod(k / igcd(d, k), dd);
  return chi;
}

DirichletCharacter DirichletCharacter::from_value(long p, long n0, long d, long k) {
  // find character of order dividing d with chi(n0) = zeta_d^k
  require(is_prime(p) && p % 2 == 1, "from_value: odd prime required");
  DirichletCharacter chi = trivial(p);
  long g = chi.locals[0].gen;
  long logn = dlog(g, n0, p, p - 1);
  // chi(gen)^logn = zeta_d^k, chi(gen) = zeta_{p-1}^e: e*logn = k (p-1)/d mod p-1
  long target = imod(k * ((p - 1) / d), p - 1);
  for (long e = 0; e < p - 1; ++e) {
    if (imod(e * logn, p - 1) == target) {
      long o = (p - 1) / igcd(e, p - 1);
      // store with order = o
      chi.order = o;
      chi.locals[0].e = e / igcd(e, p - 1) * 1;
      // recompute exponent in terms of zeta_order: chi(gen) = zeta_{p-1}^e = zeta_o^(e*o/(p-1))
      chi.locals[0].e = imod(e * o / (p - 1), o);
      if (o == 1) chi.locals[0].e = 0;
      return chi;
    }
  }
  throw error("from_value: no such character");
}

bool DirichletCharacter::is_trivial() const {
  for (auto& l : locals)
    if (l.e != 0) return false;
  return true;
}

NFPtr DirichletCharacter::value_field() const {
  return order <= 2 ? NumberField::rational() : NumberField::cyclotomic(order);
}

long DirichletCharacter::evaluate_exponent(long n) const {
  long total = 0;
  for (auto& l : locals) {
    long nm = imod(n, l.pk);
    if (igcd(nm, l.pk) != 1) return -1;
    long lg = dlog(l.gen, nm, l.pk, l.gorder);
    // chi_l(gen) = zeta_order^(e); chi_l(n) = zeta_order^(e * lg)
    total = imod(total + l.e * lg, order);
  }
  return total;
}

NFElement DirichletCharacter::evaluate(long n) const {
  NFPtr F = value_field();
  long e = evaluate_exponent(n);
  if (e < 0) return nf_zero(F);
  if (order <= 2) return nf(F, e == 0 ? 1 : -1);
  return nf_pow(zeta_of_order(order), e);
}

DirichletCharacter DirichletCharacter::inverse() const {
  DirichletCharacter chi = *this;
  for (auto& l : chi.locals) l.e = imod(-l.e, order);
  return chi;
}

NFElement gauss_sum(const DirichletCharacter& chi, const AdditiveCharacter& psi) {
  require(chi.locals.size() == 1 && chi.locals[0].pk == chi.locals[0].p,
          "gauss_sum: modulus must be prime");
  long p = chi.modulus;
  require(psi.p == p, "gauss_sum: additive character modulus mismatch");
  NFPtr F = NumberField::cyclotomic(ilcm(chi.order <= 2 ? 1 : chi.order, p));
  if (F->kind != NumberField::Kind::Cyclotomic) F = NumberField::cyclotomic(p);
  NFElement acc = nf_zero(F);
  for (long x = 1; x < p; ++x) {
    NFElement cv = nf_embed(chi.evaluate(x), F);
    if (cv.is_zero()) continue;
    acc = acc + cv * nf_embed(psi.evaluate(x), F);
  }
  return acc;
}

std::map<long, DirichletCharacter> decompose(const DirichletCharacter& chi) {
  for (auto& l : chi.locals)
    require(l.pk == l.p, "decompose: modulus must be squarefree");
  std::map<long, DirichletCharacter> parts;
  for (auto& l : chi.locals) {
    DirichletCharacter part;
    part.modulus = l.p;
    DirichletCharacter::Local copy = l;
    // set order = order of this local component
    long o = chi.order / igcd(chi.order, 1);
    // local order: order of zeta_order^e
    long lo = l.e == 0 ? 1 : chi.order / igcd(chi.order, l.e);
    part.order = lo;
    copy.e = l.e == 0 ? 0 : imod(l.e * lo / chi.order, lo);
    (void)o;
    part.locals.push_back(copy);
    parts.emplace(l.p, part);
  }
  return parts;
}

NFElement Adelization::at_uniformizer(long p) const {
  require(igcd(p, chi.modulus) == 1,
          "adelization: uniformizer value undefined at ramified prime");
  return chi.evaluate(p);
}

NFElement Adelization::at_unit(long p, long u) const {
  auto parts = decompose(chi);
  auto it = parts.find(p);
  if (it == parts.end()) return nf_one(chi.value_field());
  return it->second.inverse().evaluate(u);
}

Adelization adelize(const DirichletCharacter& chi) { return Adelization{chi}; }

}  // namespace mck
