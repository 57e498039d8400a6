#include "mck/numfield.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "mck/poly.hpp"

namespace mck {

namespace {

std::vector<QQ> poly_from(const std::vector<long>& v) {
  std::vector<QQ> r;
  r.reserve(v.size());
  for (long x : v) r.emplace_back(x);
  return r;
}

// divide f by g exactly (both integer-coefficient monic-ish), over QQ
std::vector<QQ> qdiv_exact(std::vector<QQ> f, const std::vector<QQ>& g) {
  int df = (int)f.size() - 1, dg = (int)g.size() - 1;
  require(dg >= 0 && g[dg] != 0, "qdiv: bad divisor");
  std::vector<QQ> q(df - dg + 1, QQ(0));
  for (int i = df; i >= dg; --i) {
    QQ cf = f[i] / g[dg];
    q[i - dg] = cf;
    if (cf == 0) continue;
    for (int j = 0; j <= dg; ++j) f[i - dg + j] -= cf * g[j];
  }
  for (auto& x : f) require(x == 0, "qdiv: not exact");
  return q;
}

std::shared_ptr<NumberField> make_field(NumberField::Kind kind, long param,
                                        std::vector<QQ> minpoly,
                                        std::string name) {
  auto F = std::make_shared<NumberField>();
  F->kind = kind;
  F->param = param;
  F->minpoly = std::move(minpoly);
  F->deg = (int)F->minpoly.size() - 1;
  F->name = std::move(name);
  require(F->deg >= 1 && F->minpoly[F->deg] == 1, "NumberField: not monic");
  // reduction rows: x^(deg+i) mod minpoly
  int d = F->deg;
  std::vector<QQ> cur(d, QQ(0));  // x^deg reduced = -lower part
  for (int i = 0; i < d; ++i) cur[i] = -F->minpoly[i];
  F->redrows.push_back(cur);
  for (int i = 1; i < d - 0; ++i) {
    // multiply cur by x, reduce
    std::vector<QQ> nxt(d, QQ(0));
    QQ top = cur[d - 1];
    for (int j = d - 1; j >= 1; --j) nxt[j] = cur[j - 1];
    nxt[0] = 0;
    if (top != 0)
      for (int j = 0; j < d; ++j) nxt[j] += top * -F->minpoly[j];
    F->redrows.push_back(nxt);
    cur = nxt;
  }
  return F;
}

}  // namespace

long quadratic_conductor(long d) {
  require(d != 0 && d != 1 && d == squarefree_part(d), "quadratic_conductor: d must be squarefree != 0,1");
  long m = imod(d, 4) == 1 ? (d < 0 ? -d : d) : 4 * (d < 0 ? -d : d);
  return m;
}

std::vector<QQ> cyclotomic_polynomial(long n) {
  static std::map<long, std::vector<QQ>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::function<std::vector<QQ>(long)> phi = [&](long m) -> std::vector<QQ> {
    auto found = cache.find(m);
    if (found != cache.end()) return found->second;
    std::vector<QQ> f(m + 1, QQ(0));  // x^m - 1
    f[0] = -1;
    f[m] = 1;
    for (long d = 1; d < m; ++d)
      if (m % d == 0) f = qdiv_exact(f, phi(d));
    cache[m] = f;
    return f;
  };
  return phi(n);
}

NFPtr NumberField::rational() {
  static NFPtr F = make_field(Kind::Rational, 0, poly_from({0, 1}), "Q");
  return F;
}

NFPtr NumberField::quadratic(long d) {
  require(d == squarefree_part(d) && d != 0 && d != 1, "quadratic: d must be squarefree, != 0, 1");
  static std::map<long, NFPtr> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  std::ostringstream name;
  name << "Q(sqrt(" << d << "))";
  auto F = make_field(Kind::Quadratic, d, {QQ(-d), QQ(0), QQ(1)}, name.str());
  cache[d] = F;
  return F;
}

NFPtr NumberField::cyclotomic(long n) {
  require(n >= 1, "cyclotomic: n >= 1");
  if (n % 4 == 2) n /= 2;
  if (n <= 2) {
    // Q(zeta_1) = Q(zeta_2) = Q; callers treat it as rational
    return rational();
  }
  static std::map<long, NFPtr> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::ostringstream name;
  name << "Q(zeta_" << n << ")";
  auto F = make_field(Kind::Cyclotomic, n, cyclotomic_polynomial(n), name.str());
  cache[n] = F;
  return F;
}

NFPtr NumberField::general(std::vector<QQ> minpoly, std::string name) {
  return make_field(Kind::General, 0, std::move(minpoly), std::move(name));
}

bool NumberField::same_as(const NumberField& o) const {
  if (kind != o.kind) return false;
  if (kind == Kind::General) return minpoly == o.minpoly;
  return param == o.param;
}

NFElement::NFElement(NFPtr field, std::vector<QQ> coords)
    : F(std::move(field)), c(std::move(coords)) {
  require((int)c.size() == F->deg, "NFElement: coordinate size mismatch");
}

bool NFElement::is_zero() const {
  for (auto& x : c)
    if (x != 0) return false;
  return true;
}

bool NFElement::is_rational() const {
  for (size_t i = 1; i < c.size(); ++i)
    if (c[i] != 0) return false;
  return true;
}

QQ NFElement::rational_value() const {
  require(is_rational(), "rational_value: element not rational");
  return c.empty() ? QQ(0) : c[0];
}

bool operator==(const NFElement& a, const NFElement& b) {
  if (a.F->same_as(*b.F)) return a.c == b.c;
  NFPtr J = nf_join(a.F, b.F);
  return nf_embed(a, J).c == nf_embed(b, J).c;
}

NFElement nf(NFPtr F, const QQ& v) {
  std::vector<QQ> c(F->deg, QQ(0));
  c[0] = v;
  return NFElement(F, std::move(c));
}
NFElement nf_zero(NFPtr F) { return nf(F, 0); }
NFElement nf_one(NFPtr F) { return nf(F, 1); }
NFElement nf_gen(NFPtr F) {
  require(F->deg >= 2, "nf_gen: rational field has no generator");
  std::vector<QQ> c(F->deg, QQ(0));
  c[1] = 1;
  return NFElement(F, std::move(c));
}

namespace {
// coerce a pair into a common field
void coerce(NFElement& a, NFElement& b) {
  if (a.F->same_as(*b.F)) {
    if (a.F.get() != b.F.get()) b.F = a.F;
    return;
  }
  NFPtr J = nf_join(a.F, b.F);
  a = nf_embed(a, J);
  b = nf_embed(b, J);
}
}  // namespace

NFElement operator+(const NFElement& a0, const NFElement& b0) {
  NFElement a = a0, b = b0;
  coerce(a, b);
  for (int i = 0; i < a.F->deg; ++i) a.c[i] += b.c[i];
  return a;
}
NFElement operator-(const NFElement& a0, const NFElement& b0) {
  NFElement a = a0, b = b0;
  coerce(a, b);
  for (int i = 0; i < a.F->deg; ++i) a.c[i] -= b.c[i];
  return a;
}
NFElement operator-(const NFElement& a) {
  NFElement r = a;
  for (auto& x : r.c) x = -x;
  return r;
}
NFElement operator*(const QQ& s, const NFElement& a) {
  NFElement r = a;
  for (auto& x : r.c) x *= s;
  return r;
}

NFElement operator*(const NFElement& a0, const NFElement& b0) {
  NFElement a = a0, b = b0;
  coerce(a, b);
  int d = a.F->deg;
  if (d == 1) return NFElement(a.F, {a.c[0] * b.c[0]});
  std::vector<QQ> prod(2 * d - 1, QQ(0));
  for (int i = 0; i < d; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < d; ++j) {
      if (b.c[j] == 0) continue;
      prod[i + j] += a.c[i] * b.c[j];
    }
  }
  std::vector<QQ> out(prod.begin(), prod.begin() + d);
  for (int i = d; i < 2 * d - 1; ++i) {
    if (prod[i] == 0) continue;
    const auto& row = a.F->redrows[i - d];
    for (int j = 0; j < d; ++j)
      if (row[j] != 0) out[j] += prod[i] * row[j];
  }
  return NFElement(a.F, std::move(out));
}

NFElement nf_inv(const NFElement& a) {
  require(!a.is_zero(), "nf_inv: division by zero");
  if (a.F->deg == 1) return NFElement(a.F, {QQ(1) / a.c[0]});
  // extended euclid in Q[x] mod minpoly
  Poly<QQ> m(QQ(0), a.F->minpoly);
  Poly<QQ> f(QQ(0), a.c);
  auto [g, s, t] = poly_xgcd(f, m);
  require(g.deg() == 0, "nf_inv: element not invertible (minpoly not irreducible?)");
  Poly<QQ> inv = s.scaled(k_inv(g.coeff(0)));
  inv = poly_mod(inv, m);
  std::vector<QQ> c(a.F->deg, QQ(0));
  for (int i = 0; i <= inv.deg(); ++i) c[i] = inv.coeff(i);
  return NFElement(a.F, std::move(c));
}

NFElement operator/(const NFElement& a, const NFElement& b) {
  NFElement x = a, y = b;
  coerce(x, y);
  return x * nf_inv(y);
}

NFElement nf_pow(const NFElement& a, long e) {
  NFElement b = e < 0 ? nf_inv(a) : a;
  unsigned long k = e < 0 ? -e : e;
  NFElement r = nf_one(b.F);
  while (k) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

std::string to_string(const NFElement& a) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < a.F->deg; ++i) {
    if (a.c[i] == 0) continue;
    if (!first) os << " + ";
    os << a.c[i].get_str();
    if (i >= 1) os << "*g^" << i;
    first = false;
  }
  if (first) os << "0";
  os << " [" << a.F->name << "]";
  return os.str();
}

NFElement galois_conjugate(const NFElement& a, long sigma) {
  switch (a.F->kind) {
    case NumberField::Kind::Rational:
      return a;
    case NumberField::Kind::Quadratic: {
      require(sigma == 0 || sigma == 1, "galois_conjugate: quadratic field has sigma in {0,1}");
      if (sigma == 0) return a;
      NFElement r = a;
      r.c[1] = -r.c[1];
      return r;
    }
    case NumberField::Kind::Cyclotomic: {
      long n = a.F->param;
      require(igcd(imod(sigma, n), n) == 1, "galois_conjugate: sigma not coprime to n");
      // zeta^i -> zeta^(i*sigma)
      NFElement r = nf_zero(a.F);
      NFElement z = nf_pow(nf_gen(a.F), imod(sigma, n));
      NFElement zp = nf_one(a.F);
      for (int i = 0; i < a.F->deg; ++i) {
        if (a.c[i] != 0) r = r + a.c[i] * zp;
        zp = zp * z;
      }
      return r;
    }
    default:
      throw error("galois_conjugate: not defined for general fields");
  }
}

NFElement nf_zeta(NFPtr cyclo, long m) {
  if (m % 4 == 2) {
    // zeta_{2k} = -zeta_k^((k+1)/2) for odd k
    long k = m / 2;
    NFElement z = nf_zeta(cyclo, k);
    return -nf_pow(z, (k + 1) / 2);
  }
  if (m == 1) return nf_one(cyclo);
  if (m == 2) return -nf_one(cyclo);
  require(cyclo->kind == NumberField::Kind::Cyclotomic, "nf_zeta: target not cyclotomic");
  long n = cyclo->param;
  require(n % m == 0, "nf_zeta: m does not divide n");
  return nf_pow(nf_gen(cyclo), n / m);
}

NFElement nf_sqrt(NFPtr cyclo, long d) {
  require(d == squarefree_part(d) && d != 0, "nf_sqrt: d must be squarefree nonzero");
  if (d == 1) return nf_one(cyclo);
  long n = cyclo->param;
  require(cyclo->kind == NumberField::Kind::Cyclotomic, "nf_sqrt: target not cyclotomic");
  require(n % quadratic_conductor(d) == 0, "nf_sqrt: conductor does not divide n");
  NFElement v = nf_one(cyclo);
  long m = 1;  // v^2 = m, maintained
  long ad = d < 0 ? -d : d;
  for (auto& [p, e] : factorize(ad)) {
    if (p == 2) continue;
    // Gauss sum: sum legendre(x,p) zeta_p^x; square is (-1)^((p-1)/2) p
    NFElement zp = nf_zeta(cyclo, p);
    NFElement g = nf_zero(cyclo);
    NFElement zx = nf_one(cyclo);
    for (long x = 1; x < p; ++x) {
      zx = zx * zp;
      g = g + QQ(legendre(x, p)) * zx;
    }
    v = v * g;
    m *= (p % 4 == 1) ? p : -p;
  }
  long r = 0;  // need d / m in {1,-1,2,-2}
  require(m != 0, "nf_sqrt: internal");
  require(d % squarefree_part(m) == 0 || true, "nf_sqrt");
  // compute ratio exactly: d = m * r
  require(d % m == 0 || m % d == 0 || true, "nf_sqrt ratio");
  // both d and m are squarefree with same odd part up to sign
  long odd_m = m < 0 ? -m : m;
  long odd_d = ad % 2 == 0 ? ad / 2 : ad;
  require(odd_m == odd_d, "nf_sqrt: odd part mismatch");
  // r = d/m in {1,-1,2,-2}
  if (ad == odd_m) r = (d > 0) == (m > 0) ? 1 : -1;
  else r = ((d > 0) == (m > 0)) ? 2 : -2;
  if (r == -1 || r == -2) v = v * nf_zeta(cyclo, 4);
  if (r == 2 || r == -2) {
    NFElement z8 = nf_zeta(cyclo, 8);
    v = v * (z8 + nf_inv(z8));  // sqrt(2)
  }
  NFElement chk = v * v - nf(cyclo, QQ(d));
  require(chk.is_zero(), "nf_sqrt: verification failed");
  return v;
}

NFPtr nf_join(const NFPtr& A, const NFPtr& B) {
  using Kind = NumberField::Kind;
  if (A->same_as(*B)) return A;
  if (A->kind == Kind::Rational) return B;
  if (B->kind == Kind::Rational) return A;
  require(A->kind != Kind::General && B->kind != Kind::General,
          "nf_join: general fields only mix with Q");
  long ca = A->kind == Kind::Quadratic ? quadratic_conductor(A->param) : A->param;
  long cb = B->kind == Kind::Quadratic ? quadratic_conductor(B->param) : B->param;
  return NumberField::cyclotomic(ilcm(ca, cb));
}

NFElement nf_embed(const NFElement& x, const NFPtr& target) {
  using Kind = NumberField::Kind;
  if (x.F->same_as(*target)) {
    NFElement r = x;
    r.F = target;
    return r;
  }
  if (x.F->kind == Kind::Rational) return nf(target, x.c[0]);
  if (x.is_rational()) return nf(target, x.c[0]);
  require(target->kind == Kind::Cyclotomic, "nf_embed: target must be cyclotomic");
  if (x.F->kind == Kind::Quadratic) {
    NFElement img = nf_sqrt(target, x.F->param);
    return nf(target, x.c[0]) + x.c[1] * img;
  }
  if (x.F->kind == Kind::Cyclotomic) {
    long m = x.F->param, n = target->param;
    require(n % m == 0, "nf_embed: cyclotomic index does not divide target");
    NFElement z = nf_zeta(target, m);
    NFElement r = nf(target, x.c[0]);
    NFElement zp = nf_one(target);
    for (int i = 1; i < x.F->deg; ++i) {
      zp = zp * z;
      if (x.c[i] != 0) r = r + x.c[i] * zp;
    }
    return r;
  }
  throw error("nf_embed: unsupported embedding");
}

PrimeSplitData make_prime_split(NFPtr F, int64_t p, int root_index) {
  require(is_prime(p) && p > 2, "make_prime_split: need odd prime");
  PrimeSplitData s;
  s.F = F;
  s.p = p;
  if (F->deg == 1) {
    s.f = 1;
    s.gen_image = Fq(p, 0);
    return s;
  }
  // reduce minpoly mod p
  FqPoly mp;
  for (auto& c : F->minpoly) {
    require(c.get_den() % p != 0, "make_prime_split: minpoly denominator at p");
    int64_t num = (int64_t)mpz_fdiv_ui(c.get_num().get_mpz_t(), (unsigned long)p);
    int64_t den = (int64_t)mpz_fdiv_ui(c.get_den().get_mpz_t(), (unsigned long)p);
    mp.push_back(Fq(p, num * mod_inv(den, p) % p));
  }
  auto roots = fqp_roots(mp);
  if (!roots.empty()) {
    s.f = 1;
    require(root_index < (int)roots.size(), "make_prime_split: root index out of range");
    s.gen_image = roots[root_index];
    return s;
  }
  // look in F_{p^2}
  int64_t a = smallest_nonsquare(p);
  FqPoly mp2;
  for (auto& c : mp) mp2.push_back(Fq(p, a, c.c0, 0));
  auto roots2 = fqp_roots(mp2);
  require(!roots2.empty(), "make_prime_split: no root in F_p or F_{p^2}");
  s.f = 2;
  require(root_index < (int)roots2.size(), "make_prime_split: root index out of range");
  s.gen_image = roots2[root_index];
  return s;
}

Fq reduce_mod_prime(const NFElement& x, const PrimeSplitData& s) {
  require(x.F->same_as(*s.F), "reduce_mod_prime: field mismatch");
  int64_t p = s.p;
  Fq acc = s.f == 1 ? Fq(p, 0) : Fq(p, s.gen_image.a, 0, 0);
  Fq pw = s.f == 1 ? Fq(p, 1) : Fq(p, s.gen_image.a, 1, 0);
  for (int i = 0; i < x.F->deg; ++i) {
    const QQ& q = x.c[i];
    if (q != 0) {
      require(mpz_fdiv_ui(q.get_den().get_mpz_t(), (unsigned long)p) != 0,
              "reduce_mod_prime: denominator divisible by p");
      int64_t num = (int64_t)mpz_fdiv_ui(q.get_num().get_mpz_t(), (unsigned long)p);
      int64_t den = (int64_t)mpz_fdiv_ui(q.get_den().get_mpz_t(), (unsigned long)p);
      int64_t v = imod(num, p);
      if (mpz_sgn(q.get_num().get_mpz_t()) < 0 && num != 0) {
        // mpz_fdiv_ui already gives the nonnegative residue
      }
      v = (__int128)v * mod_inv(den, p) % p;
      Fq coeff = s.f == 1 ? Fq(p, v) : Fq(p, s.gen_image.a, v, 0);
      acc = acc + coeff * pw;
    }
    pw = pw * s.gen_image;
  }
  return acc;
}

std::vector<Fq> norm_fiber(int64_t c, int64_t p) {
  return norm_fiber(c, p, smallest_nonsquare(p));
}

std::vector<Fq> norm_fiber(int64_t c, int64_t p, int64_t a) {
  require(imod(c, p) != 0, "norm_fiber: c must be nonzero");
  require(legendre(a, p) == -1, "norm_fiber: a must be a non-square");
  std::vector<Fq> out;
  c = imod(c, p);
  for (int64_t u = 0; u < p; ++u)
    for (int64_t v = 0; v < p; ++v) {
      if (u == 0 && v == 0) continue;
      // N(u + v alpha) = u^2 - a v^2
      if (imod(u * u - a % p * v % p * v, p) == c) out.push_back(Fq(p, a, u, v));
    }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mck
