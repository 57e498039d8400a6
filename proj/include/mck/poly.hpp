#pragma once
// Dense univariate polynomials over an exact field K.
//
// K must provide the free functions k_zero(like), k_one(like), k_is_zero(x),
// k_inv(x) together with +, -, *. Polynomials carry an exemplar element so
// fields with runtime parameters (number fields, F_q) work uniformly.

#include <vector>

#include "mck/util.hpp"

namespace mck {

inline QQ k_zero(const QQ&) { return QQ(0); }
inline QQ k_one(const QQ&) { return QQ(1); }
inline bool k_is_zero(const QQ& x) { return x == 0; }
inline QQ k_inv(const QQ& x) {
  require(x != 0, "k_inv: division by zero");
  return QQ(1) / x;
}

template <class K>
struct Poly {
  K ex{};              // exemplar zero of K
  std::vector<K> c;    // c[i] is the coefficient of x^i

  Poly() = default;  // must be assigned before use for exemplar-carrying K
  explicit Poly(const K& exemplar) : ex(k_zero(exemplar)) {}
  Poly(const K& exemplar, std::vector<K> coeffs)
      : ex(k_zero(exemplar)), c(std::move(coeffs)) {
    trim();
  }

  static Poly x(const K& exemplar) {
    return Poly(exemplar, {k_zero(exemplar), k_one(exemplar)});
  }
  static Poly constant(const K& v) { return Poly(v, {v}); }

  int deg() const {
    for (int i = (int)c.size() - 1; i >= 0; --i)
      if (!k_is_zero(c[i])) return i;
    return -1;
  }
  bool is_zero() const { return deg() < 0; }
  void trim() {
    while (!c.empty() && k_is_zero(c.back())) c.pop_back();
  }
  K coeff(int i) const { return i >= 0 && i < (int)c.size() ? c[i] : ex; }
  K lead() const {
    require(!is_zero(), "lead of zero polynomial");
    return c[deg()];
  }

  friend Poly operator+(const Poly& f, const Poly& g) {
    Poly r = f.c.size() >= g.c.size() ? f : g;
    const Poly& s = f.c.size() >= g.c.size() ? g : f;
    for (size_t i = 0; i < s.c.size(); ++i) r.c[i] = r.c[i] + s.c[i];
    r.trim();
    return r;
  }
  friend Poly operator-(const Poly& f) {
    Poly r = f;
    for (auto& v : r.c) v = k_zero(r.ex) - v;
    return r;
  }
  friend Poly operator-(const Poly& f, const Poly& g) { return f + (-g); }
  friend Poly operator*(const Poly& f, const Poly& g) {
    if (f.is_zero() || g.is_zero()) return Poly(f.ex);
    Poly r(f.ex);
    r.c.assign(f.c.size() + g.c.size() - 1, f.ex);
    for (size_t i = 0; i < f.c.size(); ++i) {
      if (k_is_zero(f.c[i])) continue;
      for (size_t j = 0; j < g.c.size(); ++j) {
        if (k_is_zero(g.c[j])) continue;
        r.c[i + j] = r.c[i + j] + f.c[i] * g.c[j];
      }
    }
    r.trim();
    return r;
  }
  Poly scaled(const K& s) const {
    Poly r = *this;
    for (auto& v : r.c) v = v * s;
    r.trim();
    return r;
  }
  Poly shifted(int k) const {  // multiply by x^k
    require(k >= 0, "shifted: negative");
    Poly r(ex);
    r.c.assign(c.size() + k, ex);
    for (size_t i = 0; i < c.size(); ++i) r.c[i + k] = c[i];
    r.trim();
    return r;
  }

  K eval(const K& v) const {
    K r = ex;
    for (int i = (int)c.size() - 1; i >= 0; --i) r = r * v + c[i];
    return r;
  }

  Poly derivative() const {
    Poly r(ex);
    for (size_t i = 1; i < c.size(); ++i) {
      K k = k_one(ex);
      K acc = ex;
      for (size_t j = 0; j < i; ++j) acc = acc + k;  // i as element of K
      r.c.push_back(c[i] * acc);
    }
    r.trim();
    return r;
  }

  Poly monic() const {
    require(!is_zero(), "monic of zero");
    return scaled(k_inv(lead()));
  }
};

template <class K>
std::pair<Poly<K>, Poly<K>> poly_divmod(const Poly<K>& f, const Poly<K>& g) {
  require(!g.is_zero(), "poly_divmod: division by zero");
  Poly<K> q(f.ex), r = f;
  q.c.assign(std::max(0, f.deg() - g.deg() + 1), f.ex);
  K il = k_inv(g.lead());
  int dg = g.deg();
  while (r.deg() >= dg) {
    int sh = r.deg() - dg;
    K cf = r.lead() * il;
    q.c[sh] = q.c[sh] + cf;
    for (int i = 0; i <= dg; ++i)
      r.c[i + sh] = r.c[i + sh] - cf * g.coeff(i);
    r.trim();
  }
  q.trim();
  return {q, r};
}

template <class K>
Poly<K> poly_mod(const Poly<K>& f, const Poly<K>& g) {
  return poly_divmod(f, g).second;
}

template <class K>
Poly<K> poly_div_exact(const Poly<K>& f, const Poly<K>& g) {
  auto [q, r] = poly_divmod(f, g);
  require(r.is_zero(), "poly_div_exact: not divisible");
  return q;
}

template <class K>
Poly<K> poly_gcd(Poly<K> f, Poly<K> g) {
  while (!g.is_zero()) {
    Poly<K> r = poly_mod(f, g);
    f = g;
    g = r;
  }
  if (f.is_zero()) return f;
  return f.monic();
}

// Extended gcd: returns (g, s, t) with s f + t g0 = g.
template <class K>
std::tuple<Poly<K>, Poly<K>, Poly<K>> poly_xgcd(Poly<K> f, Poly<K> g) {
  Poly<K> s0 = Poly<K>::constant(k_one(f.ex)), s1(f.ex);
  Poly<K> t0(f.ex), t1 = Poly<K>::constant(k_one(f.ex));
  while (!g.is_zero()) {
    auto [q, r] = poly_divmod(f, g);
    f = g; g = r;
    Poly<K> s2 = s0 - q * s1; s0 = s1; s1 = s2;
    Poly<K> t2 = t0 - q * t1; t0 = t1; t1 = t2;
  }
  return {f, s0, t0};
}

template <class K>
Poly<K> poly_pow(Poly<K> b, long e) {
  require(e >= 0, "poly_pow: negative exponent");
  Poly<K> r = Poly<K>::constant(k_one(b.ex));
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

// Resultant by the Euclidean PRS; fine over finite fields / number fields.
template <class K>
K poly_resultant(Poly<K> f, Poly<K> g) {
  K one = k_one(f.ex);
  if (f.is_zero() || g.is_zero()) return f.ex;
  K res = one;
  bool neg = false;
  while (g.deg() > 0) {
    Poly<K> r = poly_mod(f, g);
    if ((f.deg() * g.deg()) % 2 == 1) neg = !neg;
    int drop = f.deg() - (r.is_zero() ? 0 : r.deg());
    K lg = g.lead();
    K p = one;
    for (int i = 0; i < f.deg() - std::max(0, r.deg()); ++i) p = p * lg;
    res = res * p;
    f = g;
    g = r;
    if (g.is_zero()) return f.ex;  // common factor: resultant 0
  }
  // g is a nonzero constant
  K gl = g.coeff(0);
  K p = one;
  for (int i = 0; i < f.deg(); ++i) p = p * gl;
  res = res * p;
  if (neg) res = f.ex - res;
  return res;
}

// Exact square root of a polynomial if it is a perfect square.
template <class K>
bool poly_sqrt(const Poly<K>& f, Poly<K>& out) {
  if (f.is_zero()) { out = f; return true; }
  if (f.deg() % 2 != 0) return false;
  // Work with monic part; require lead a square via k-specific caller checks.
  Poly<K> g(f.ex);
  int n = f.deg() / 2;
  g.c.assign(n + 1, f.ex);
  // assume lead of f is square of something the caller can check; try k_inv tricks
  // Solve coefficients top-down: g = sum g_i x^i, g_n^2 = f_{2n}.
  // Here we require g_n to exist in K; we attempt g_n = provided by caller? Use
  // simple approach: g_n unknown; try both signs of a square root is not generic.
  // Practical use: f monic (lead 1). Then g_n = 1.
  if (!k_is_zero(f.lead() - k_one(f.ex))) return false;
  g.c[n] = k_one(f.ex);
  for (int i = n - 1; i >= 0; --i) {
    // coefficient of x^{n+i} in g^2: 2 g_n g_i + sum_{j=i+1}^{n-1} g_j g_{n+i-j}
    K acc = f.coeff(n + i);
    for (int j = i + 1; j <= n - 1; ++j) {
      int k2 = n + i - j;
      if (k2 > n || k2 < 0) continue;
      if (k2 <= n && k2 >= i + 1 && j <= n)
        acc = acc - g.c[j] * g.c[k2];
    }
    K two = k_one(f.ex) + k_one(f.ex);
    g.c[i] = acc * k_inv(two);  // g_n = 1
  }
  out = g;
  Poly<K> chk = g * g - f;
  return chk.is_zero();
}

}  // namespace mck
