#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "fbc/error.hpp"
#include "fbc/matrix.hpp"
#include "fbc/rational.hpp"

namespace fbc {

/// Prime field F_P with P < 2^31.
template <unsigned P>
struct GF {
  static_assert(P >= 2 && P < (1u << 31));
  std::uint32_t v = 0;

  GF() = default;
  GF(long long x) : v(static_cast<std::uint32_t>(((x % static_cast<long long>(P)) + P) % P)) {}

  friend GF operator+(GF a, GF b) { return GF(static_cast<long long>(a.v) + b.v); }
  friend GF operator-(GF a, GF b) { return GF(static_cast<long long>(a.v) - b.v); }
  friend GF operator*(GF a, GF b) {
    GF r;
    r.v = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.v) * b.v % P);
    return r;
  }
  GF operator-() const { return GF(-static_cast<long long>(v)); }
  GF inverse() const {
    expect(v != 0, "inverse of zero in GF(p)");
    std::uint64_t base = v, e = P - 2, acc = 1;
    while (e) {
      if (e & 1) acc = acc * base % P;
      base = base * base % P;
      e >>= 1;
    }
    GF r;
    r.v = static_cast<std::uint32_t>(acc);
    return r;
  }
  friend GF operator/(GF a, GF b) { return a * b.inverse(); }
  GF& operator+=(GF b) { return *this = *this + b; }
  GF& operator-=(GF b) { return *this = *this - b; }
  GF& operator*=(GF b) { return *this = *this * b; }
  GF& operator/=(GF b) { return *this = *this / b; }
  friend bool operator==(GF a, GF b) { return a.v == b.v; }
  friend bool operator!=(GF a, GF b) { return a.v != b.v; }
};

inline bool is_zero_elem(const Rational& x) { return sgn(x) == 0; }
template <unsigned P>
bool is_zero_elem(const GF<P>& x) { return x.v == 0; }

inline std::string elem_to_string(const Rational& x) { return x.get_str(); }
template <unsigned P>
std::string elem_to_string(const GF<P>& x) { return std::to_string(x.v); }

/// Exact Laurent polynomial over a field K.
template <class K>
class Laurent {
public:
  using Map = std::map<long, K>;

  Laurent() = default;
  Laurent(const K& c) { if (!is_zero_elem(c)) c_[0] = c; }  // NOLINT: implicit scalar embedding
  Laurent(long c) : Laurent(K(c)) {}

  static Laurent monomial(const K& c, long e) {
    Laurent p;
    if (!is_zero_elem(c)) p.c_[e] = c;
    return p;
  }
  static Laurent t() { return monomial(K(1), 1); }
  /// Coefficients listed from exponent `lo` upward.
  static Laurent from_coeffs(const std::vector<K>& v, long lo = 0) {
    Laurent p;
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!is_zero_elem(v[i])) p.c_[lo + static_cast<long>(i)] = v[i];
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  long lo() const { expect(!is_zero(), "lo() of zero polynomial"); return c_.begin()->first; }
  long hi() const { expect(!is_zero(), "hi() of zero polynomial"); return c_.rbegin()->first; }
  /// Width hi - lo; the Euclidean size in K[t^{+-1}].
  long span() const { return is_zero() ? -1 : hi() - lo(); }
  const K& lead() const { return c_.rbegin()->second; }
  const K& trail() const { return c_.begin()->second; }
  K coeff(long e) const {
    auto it = c_.find(e);
    return it == c_.end() ? K(0) : it->second;
  }
  const Map& terms() const { return c_; }
  std::size_t size() const { return c_.size(); }

  void add_term(long e, const K& c) {
    if (is_zero_elem(c)) return;
    auto [it, fresh] = c_.emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (is_zero_elem(it->second)) c_.erase(it);
    }
  }

  Laurent shifted(long k) const {
    Laurent r;
    for (const auto& [e, c] : c_) r.c_.emplace_hint(r.c_.end(), e + k, c);
    return r;
  }
  /// t -> t^{-1}
  Laurent reflected() const {
    Laurent r;
    for (const auto& [e, c] : c_) r.c_[-e] = c;
    return r;
  }
  Laurent scaled(const K& s) const {
    if (is_zero_elem(s)) return {};
    Laurent r;
    for (const auto& [e, c] : c_) r.c_.emplace_hint(r.c_.end(), e, K(c * s));
    return r;
  }

  K eval(const K& x) const {
    expect(is_zero() || lo() >= 0 || !is_zero_elem(x), "evaluation of negative power at zero");
    K acc(0);
    for (const auto& [e, c] : c_) {
      K pw(1);
      K b = e >= 0 ? x : K(K(1) / x);
      for (long i = 0; i < (e >= 0 ? e : -e); ++i) pw = K(pw * b);
      acc = K(acc + c * pw);
    }
    return acc;
  }

  Laurent operator-() const { return scaled(K(-1)); }
  Laurent& operator+=(const Laurent& o) {
    for (const auto& [e, c] : o.c_) add_term(e, c);
    return *this;
  }
  Laurent& operator-=(const Laurent& o) {
    for (const auto& [e, c] : o.c_) add_term(e, K(-c));
    return *this;
  }
  Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b) {
    Laurent r;
    for (const auto& [ea, ca] : a.c_)
      for (const auto& [eb, cb] : b.c_) r.add_term(ea + eb, K(ca * cb));
    return r;
  }
  friend bool operator==(const Laurent& a, const Laurent& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }
  /// Total order used only to sort unordered pairs canonically.
  friend bool canonical_less(const Laurent& a, const Laurent& b) {
    return a.to_string() < b.to_string();
  }

  std::string to_string(const char* var = "t") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : c_) {
      std::string s = elem_to_string(c);
      bool neg = !s.empty() && s[0] == '-';
      if (neg) s.erase(0, 1);
      if (first) {
        if (neg) os << '-';
      } else {
        os << (neg ? " - " : " + ");
      }
      first = false;
      bool unit = s == "1";
      if (e == 0) {
        os << s;
        continue;
      }
      if (!unit) os << s << '*';
      os << var;
      if (e != 1) os << '^' << e;
    }
    return os.str();
  }

private:
  Map c_;
};

template <class K>
std::ostream& operator<<(std::ostream& os, const Laurent<K>& p) { return os << p.to_string(); }

using QPoly = Laurent<Rational>;

/// Canonical representative of the unit class: lowest exponent 0, constant term 1.
template <class K>
Laurent<K> doteq_normalize(const Laurent<K>& p) {
  if (p.is_zero()) return p;
  return p.shifted(-p.lo()).scaled(K(K(1) / p.trail()));
}

template <class K>
bool doteq(const Laurent<K>& a, const Laurent<K>& b) {
  return doteq_normalize(a) == doteq_normalize(b);
}

template <class K>
Laurent<K> star(const Laurent<K>& p) { return doteq_normalize(p.reflected()); }

/// Coefficient symmetry c_{lo+i} = c_{hi-i}; insensitive to units.
template <class K>
bool is_palindromic(const Laurent<K>& p) {
  if (p.is_zero()) return true;
  long lo = p.lo(), hi = p.hi();
  for (const auto& [e, c] : p.terms())
    if (!(p.coeff(lo + hi - e) == c)) return false;
  return true;
}

/// Division with remainder in K[t^{+-1}]: a = q*b + r with span(r) < span(b).
template <class K>
std::pair<Laurent<K>, Laurent<K>> laurent_divmod(const Laurent<K>& a, const Laurent<K>& b) {
  expect(!b.is_zero(), "division by zero polynomial");
  if (a.is_zero()) return {Laurent<K>(), Laurent<K>()};
  const long sa = a.lo(), sb = b.lo();
  Laurent<K> r = a.shifted(-sa);
  const Laurent<K> bb = b.shifted(-sb);
  const long db = bb.hi();
  const K lb = bb.lead();
  Laurent<K> q;
  while (!r.is_zero() && r.hi() >= db) {
    long e = r.hi() - db;
    K c = K(r.lead() / lb);
    q.add_term(e, c);
    r -= bb.shifted(e).scaled(c);
  }
  // a = t^{sa} (q bb + r) = (t^{sa-sb} q) b + t^{sa} r
  return {q.shifted(sa - sb), r.shifted(sa)};
}

template <class K>
Laurent<K> exact_div(const Laurent<K>& a, const Laurent<K>& b) {
  auto [q, r] = laurent_divmod(a, b);
  expect(r.is_zero(), "inexact Laurent division");
  return q;
}

template <class K>
bool divides(const Laurent<K>& b, const Laurent<K>& a) {
  return laurent_divmod(a, b).second.is_zero();
}

template <class K>
Laurent<K> laurent_gcd(Laurent<K> a, Laurent<K> b) {
  while (!b.is_zero()) {
    auto r = laurent_divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return doteq_normalize(a);
}

/// Order of the torsion of the module presented by P, i.e. the gcd of the
/// maximal minors. Unimodular Euclidean elimination along the long side.
template <class K>
Laurent<K> order_of_module(Matrix<Laurent<K>> P) {
  if (P.rows() < P.cols()) P = P.transposed();
  const std::size_t R = P.rows(), C = P.cols();
  if (C == 0) return Laurent<K>(K(1));
  Laurent<K> prod(K(1));
  for (std::size_t c = 0; c < C; ++c) {
    for (;;) {
      std::size_t piv = R;
      for (std::size_t r = c; r < R; ++r)
        if (!P(r, c).is_zero() && (piv == R || P(r, c).span() < P(piv, c).span())) piv = r;
      if (piv == R) return Laurent<K>();
      P.swap_rows(c, piv);
      bool clean = true;
      for (std::size_t r = c + 1; r < R; ++r) {
        if (P(r, c).is_zero()) continue;
        Laurent<K> q = laurent_divmod(P(r, c), P(c, c)).first;
        for (std::size_t j = c; j < C; ++j) P(r, j) -= q * P(c, j);
        if (!P(r, c).is_zero()) clean = false;
      }
      if (clean) break;
    }
    prod = doteq_normalize(prod * P(c, c));
  }
  return prod;
}

/// Pointwise conversion of polynomial coefficients between fields.
template <class K2, class K1, class F>
Laurent<K2> map_coeffs(const Laurent<K1>& p, F f) {
  Laurent<K2> r;
  for (const auto& [e, c] : p.terms()) r.add_term(e, f(c));
  return r;
}

/// Reduction of a rational into F_P; the denominator must be invertible.
template <unsigned P>
GF<P> reduce_mod(const Rational& q) {
  mpz_class n = q.get_num() % P, d = q.get_den() % P;
  if (n < 0) n += P;
  require(d != 0, "denominator divisible by the field characteristic");
  return GF<P>(n.get_si()) / GF<P>(d.get_si());
}

struct CyclotomicSplit {
  int power_of_one_minus_t = 0;
  std::vector<int> cyclotomic;  // indices e >= 2 with multiplicity
  QPoly residual;               // canonical
};

/// Cyclotomic polynomial Phi_e with integer coefficients (cached).
const QPoly& cyclotomic_poly(int e);

CyclotomicSplit cyclotomic_split(const QPoly& p);

/// Power series coefficients of num/den up to t^D; den must have constant term != 0
/// and both must be genuine polynomials.
std::vector<Rational> series_divide(const QPoly& num, const QPoly& den, int D);

} // namespace fbc
