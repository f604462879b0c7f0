#include "fbc/intpoly.hpp"

#include <algorithm>
#include <cstdint>
#include <set>

namespace fbc {

ZPoly primitive_part(const QPoly& p) {
  expect(!p.is_zero(), "primitive part of zero");
  expect(p.lo() >= 0, "negative exponent in integer polynomial");
  Integer l = 1;
  for (const auto& [e, c] : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  ZPoly z(static_cast<std::size_t>(p.hi() + 1), Integer(0));
  Integer g = 0;
  for (const auto& [e, c] : p.terms()) {
    z[static_cast<std::size_t>(e)] = c.get_num() * (l / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), z[static_cast<std::size_t>(e)].get_mpz_t());
  }
  for (auto& c : z) c /= g;
  if (z.back() < 0)
    for (auto& c : z) c = -c;
  return z;
}

QPoly to_qpoly(const ZPoly& p) {
  QPoly r;
  for (std::size_t i = 0; i < p.size(); ++i) r.add_term(static_cast<long>(i), Rational(p[i]));
  return r;
}

namespace {

using u64 = std::uint64_t;
using MP = std::vector<u64>;  // polynomial over F_q, ascending

void trim(MP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

int deg(const MP& a) { return static_cast<int>(a.size()) - 1; }

u64 pw(u64 b, u64 e, u64 q) {
  u64 r = 1;
  b %= q;
  while (e) {
    if (e & 1) r = r * b % q;
    b = b * b % q;
    e >>= 1;
  }
  return r;
}

u64 inv(u64 a, u64 q) { return pw(a, q - 2, q); }

MP reduce(const ZPoly& p, u64 q) {
  MP r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    mpz_class m = p[i] % static_cast<unsigned long>(q);
    if (m < 0) m += static_cast<unsigned long>(q);
    r[i] = m.get_ui();
  }
  trim(r);
  return r;
}

MP sub(MP a, const MP& b, u64 q) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + q - b[i]) % q;
  trim(a);
  return a;
}

MP mul(const MP& a, const MP& b, u64 q) {
  if (a.empty() || b.empty()) return {};
  MP r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i])
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % q;
  trim(r);
  return r;
}

void divmod(const MP& a, const MP& b, u64 q, MP& quo, MP& rem) {
  expect(!b.empty(), "polynomial division by zero mod p");
  rem = a;
  quo.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  u64 il = inv(b.back(), q);
  while (!rem.empty() && rem.size() >= b.size()) {
    std::size_t sh = rem.size() - b.size();
    u64 c = rem.back() * il % q;
    quo[sh] = c;
    for (std::size_t j = 0; j < b.size(); ++j) rem[sh + j] = (rem[sh + j] + q - c * b[j] % q) % q;
    trim(rem);
  }
  trim(quo);
}

MP mod(const MP& a, const MP& b, u64 q) {
  MP x, r;
  divmod(a, b, q, x, r);
  return r;
}

MP monic(MP a, u64 q) {
  if (a.empty()) return a;
  u64 il = inv(a.back(), q);
  for (auto& c : a) c = c * il % q;
  return a;
}

MP gcd(MP a, MP b, u64 q) {
  while (!b.empty()) {
    MP r = mod(a, b, q);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a, q);
}

// s*a + t*b = 1 for coprime a, b
void ext_gcd(const MP& a, const MP& b, u64 q, MP& s, MP& t) {
  MP r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  while (!r1.empty()) {
    MP quo, rem;
    divmod(r0, r1, q, quo, rem);
    r0 = std::move(r1);
    r1 = std::move(rem);
    MP s2 = sub(s0, mul(quo, s1, q), q);
    MP t2 = sub(t0, mul(quo, t1, q), q);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  expect(r0.size() == 1, "factors not coprime mod p");
  u64 il = inv(r0[0], q);
  for (auto& c : s0) c = c * il % q;
  for (auto& c : t0) c = c * il % q;
  s = s0;
  t = t0;
}

MP deriv(const MP& a, u64 q) {
  MP r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * (i % q) % q);
  trim(r);
  return r;
}

MP powmod(MP base, const mpz_class& e, const MP& f, u64 q) {
  MP r{1};
  base = mod(base, f, q);
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    r = mod(mul(r, r, q), f, q);
    if (mpz_tstbit(e.get_mpz_t(), i)) r = mod(mul(r, base, q), f, q);
  }
  if (e == 0) r = MP{1};
  return r;
}

bool squarefree_mod(const MP& f, u64 q) {
  MP d = deriv(f, q);
  if (d.empty()) return false;
  return gcd(f, d, q).size() == 1;
}

struct DdfPart {
  MP g;
  int d;
};

std::vector<DdfPart> ddf(MP f, u64 q) {
  f = monic(f, q);
  std::vector<DdfPart> out;
  MP h{0, 1};
  const MP x{0, 1};
  for (int d = 1; 2 * d <= deg(f); ++d) {
    h = powmod(h, mpz_class(static_cast<unsigned long>(q)), f, q);
    MP g = gcd(f, sub(h, x, q), q);
    if (deg(g) > 0) {
      out.push_back({g, d});
      MP quo, rem;
      divmod(f, g, q, quo, rem);
      f = quo;
      h = mod(h, f, q);
    }
  }
  if (deg(f) > 0) out.push_back({f, deg(f)});
  return out;
}

u64 splitmix(u64& s) {
  u64 z = (s += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void edf(const MP& g, int d, u64 q, u64& seed, std::vector<MP>& out) {
  if (deg(g) == d) {
    out.push_back(monic(g, q));
    return;
  }
  mpz_class qd;
  mpz_ui_pow_ui(qd.get_mpz_t(), q, static_cast<unsigned long>(d));
  mpz_class e = (qd - 1) / 2;
  for (;;) {
    MP a(static_cast<std::size_t>(deg(g)));
    for (auto& c : a) c = splitmix(seed) % q;
    trim(a);
    if (deg(a) < 1) continue;
    MP b = sub(powmod(a, e, g, q), MP{1}, q);
    MP h = gcd(g, b, q);
    if (deg(h) > 0 && deg(h) < deg(g)) {
      MP quo, rem;
      divmod(g, h, q, quo, rem);
      edf(h, d, q, seed, out);
      edf(quo, d, q, seed, out);
      return;
    }
  }
}

std::vector<MP> factor_mod(const MP& f, u64 q) {
  std::vector<MP> out;
  u64 seed = 0x5eedULL + q;
  for (const auto& part : ddf(f, q)) edf(part.g, part.d, q, seed, out);
  return out;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Integer polynomial helpers for lifting (coefficients kept in [0, modulus)).
ZPoly zmod(ZPoly a, const mpz_class& m) {
  for (auto& c : a) {
    c %= m;
    if (c < 0) c += m;
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

ZPoly zsub(ZPoly a, const ZPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Integer(0));
  for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

ZPoly lift_from(const MP& a) {
  ZPoly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<unsigned long>(a[i]);
  return r;
}

ZPoly zscale(ZPoly a, const mpz_class& s) {
  for (auto& c : a) c *= s;
  return a;
}

// Lifts T = g*h (mod q) with g monic to modulus q^k.
void hensel(const ZPoly& T, ZPoly& g, ZPoly& h, u64 q, unsigned k) {
  MP gm = reduce(g, q), hm = reduce(h, q), s, t;
  ext_gcd(gm, hm, q, s, t);
  mpz_class pj = static_cast<unsigned long>(q);
  const mpz_class qz = static_cast<unsigned long>(q);
  for (unsigned j = 1; j < k; ++j) {
    ZPoly diff = zsub(T, zmul(g, h));
    diff = zmod(diff, pj * qz);
    for (auto& c : diff) {
      expect(c % pj == 0, "Hensel step precondition failed");
      c /= pj;
    }
    MP c = reduce(diff, q);
    MP quo, dg;
    divmod(mul(t, c, q), gm, q, quo, dg);
    MP dh = sub(mul(s, c, q), MP{}, q);
    MP qh = mul(quo, hm, q);
    if (dh.size() < qh.size()) dh.resize(qh.size(), 0);
    for (std::size_t i = 0; i < qh.size(); ++i) dh[i] = (dh[i] + qh[i]) % q;
    trim(dh);
    g = zsub(g, zscale(lift_from(dg), -pj));
    h = zsub(h, zscale(lift_from(dh), -pj));
    pj *= qz;
    g = zmod(g, pj);
    h = zmod(h, pj);
    gm = reduce(g, q);
    hm = reduce(h, q);
  }
}

bool divides_over_z(const ZPoly& g, const ZPoly& f) {
  return laurent_divmod(to_qpoly(f), to_qpoly(g)).second.is_zero();
}

std::set<int> subset_degrees(const std::vector<int>& degs, int n) {
  std::vector<bool> reach(static_cast<std::size_t>(n + 1), false);
  reach[0] = true;
  for (int d : degs)
    for (int s = n; s >= d; --s)
      if (reach[static_cast<std::size_t>(s - d)]) reach[static_cast<std::size_t>(s)] = true;
  std::set<int> out;
  for (int s = 1; s < n; ++s)
    if (reach[static_cast<std::size_t>(s)]) out.insert(s);
  return out;
}

} // namespace

std::vector<int> factor_degrees_mod(const ZPoly& p, unsigned q) {
  MP f = reduce(p, q);
  std::vector<int> degs;
  for (const auto& part : ddf(f, q))
    for (int i = 0; i < deg(part.g) / part.d; ++i) degs.push_back(part.d);
  std::sort(degs.begin(), degs.end());
  return degs;
}

bool is_irreducible_over_q(const QPoly& input) {
  if (input.is_zero()) return false;
  QPoly p = input;
  if (p.lo() > 0) {
    if (p.span() > 0) return false;  // t divides a non-monomial
    p = p.shifted(-p.lo());
  }
  if (p.hi() <= 0) return false;
  if (p.hi() == 1) return true;
  ZPoly f = primitive_part(p);
  const int n = static_cast<int>(f.size()) - 1;
  QPoly qf = to_qpoly(f), df;
  for (const auto& [e, c] : qf.terms())
    if (e > 0) df.add_term(e - 1, c * e);
  if (laurent_gcd(qf, df).span() > 0) return false;

  std::set<int> allowed;
  bool first = true;
  u64 best_q = 0;
  std::size_t best_r = 0;
  int good = 0;
  for (u64 q = 3; good < 7 && q < 100000; q += 2) {
    if (!is_prime(q)) continue;
    if (f.back() % static_cast<unsigned long>(q) == 0) continue;
    MP fm = reduce(f, q);
    if (!squarefree_mod(fm, q)) continue;
    ++good;
    std::vector<int> degs;
    for (const auto& part : ddf(fm, q))
      for (int i = 0; i < deg(part.g) / part.d; ++i) degs.push_back(part.d);
    if (degs.size() == 1) return true;
    std::set<int> s = subset_degrees(degs, n);
    if (first) {
      allowed = s;
      first = false;
    } else {
      std::set<int> inter;
      std::set_intersection(allowed.begin(), allowed.end(), s.begin(), s.end(),
                            std::inserter(inter, inter.begin()));
      allowed.swap(inter);
    }
    if (allowed.empty()) return true;
    if (best_q == 0 || degs.size() < best_r) {
      best_q = q;
      best_r = degs.size();
    }
  }
  expect(best_q != 0, "no usable prime for factorization");

  // Zassenhaus with the prime giving fewest modular factors.
  const u64 q = best_q;
  std::vector<MP> facs = factor_mod(reduce(f, q), q);
  const std::size_t r = facs.size();
  const mpz_class lc = f.back();
  mpz_class norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  mpz_class norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  mpz_class bound = abs(lc) * norm;
  mpz_mul_2exp(bound.get_mpz_t(), bound.get_mpz_t(), static_cast<unsigned long>(n));
  unsigned k = 1;
  mpz_class M = static_cast<unsigned long>(q);
  while (M <= 2 * bound) {
    M *= static_cast<unsigned long>(q);
    ++k;
  }

  // chain lifting: T = lc * f_i * (rest)
  std::vector<ZPoly> lifted(r);
  ZPoly T = f;
  for (std::size_t i = 0; i + 1 < r; ++i) {
    ZPoly g = lift_from(facs[i]);
    MP rest{static_cast<u64>(mpz_class(((lc % static_cast<unsigned long>(q)) + static_cast<unsigned long>(q)) %
                                       static_cast<unsigned long>(q)).get_ui())};
    for (std::size_t j = i + 1; j < r; ++j) rest = mul(rest, facs[j], q);
    ZPoly h = lift_from(rest);
    hensel(T, g, h, q, k);
    lifted[i] = g;
    T = h;
  }
  {
    // last factor: T = lc * f_last, made monic modulo M
    mpz_class il;
    mpz_invert(il.get_mpz_t(), lc.get_mpz_t(), M.get_mpz_t());
    lifted[r - 1] = zmod(zscale(T, il), M);
  }

  std::vector<int> degs(r);
  for (std::size_t i = 0; i < r; ++i) degs[i] = static_cast<int>(lifted[i].size()) - 1;
  const mpz_class half = M / 2;
  std::vector<std::size_t> idx;
  for (std::size_t sz = 1; 2 * sz <= r; ++sz) {
    idx.assign(sz, 0);
    for (std::size_t i = 0; i < sz; ++i) idx[i] = i;
    for (;;) {
      int dsum = 0;
      for (auto i : idx) dsum += degs[i];
      if (allowed.count(dsum)) {
        ZPoly g{lc};
        for (auto i : idx) g = zmod(zmul(g, lifted[i]), M);
        for (auto& c : g)
          if (c > half) c -= M;
        while (!g.empty() && g.back() == 0) g.pop_back();
        if (g.size() >= 2) {
          ZPoly gp = primitive_part(to_qpoly(g));
          if (divides_over_z(gp, f)) return false;
        }
      }
      // next combination
      std::size_t pos = sz;
      while (pos > 0 && idx[pos - 1] == r - sz + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t j = pos; j < sz; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return true;
}

} // namespace fbc
