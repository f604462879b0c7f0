#include "fbc/roots.hpp"

#include <cmath>
#include <complex>

namespace fbc {

namespace {

using cld = std::complex<long double>;

Rational ld_to_q(long double x) {
  if (x == 0) return 0;
  int e = 0;
  long double m = std::frexp(std::fabs(x), &e);
  auto mant = static_cast<unsigned long>(std::ldexp(m, 64));
  Rational q{mpz_class(mant)};
  int shift = e - 64;
  if (shift >= 0) {
    mpz_class s = 1;
    s <<= static_cast<unsigned>(shift);
    q *= Rational(s);
  } else {
    mpz_class s = 1;
    s <<= static_cast<unsigned>(-shift);
    q /= Rational(s);
  }
  return x < 0 ? Rational(-q) : q;
}

long double q_to_ld(const Rational& q) {
  // two-step conversion keeps more than double precision for moderate values
  long double hi = static_cast<long double>(q.get_d());
  Rational rest = q - ld_to_q(hi);
  return hi + static_cast<long double>(rest.get_d());
}

struct QC {
  Rational re, im;
};

QC qmul(const QC& a, const QC& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
Rational norm2(const QC& a) { return a.re * a.re + a.im * a.im; }

// Squarefree part and the cofactor p / sqf (both monic over Q).
void squarefree_split(const QPoly& p, QPoly& sqf, QPoly& rest) {
  QPoly d;
  for (const auto& [e, c] : p.terms())
    if (e > 0) d.add_term(e - 1, c * e);
  QPoly g = laurent_gcd(p, d);
  sqf = exact_div(p, g);
  sqf = sqf.scaled(1 / sqf.lead());
  rest = g.scaled(1 / g.lead());
}

std::vector<cld> aberth(const std::vector<long double>& a) {
  // a ascending, monic
  const int n = static_cast<int>(a.size()) - 1;
  long double R = 0;
  for (int i = 0; i < n; ++i) R = std::max(R, std::fabs(a[static_cast<std::size_t>(i)]));
  R = 1 + R;
  std::vector<cld> z(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    long double ang = 2 * 3.14159265358979323846L * i / n + 0.4L;
    z[static_cast<std::size_t>(i)] = std::polar(R * 0.9L, ang);
  }
  auto eval = [&](cld x, cld& p, cld& dp) {
    p = a[static_cast<std::size_t>(n)];
    dp = 0;
    for (int i = n - 1; i >= 0; --i) {
      dp = dp * x + p;
      p = p * x + a[static_cast<std::size_t>(i)];
    }
  };
  for (int it = 0; it < 2000; ++it) {
    long double worst = 0;
    for (int i = 0; i < n; ++i) {
      cld p, dp;
      auto& zi = z[static_cast<std::size_t>(i)];
      eval(zi, p, dp);
      if (p == cld(0)) continue;
      cld ratio = p / dp;
      cld sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) sum += cld(1) / (zi - z[static_cast<std::size_t>(j)]);
      cld w = ratio / (cld(1) - ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) w = ratio;
      zi -= w;
      worst = std::max(worst, std::abs(w) / std::max<long double>(1, std::abs(zi)));
    }
    if (worst < 1e-19L && it > 3) break;
  }
  return z;
}

RootIsolation isolate_squarefree(const QPoly& s) {
  RootIsolation out;
  const int n = static_cast<int>(s.hi());
  if (n <= 0) {
    out.certified = true;
    return out;
  }
  std::vector<long double> a(static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i) a[static_cast<std::size_t>(i)] = q_to_ld(s.coeff(i));
  std::vector<cld> z = aberth(a);
  std::vector<QC> zq(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) zq[i] = {ld_to_q(z[i].real()), ld_to_q(z[i].imag())};
  std::vector<Rational> R(z.size());
  out.certified = true;
  for (std::size_t i = 0; i < z.size(); ++i) {
    QC pv{s.coeff(n), 0};
    for (int k = n - 1; k >= 0; --k) {
      pv = qmul(pv, zq[i]);
      pv.re += s.coeff(k);
    }
    QC prod{1, 0};
    for (std::size_t j = 0; j < z.size(); ++j)
      if (j != i) prod = qmul(prod, QC{zq[i].re - zq[j].re, zq[i].im - zq[j].im});
    Rational pn = norm2(prod);
    if (sgn(pn) == 0) {
      out.certified = false;
      R[i] = 1;
      continue;
    }
    Rational r2 = Rational(n * n) * norm2(pv) / pn;
    long double approx = std::sqrt(static_cast<long double>(r2.get_d()));
    Rational up = ld_to_q(approx * (1 + 1e-9L) + 1e-300L);
    while (up * up < r2) up *= 2;
    R[i] = up;
  }
  for (std::size_t i = 0; i < z.size() && out.certified; ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) {
      QC d{zq[i].re - zq[j].re, zq[i].im - zq[j].im};
      Rational rr = R[i] + R[j];
      if (!(norm2(d) > rr * rr)) {
        out.certified = false;
        break;
      }
    }
  for (std::size_t i = 0; i < z.size(); ++i)
    out.roots.push_back({z[i].real(), z[i].imag(), q_to_ld(R[i])});
  return out;
}

enum class Side { Inside, Outside, Unsure };

Side side_of(const RootDisc& d) {
  Rational re = ld_to_q(d.re), im = ld_to_q(d.im), r = ld_to_q(d.radius);
  Rational m2 = re * re + im * im;
  // radius is rounded; enlarge by a relative hair to stay rigorous
  r = r * Rational(1000001, 1000000) + Rational(1, mpz_class("1000000000000000000000000000000"));
  if (r < 1) {
    Rational in = 1 - r;
    if (m2 < in * in) return Side::Inside;
  }
  Rational out = 1 + r;
  if (m2 > out * out) return Side::Outside;
  return Side::Unsure;
}

} // namespace

RootIsolation isolate_roots(const QPoly& p) {
  expect(!p.is_zero() && p.lo() >= 0, "root isolation needs a nonzero polynomial");
  RootIsolation out;
  out.certified = true;
  QPoly cur = p;
  while (cur.hi() > 0) {
    QPoly sqf, rest;
    squarefree_split(cur, sqf, rest);
    RootIsolation part = isolate_squarefree(sqf);
    out.certified = out.certified && part.certified;
    out.roots.insert(out.roots.end(), part.roots.begin(), part.roots.end());
    cur = rest;
  }
  return out;
}

UnitCircleCount unit_circle_count(const QPoly& p) {
  UnitCircleCount c;
  RootIsolation iso = isolate_roots(p);
  for (const auto& d : iso.roots) {
    if (!iso.certified) {
      ++c.uncertain;
      continue;
    }
    switch (side_of(d)) {
      case Side::Inside: ++c.inside; break;
      case Side::Outside: ++c.outside; break;
      case Side::Unsure: ++c.uncertain; break;
    }
  }
  return c;
}

bool pv_check(const QPoly& p) {
  expect(!p.is_zero(), "pv_check of zero polynomial");
  expect(p.lo() >= 0, "pv_check needs a polynomial");
  expect(p.lead() == 1, "pv_check needs a monic polynomial");
  for (const auto& [e, c] : p.terms()) expect(c.get_den() == 1, "pv_check needs integer coefficients");
  if (p.hi() < 1) return false;
  UnitCircleCount c = unit_circle_count(p);
  return c.outside == 1 && c.uncertain == 0;
}

ModulusBound max_root_modulus(const QPoly& p) {
  expect(!p.is_zero() && p.lo() >= 0, "modulus bound needs a nonzero polynomial");
  ModulusBound b;
  RootIsolation iso = isolate_roots(p);
  b.certified = iso.certified;
  for (const auto& d : iso.roots) {
    long double m = std::hypot(d.re, d.im);
    b.value = std::max(b.value, m);
    b.lower = std::max(b.lower, std::max<long double>(0, m - d.radius));
    b.upper = std::max(b.upper, m + d.radius);
  }
  return b;
}

} // namespace fbc
