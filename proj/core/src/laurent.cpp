#include "fbc/laurent.hpp"

#include <mutex>

namespace fbc {

namespace {

int euler_phi(int e) {
  int r = e;
  for (int p = 2; p * p <= e; ++p) {
    if (e % p) continue;
    while (e % p == 0) e /= p;
    r -= r / p;
  }
  if (e > 1) r -= r / e;
  return r;
}

} // namespace

const QPoly& cyclotomic_poly(int e) {
  static std::mutex mu;
  static std::map<int, QPoly> cache;
  expect(e >= 1, "cyclotomic index must be positive");
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(e);
  if (it != cache.end()) return it->second;
  // t^e - 1 divided by Phi_d for proper divisors d; computed without recursion
  // into the locked section.
  std::vector<int> divs;
  for (int d = 1; d < e; ++d)
    if (e % d == 0) divs.push_back(d);
  QPoly p = QPoly::monomial(Rational(1), e) - QPoly(Rational(1));
  for (int d : divs) {
    auto jt = cache.find(d);
    QPoly phi_d;
    if (jt != cache.end()) {
      phi_d = jt->second;
    } else {
      // small divisors are built on demand in increasing order
      QPoly q = QPoly::monomial(Rational(1), d) - QPoly(Rational(1));
      for (int d2 = 1; d2 < d; ++d2)
        if (d % d2 == 0) q = exact_div(q, cache.at(d2));
      cache.emplace(d, q);
      phi_d = q;
    }
    p = exact_div(p, phi_d);
  }
  return cache.emplace(e, p).first->second;
}

CyclotomicSplit cyclotomic_split(const QPoly& input) {
  expect(!input.is_zero(), "cyclotomic_split of zero");
  CyclotomicSplit out;
  QPoly p = doteq_normalize(input);
  const QPoly one_minus_t = QPoly(Rational(1)) - QPoly::t();
  while (p.span() > 0 && sgn(p.eval(Rational(1))) == 0) {
    p = doteq_normalize(exact_div(p, one_minus_t));
    ++out.power_of_one_minus_t;
  }
  for (int e = 2; p.span() > 0; ++e) {
    int ph = euler_phi(e);
    // phi(e) >= sqrt(e/2), so nothing beyond 2*deg^2 can divide
    if (e > 2 * p.span() * p.span() + 2) break;
    if (ph > p.span()) continue;
    const QPoly& c = cyclotomic_poly(e);
    for (;;) {
      auto [q, r] = laurent_divmod(p, c);
      if (!r.is_zero()) break;
      p = doteq_normalize(q);
      out.cyclotomic.push_back(e);
    }
  }
  out.residual = doteq_normalize(p);
  return out;
}

std::vector<Rational> series_divide(const QPoly& num, const QPoly& den, int D) {
  expect(num.is_zero() || num.lo() >= 0, "series numerator has negative powers");
  expect(!den.is_zero() && den.lo() == 0, "series denominator needs a nonzero constant term");
  std::vector<Rational> s(static_cast<std::size_t>(D + 1));
  const Rational d0 = den.coeff(0);
  for (int n = 0; n <= D; ++n) {
    Rational acc = num.coeff(n);
    for (int j = 1; j <= n; ++j) acc -= den.coeff(j) * s[static_cast<std::size_t>(n - j)];
    s[static_cast<std::size_t>(n)] = acc / d0;
  }
  return s;
}

} // namespace fbc
