#include "fbc/superirr.hpp"

#include "fbc/intpoly.hpp"
#include "fbc/roots.hpp"

namespace fbc {

const char* to_string(SuperVerdict v) {
  switch (v) {
    case SuperVerdict::CertifiedYes: return "certified_yes";
    case SuperVerdict::CertifiedNo: return "certified_no";
    default: return "unknown";
  }
}

SuperIrreducibility super_irreducible_check(const ZMatrix& m, int bound) {
  require(bound >= 1, "power bound must be at least 1");
  require(m.square() && m.rows() >= 1, "super irreducibility needs a nonempty square matrix");
  SuperIrreducibility out;
  out.power_bound = bound;
  auto no = [&](int k, const char* why) {
    out.verdict = SuperVerdict::CertifiedNo;
    out.witness_power = k;
    out.reason = why;
    return out;
  };
  auto yes = [&](const char* why) {
    out.verdict = SuperVerdict::CertifiedYes;
    out.reason = why;
    return out;
  };
  const std::size_t d = m.rows();
  if (d == 1) return yes("dimension one");
  const QMatrix q = to_q(m);
  if (sgn(determinant(q)) == 0) return no(1, "singular");
  const QPoly cp = char_poly(q);
  if (pv_check(cp)) return yes("Pisot characteristic polynomial");
  if (!is_irreducible_over_q(cp)) return no(1, "reducible characteristic polynomial");

  // Eigenvalue ratios are the roots of char(M^-1 (x) M); d of them equal 1.
  QPoly ratios = char_poly(kron(inverse(q), q));
  const QPoly x_minus_one = QPoly::monomial(Rational(1), 1) - QPoly(Rational(1));
  for (std::size_t i = 0; i < d; ++i) ratios = exact_div(ratios, x_minus_one);
  const CyclotomicSplit split = cyclotomic_split(ratios);
  if (split.power_of_one_minus_t == 0 && split.cyclotomic.empty())
    return yes("no eigenvalue ratio is a root of unity");
  for (int e : split.cyclotomic)
    if (!is_irreducible_over_q(char_poly(mat_pow(q, static_cast<unsigned>(e), Rational(0), Rational(1)))))
      return no(e, "eigenvalue ratio is a root of unity");

  QMatrix pw = q;
  for (int k = 2; k <= bound; ++k) {
    pw = pw * q;
    if (!is_irreducible_over_q(char_poly(pw))) return no(k, "reducible power");
  }
  out.reason = "no certificate within the power bound";
  return out;
}

} // namespace fbc
