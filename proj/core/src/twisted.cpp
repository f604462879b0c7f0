#include "fbc/twisted.hpp"

#include "fbc/roots.hpp"

namespace fbc {

FbcGroup::FbcGroup(FreeEndo phi) : monodromy(std::move(phi)) {
  require(monodromy.rank >= 1, "monodromy rank must be positive");
  require(is_automorphism(monodromy), "monodromy is not an automorphism");
}

Presentation FbcGroup::presentation() const {
  const int n = rank(), t = n + 1;
  Presentation p;
  p.generators = n + 1;
  for (int i = 1; i <= n; ++i) {
    Letters r{t, i, -t};
    Letters inv = inverse_letters(monodromy.images[static_cast<std::size_t>(i - 1)].letters);
    r.insert(r.end(), inv.begin(), inv.end());
    p.relators.push_back(free_reduce(r));
  }
  return p;
}

EnumeratedGroup validate_quotient(const Presentation& p, const FiniteQuotient& q, std::size_t bound) {
  require(q.degree >= 1, "quotient degree must be at least 1");
  require(static_cast<int>(q.gens.size()) == p.generators,
          "quotient needs one permutation per generator");
  EnumeratedGroup g(q.degree, q.gens, bound);
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    require(g.evaluate(p.relators[i]) == g.identity(),
            "not a quotient of G: relator " + std::to_string(i + 1) + " is not mapped to the identity");
  return g;
}

EnumeratedGroup validate_quotient(const FbcGroup& g, const FiniteQuotient& q, std::size_t bound) {
  return validate_quotient(g.presentation(), q, bound);
}

Twist make_twist(const FbcGroup& g, const FiniteQuotient& q, const Representation& r) {
  Twist tw;
  tw.group = validate_quotient(g, q);
  tw.rep = extend_representation(tw.group, r);
  return tw;
}

Twist untwisted(const FbcGroup& g) {
  FiniteQuotient q;
  q.degree = 1;
  q.gens.assign(static_cast<std::size_t>(g.rank() + 1), perm_identity(1));
  Twist tw;
  tw.group = validate_quotient(g, q);
  tw.rep = trivial_rep(tw.group);
  return tw;
}

namespace {

long t_exponent(const Letters& w, int t) {
  long e = 0;
  for (int l : w)
    if (std::abs(l) == t) e += l > 0 ? 1 : -1;
  return e;
}

/// sum_w c_w rho(w^-1) t^{phi(w^-1)} as a k x k matrix over K[t^+-1].
template <class K, class Conv>
Matrix<Laurent<K>> conj_image(const GroupRingElt& x, const Twist& tw, int t, Conv conv) {
  const std::size_t k = static_cast<std::size_t>(tw.rep.dim);
  Matrix<Laurent<K>> out(k, k);
  for (const auto& [w, c] : x.terms) {
    Letters wi = inverse_letters(w);
    const QMatrix& r = tw.rep.mat[static_cast<std::size_t>(tw.group.evaluate(wi))];
    const long e = t_exponent(wi, t);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b)
        if (sgn(r(a, b)) != 0) out(a, b).add_term(e, conv(Rational(c * r(a, b))));
  }
  return out;
}

template <class K, class Conv>
Matrix<Laurent<K>> fox_matrix(const FbcGroup& g, const Twist& tw, Conv conv) {
  const int n = g.rank(), t = n + 1;
  const std::size_t k = static_cast<std::size_t>(tw.rep.dim);
  expect(tw.group.num_gens() == n + 1, "twist does not match the group");
  const Presentation p = g.presentation();
  Matrix<Laurent<K>> m(static_cast<std::size_t>(n + 1) * k, static_cast<std::size_t>(n) * k);
  for (int i = 0; i < n; ++i) {
    FreeWord r{n + 1, p.relators[static_cast<std::size_t>(i)]};
    for (int j = 0; j <= n; ++j) {
      auto block = conj_image<K>(fox_derivative(r, j + 1), tw, t, conv);
      place_block(m, static_cast<std::size_t>(j) * k, static_cast<std::size_t>(i) * k, block,
                  [](const Laurent<K>& x) { return x; });
    }
  }
  return m;
}

QMatrix rho(const Twist& tw, const Letters& w) {
  return tw.rep.mat[static_cast<std::size_t>(tw.group.evaluate(w))];
}

} // namespace

QPoly delta0(const FbcGroup& g, const Twist& tw) {
  const int n = g.rank();
  const std::size_t k = static_cast<std::size_t>(tw.rep.dim);
  require(tw.group.num_gens() == n + 1, "dimension mismatch between twist and group");
  Matrix<QPoly> m(k, static_cast<std::size_t>(n + 1) * k);
  for (int j = 0; j <= n; ++j) {
    const QMatrix r = rho(tw, Letters{j + 1});
    const long e = j == n ? 1 : 0;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        QPoly entry = QPoly::monomial(Rational(-r(a, b)), e);
        if (a == b) entry += QPoly(Rational(1));
        m(a, static_cast<std::size_t>(j) * k + b) = entry;
      }
  }
  return order_of_module(m);
}

QPoly delta1_fox(const FbcGroup& g, const Twist& tw) {
  return order_of_module(fox_matrix<Rational>(g, tw, [](const Rational& x) { return x; }));
}

QPoly delta1_charpoly(const FbcGroup& g, const Twist& tw) {
  const int n = g.rank();
  const std::size_t k = static_cast<std::size_t>(tw.rep.dim);
  const std::size_t N = static_cast<std::size_t>(n) * k;
  require(tw.group.num_gens() == n + 1, "dimension mismatch between twist and group");

  // Invariant lattice spanned by D * rho(q) e_j, D clearing all denominators.
  Integer D = 1;
  for (const auto& m : tw.rep.mat)
    for (const auto& x : m.data()) mpz_lcm(D.get_mpz_t(), D.get_mpz_t(), x.get_den_mpz_t());
  ZMatrix gens(k, tw.group.order() * k);
  for (std::size_t q = 0; q < tw.group.order(); ++q)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        Rational v = tw.rep.mat[q](a, b) * D;
        gens(a, q * k + b) = v.get_num();
      }
  const QMatrix P = to_q(lattice_basis(gens));
  expect(P.rows() == k && P.cols() == k, "representation lattice is not full rank");
  const QMatrix Pinv = inverse(P);
  auto rho_int = [&](const Letters& w) { return Pinv * rho(tw, w) * P; };

  // Boundary C_1(F) -> C_0(F): block i is rho(a_i)^-1 - I.
  ZMatrix b0(k, N);
  for (int i = 0; i < n; ++i) {
    QMatrix blk = rho_int(Letters{-(i + 1)}) - q_identity(k);
    place_block(b0, 0, static_cast<std::size_t>(i) * k, blk, [](const Rational& x) {
      expect(is_integer(x), "integralized representation is not integral");
      return Integer(x.get_num());
    });
  }
  const ZMatrix ker = integer_kernel_basis(b0);
  if (ker.cols() == 0) return QPoly(Rational(1));

  // Monodromy action on chains, made a chain map by the trailing rho(t).
  const QMatrix rt = rho_int(Letters{n + 1});
  QMatrix psi(N, N, Rational(0));
  for (int i = 0; i < n; ++i) {
    const FreeWord img = g.monodromy.images[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      QMatrix blk(k, k, Rational(0));
      for (const auto& [w, c] : fox_derivative(img, j + 1).terms) {
        QMatrix r = rho_int(inverse_letters(w));
        for (std::size_t a = 0; a < k; ++a)
          for (std::size_t b = 0; b < k; ++b) blk(a, b) += c * r(a, b);
      }
      place_block(psi, static_cast<std::size_t>(j) * k, static_cast<std::size_t>(i) * k, QMatrix(blk * rt),
                  [](const Rational& x) { return x; });
    }
  }
  const QMatrix kq = to_q(ker);
  const QMatrix restricted = solve_full_column_rank(kq, psi * kq);
  for (const auto& x : restricted.data()) expect(is_integer(x), "restricted action is not integral");
  return doteq_normalize(det_one_minus_tM(restricted));
}

Torsion torsion_ratio(const QPoly& d1, const QPoly& d0) {
  require(!d0.is_zero(), "torsion undefined: Delta_0 vanishes");
  require(!d1.is_zero(), "torsion undefined: Delta_1 vanishes");
  const QPoly gcd = laurent_gcd(d1, d0);
  return {doteq_normalize(exact_div(d1, gcd)), doteq_normalize(exact_div(d0, gcd))};
}

Torsion reidemeister_torsion(const FbcGroup& g, const Twist& tw) {
  return torsion_ratio(delta1_fox(g, tw), delta0(g, tw));
}

std::vector<Rational> torsion_series(const Torsion& tau, int degree) {
  require(degree >= 0, "series degree must be nonnegative");
  return series_divide(tau.num, tau.den, degree);
}

DeltaPair delta_pair(const QPoly& delta) {
  require(!delta.is_zero(), "delta pair of the zero polynomial");
  DeltaPair p{doteq_normalize(delta), star(delta), {}};
  if (canonical_less(p.second, p.first)) std::swap(p.first, p.second);
  p.product = doteq_normalize(p.first * p.second);
  return p;
}

int fibre_rank(const FbcGroup& g) {
  const Twist tw = untwisted(g);
  auto mod2 = fox_matrix<GF<2>>(g, tw, [](const Rational& x) { return reduce_mod<2>(x); });
  const auto d2 = order_of_module(mod2);
  const QPoly dq = delta1_fox(g, tw);
  expect(!d2.is_zero() && !dq.is_zero(), "untwisted Delta_1 vanishes for an automorphism");
  expect(d2.span() == dq.span(), "fibre rank over F_2 and Q disagree");
  return static_cast<int>(d2.span());
}

int b1_mapping_torus(const FbcGroup& g) {
  const QMatrix m = to_q(abelianization_matrix(g.monodromy));
  return 1 + static_cast<int>(m.rows() - rank(m - q_identity(m.rows())));
}

RealPair homological_stretch(const FbcGroup& g) {
  const QMatrix m = to_q(abelianization_matrix(g.monodromy));
  const ModulusBound a = max_root_modulus(char_poly(m));
  const ModulusBound b = max_root_modulus(char_poly(inverse(m)));
  RealPair r{a.value, b.value, a.certified && b.certified};
  if (r.second < r.first) std::swap(r.first, r.second);
  return r;
}

Rational lefschetz_number(const GraphMap& g, int m, const EnumeratedGroup& q,
                          const std::vector<Rational>& zeta) {
  require(zeta.size() == q.order(), "class function needs one value per quotient element");
  PeriodicOptions opt;
  opt.cd_words = false;
  opt.quotient = &q;
  const PeriodicData d = periodic_points(g, m, opt);
  Rational sum = 0;
  for (const auto& pt : d.points) sum += zeta[static_cast<std::size_t>(pt.cd_element)] * pt.index;
  return sum;
}

Rational lefschetz_number(const GraphMap& g, int m, const FiniteQuotient& q,
                          const std::vector<Rational>& zeta) {
  return lefschetz_number(g, m, validate_quotient(mapping_torus_presentation(g), q), zeta);
}

int nielsen_lower_bound(const GraphMap& g, int m, const FiniteQuotient& fq) {
  const EnumeratedGroup q = validate_quotient(mapping_torus_presentation(g), fq);
  const ZhatClasses z = zhat_classes(q);
  PeriodicOptions opt;
  opt.cd_words = false;
  opt.quotient = &q;
  const PeriodicData d = periodic_points(g, m, opt);
  std::vector<Rational> per_omega(z.size(), Rational(0));
  for (const auto& pt : d.points) {
    const int e = pt.cd_element;
    per_omega[static_cast<std::size_t>(z.omega_of_class[static_cast<std::size_t>(q.class_of(e))])] += pt.index;
  }
  int count = 0;
  for (const auto& v : per_omega)
    if (sgn(v) != 0) ++count;
  return count;
}

} // namespace fbc
