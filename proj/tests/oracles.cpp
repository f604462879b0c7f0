#include "oracles.hpp"

#include <Eigen/Dense>
#include <map>

namespace fbc::oracle {

QPoly maximal_minors_gcd(const Matrix<QPoly>& m0) {
  const Matrix<QPoly> m = m0.rows() <= m0.cols() ? m0 : m0.transposed();
  const std::size_t r = m.rows(), c = m.cols();
  std::vector<bool> choose(c, false);
  std::fill(choose.begin(), choose.begin() + static_cast<long>(r), true);
  QPoly g;
  do {
    Matrix<QPoly> sub(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0, k = 0; j < c; ++j)
        if (choose[j]) sub(i, k++) = m(i, j);
    QPoly d = laplace_det(sub, QPoly(), QPoly(Rational(1)));
    g = g.is_zero() ? d : (d.is_zero() ? g : laurent_gcd(g, d));
  } while (std::prev_permutation(choose.begin(), choose.end()));
  return g.is_zero() ? g : doteq_normalize(g);
}

Integer bareiss_det(ZMatrix m) {
  const std::size_t n = m.rows();
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0) ++p;
      if (p == n) return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = v;
      }
    prev = m(k, k);
  }
  return n == 0 ? Integer(1) : Integer(sign * m(n - 1, n - 1));
}

std::vector<Integer> determinantal_divisors(const ZMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols(), kmax = std::min(r, c);
  std::vector<Integer> out;
  for (std::size_t k = 1; k <= kmax; ++k) {
    Integer g = 0;
    std::vector<bool> rows(r, false), cols(c, false);
    std::fill(rows.begin(), rows.begin() + static_cast<long>(k), true);
    do {
      std::fill(cols.begin(), cols.end(), false);
      std::fill(cols.begin(), cols.begin() + static_cast<long>(k), true);
      do {
        ZMatrix sub(k, k);
        for (std::size_t i = 0, a = 0; i < r; ++i) {
          if (!rows[i]) continue;
          for (std::size_t j = 0, b = 0; j < c; ++j)
            if (cols[j]) sub(a, b++) = m(i, j);
          ++a;
        }
        Integer d = bareiss_det(sub);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
      } while (std::prev_permutation(cols.begin(), cols.end()));
    } while (std::prev_permutation(rows.begin(), rows.end()));
    out.push_back(g);
  }
  return out;
}

std::vector<std::complex<double>> eigenvalues(const QMatrix& m) {
  Eigen::MatrixXd a(static_cast<long>(m.rows()), static_cast<long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a(static_cast<long>(i), static_cast<long>(j)) = m(i, j).get_d();
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  std::vector<std::complex<double>> out;
  for (long i = 0; i < es.eigenvalues().size(); ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

double spectral_radius(const QMatrix& m) {
  double r = 0;
  for (auto z : eigenvalues(m)) r = std::max(r, std::abs(z));
  return r;
}

std::vector<std::complex<double>> poly_roots(const QPoly& p) {
  const long n = p.hi();
  QMatrix c(static_cast<std::size_t>(n), static_cast<std::size_t>(n), Rational(0));
  for (long i = 1; i < n; ++i) c(static_cast<std::size_t>(i), static_cast<std::size_t>(i - 1)) = 1;
  for (long i = 0; i < n; ++i) c(static_cast<std::size_t>(i), static_cast<std::size_t>(n - 1)) = -p.coeff(i) / p.lead();
  return eigenvalues(c);
}

namespace {
int moebius(int n) {
  int mu = 1;
  for (int p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      mu = -mu;
    }
  return n > 1 ? -mu : mu;
}
} // namespace

QPoly cyclotomic_moebius(int n) {
  QPoly num(Rational(1)), den(Rational(1));
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    QPoly f = QPoly::monomial(Rational(1), d) - QPoly(Rational(1));
    const int mu = moebius(n / d);
    if (mu == 1) num = num * f;
    if (mu == -1) den = den * f;
  }
  return laurent_divmod(num, den).first;
}

std::vector<Rational> exp_series(const std::vector<Rational>& a, int D) {
  // e' = a' e, so m e_m = sum_k k a_k e_{m-k}
  std::vector<Rational> e(static_cast<std::size_t>(D + 1), Rational(0));
  e[0] = 1;
  for (int m = 1; m <= D; ++m) {
    Rational s = 0;
    for (int k = 1; k <= m && k < static_cast<int>(a.size()); ++k)
      s += k * a[static_cast<std::size_t>(k)] * e[static_cast<std::size_t>(m - k)];
    e[static_cast<std::size_t>(m)] = s / m;
  }
  return e;
}

std::pair<int, Rational> map_point(const GraphMap& g, int edge, const Rational& x) {
  const EdgePath& img = g.images[static_cast<std::size_t>(edge)];
  const Rational scaled = x * static_cast<long>(img.size());
  mpz_class piece = scaled.get_num() / scaled.get_den();
  Rational local = scaled - Rational(piece);
  if (sgn(local) == 0) return {-1, Rational(0)};
  const int l = img[piece.get_ui()];
  return {std::abs(l) - 1, l > 0 ? local : Rational(1 - local)};
}

bool trivial_cover_by_coloring(const Digraph& d, const std::vector<bool>& special) {
  const int n = d.vertices;
  for (long mask = 0; mask < (1L << n); ++mask) {
    bool ok = true;
    for (std::size_t k = 0; k < d.edges.size() && ok; ++k) {
      const auto [u, v] = d.edges[k];
      const bool flip = ((mask >> u) & 1) != ((mask >> v) & 1);
      ok = flip == special[k];
    }
    if (ok) return true;
  }
  return false;
}

} // namespace fbc::oracle
