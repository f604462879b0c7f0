#include "fbc/linalg.hpp"

#include <algorithm>

namespace fbc {

QMatrix q_identity(std::size_t n) { return QMatrix::identity(n, Rational(0), Rational(1)); }
ZMatrix z_identity(std::size_t n) { return ZMatrix::identity(n, Integer(0), Integer(1)); }

QMatrix to_q(const ZMatrix& m) {
  QMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

ZMatrix to_z(const QMatrix& m) {
  ZMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      expect(m(i, j).get_den() == 1, "non-integral matrix entry");
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

QPoly char_poly(const QMatrix& a) {
  expect(a.square(), "char_poly needs a square matrix");
  const std::size_t n = a.rows();
  if (n == 0) return QPoly(Rational(1));
  // c holds coefficients of the leading principal block, highest degree first
  std::vector<Rational> c{Rational(1), Rational(-a(0, 0))};
  for (std::size_t r = 1; r < n; ++r) {
    std::vector<Rational> q(r + 2);
    q[0] = 1;
    q[1] = -a(r, r);
    std::vector<Rational> v(r);
    for (std::size_t i = 0; i < r; ++i) v[i] = a(i, r);
    for (std::size_t k = 0; k < r; ++k) {
      Rational dot = 0;
      for (std::size_t i = 0; i < r; ++i) dot += a(r, i) * v[i];
      q[k + 2] = -dot;
      std::vector<Rational> w(r, Rational(0));
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) w[i] += a(i, j) * v[j];
      v.swap(w);
    }
    std::vector<Rational> nc(r + 2, Rational(0));
    for (std::size_t i = 0; i < r + 2; ++i)
      for (std::size_t j = 0; j <= std::min(i, r); ++j) nc[i] += q[i - j] * c[j];
    c.swap(nc);
  }
  QPoly p;
  for (std::size_t i = 0; i <= n; ++i) p.add_term(static_cast<long>(n - i), c[i]);
  return p;
}

QPoly char_poly(const ZMatrix& m) { return char_poly(to_q(m)); }

QPoly det_one_minus_tM(const QMatrix& m) {
  QPoly cp = char_poly(m);
  const long n = static_cast<long>(m.rows());
  QPoly r;
  for (const auto& [e, c] : cp.terms()) r.add_term(n - e, c);
  return r;
}

namespace {

QPoly cofactor_det(const Matrix<QPoly>& m) {
  const std::size_t n = m.rows();
  if (n == 0) return QPoly(Rational(1));
  if (n == 1) return m(0, 0);
  QPoly acc;
  for (std::size_t j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    Matrix<QPoly> minor(n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, kk = 0; k < n; ++k)
        if (k != j) minor(i - 1, kk++) = m(i, k);
    QPoly term = m(0, j) * cofactor_det(minor);
    if (j % 2) acc -= term; else acc += term;
  }
  return acc;
}

} // namespace

ReversalCheck reversal_identity_check(const QMatrix& m) {
  expect(m.square(), "reversal check needs a square matrix");
  ReversalCheck out;
  if (sgn(determinant(m)) == 0) {
    out.vacuous = true;
    return out;
  }
  const std::size_t n = m.rows();
  Matrix<QPoly> a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = QPoly::monomial(Rational(-m(i, j)), 1);
      if (i == j) a(i, j) += QPoly(Rational(1));
    }
  QPoly lhs = cofactor_det(a);
  QPoly rev = char_poly(m).reflected();
  out.holds = doteq(lhs, rev);
  return out;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && sgn(m(p, col)) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(row, p);
    Rational inv = 1 / m(row, col);
    for (std::size_t j = 0; j < m.cols(); ++j) m(row, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || sgn(m(i, col)) == 0) continue;
      Rational f = m(i, col);
      for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

} // namespace

Rational determinant(QMatrix m) {
  expect(m.square(), "determinant needs a square matrix");
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && sgn(m(p, c)) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      m.swap_rows(p, c);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

std::size_t rank(QMatrix m) { return rref(m).size(); }

QMatrix inverse(const QMatrix& m) {
  expect(m.square(), "inverse needs a square matrix");
  const std::size_t n = m.rows();
  QMatrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  require(piv.size() == n && (n == 0 || piv.back() == n - 1), "matrix is singular");
  QMatrix r(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
  return r;
}

QMatrix kernel_basis(const QMatrix& m) {
  QMatrix r = m;
  auto piv = rref(r);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto p : piv) is_piv[p] = true;
  std::vector<std::size_t> free;
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (!is_piv[j]) free.push_back(j);
  QMatrix k(m.cols(), free.size());
  for (std::size_t f = 0; f < free.size(); ++f) {
    k(free[f], f) = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) k(piv[i], f) = -r(i, free[f]);
  }
  return k;
}

QMatrix solve_full_column_rank(const QMatrix& a, const QMatrix& b) {
  expect(a.rows() == b.rows(), "solve dimension mismatch");
  const std::size_t n = a.cols(), m = b.cols();
  QMatrix aug(a.rows(), n + m);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    for (std::size_t j = 0; j < m; ++j) aug(i, n + j) = b(i, j);
  }
  auto piv = rref(aug);
  std::size_t lhs_pivots = 0;
  for (auto p : piv) {
    expect(p < n, "inconsistent linear system");
    ++lhs_pivots;
  }
  expect(lhs_pivots == n, "coefficient matrix lacks full column rank");
  QMatrix x(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j) x(i, j) = aug(i, n + j);
  return x;
}

QMatrix kron(const QMatrix& a, const QMatrix& b) {
  QMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return r;
}

SmithForm smith_normal_form(const ZMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  SmithForm s{z_identity(R), m, z_identity(C), 0};
  ZMatrix& D = s.D;
  auto row_add = [&](std::size_t dst, std::size_t src, const Integer& q) {  // row_dst -= q row_src
    for (std::size_t j = 0; j < C; ++j) D(dst, j) -= q * D(src, j);
    for (std::size_t j = 0; j < R; ++j) s.U(dst, j) -= q * s.U(src, j);
  };
  auto col_add = [&](std::size_t dst, std::size_t src, const Integer& q) {  // col_dst -= q col_src
    for (std::size_t i = 0; i < R; ++i) D(i, dst) -= q * D(i, src);
    for (std::size_t i = 0; i < C; ++i) s.V(i, dst) -= q * s.V(i, src);
  };
  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    // pivot: smallest nonzero magnitude in the trailing block
    std::size_t pi = R, pj = C;
    for (std::size_t i = t; i < R; ++i)
      for (std::size_t j = t; j < C; ++j)
        if (D(i, j) != 0 && (pi == R || abs(D(i, j)) < abs(D(pi, pj)))) pi = i, pj = j;
    if (pi == R) break;
    for (;;) {
      D.swap_rows(t, pi);
      s.U.swap_rows(t, pi);
      D.swap_cols(t, pj);
      s.V.swap_cols(t, pj);
      bool done = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (D(i, t) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), D(i, t).get_mpz_t(), D(t, t).get_mpz_t());
        row_add(i, t, q);
        if (D(i, t) != 0) done = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (D(t, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), D(t, j).get_mpz_t(), D(t, t).get_mpz_t());
        col_add(j, t, q);
        if (D(t, j) != 0) done = false;
      }
      pi = t;
      pj = t;
      if (!done) {
        for (std::size_t i = t + 1; i < R; ++i)
          if (D(i, t) != 0 && abs(D(i, t)) < abs(D(pi, pj))) pi = i, pj = t;
        for (std::size_t j = t + 1; j < C; ++j)
          if (D(t, j) != 0 && abs(D(t, j)) < abs(D(pi, pj))) pi = t, pj = j;
        continue;
      }
      // divisibility: fold an offending row into the pivot row and repeat
      std::size_t bad = R;
      for (std::size_t i = t + 1; i < R && bad == R; ++i)
        for (std::size_t j = t + 1; j < C; ++j)
          if (D(i, j) % D(t, t) != 0) { bad = i; break; }
      if (bad == R) break;
      row_add(t, bad, Integer(-1));
    }
    if (D(t, t) < 0) {
      for (std::size_t j = 0; j < C; ++j) D(t, j) = -D(t, j);
      for (std::size_t j = 0; j < R; ++j) s.U(t, j) = -s.U(t, j);
    }
    ++s.rank;
  }
  return s;
}

ZMatrix integer_kernel_basis(const ZMatrix& m) {
  SmithForm s = smith_normal_form(m);
  const std::size_t C = m.cols();
  ZMatrix k(C, C - s.rank);
  for (std::size_t j = s.rank; j < C; ++j)
    for (std::size_t i = 0; i < C; ++i) k(i, j - s.rank) = s.V(i, j);
  return k;
}

ZMatrix lattice_basis(const ZMatrix& g) {
  // columns of g generate L; with U g V = D, L = U^{-1} D Z^c, so the
  // nonzero columns of U^{-1} D form a basis.
  SmithForm s = smith_normal_form(g);
  QMatrix uinv = inverse(to_q(s.U));
  ZMatrix ui = to_z(uinv);
  ZMatrix b(g.rows(), s.rank);
  for (std::size_t j = 0; j < s.rank; ++j)
    for (std::size_t i = 0; i < g.rows(); ++i) b(i, j) = ui(i, j) * s.D(j, j);
  return b;
}

} // namespace fbc
