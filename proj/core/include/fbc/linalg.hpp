#pragma once

#include <vector>

#include "fbc/laurent.hpp"
#include "fbc/matrix.hpp"
#include "fbc/rational.hpp"

namespace fbc {

using QMatrix = Matrix<Rational>;
using ZMatrix = Matrix<Integer>;

QMatrix q_identity(std::size_t n);
ZMatrix z_identity(std::size_t n);
QMatrix to_q(const ZMatrix& m);
/// Throws ContractError if any entry is not integral.
ZMatrix to_z(const QMatrix& m);

/// Monic det(tI - M), division-free (Berkowitz).
QPoly char_poly(const QMatrix& m);
QPoly char_poly(const ZMatrix& m);
/// det(I - tM), the coefficient reversal of char_poly.
QPoly det_one_minus_tM(const QMatrix& m);

struct ReversalCheck {
  bool holds = true;
  bool vacuous = false;  // M singular: precondition fails, nothing checked
};
/// det(I - tM) against the reversal of char_poly(M) computed by cofactor
/// expansion over Q[t], independent of Berkowitz.
ReversalCheck reversal_identity_check(const QMatrix& m);

Rational determinant(QMatrix m);
std::size_t rank(QMatrix m);
QMatrix inverse(const QMatrix& m);
/// Columns span the right kernel.
QMatrix kernel_basis(const QMatrix& m);
/// Solves A X = B exactly for A of full column rank; throws ContractError if inconsistent.
QMatrix solve_full_column_rank(const QMatrix& a, const QMatrix& b);

QMatrix kron(const QMatrix& a, const QMatrix& b);
template <class T>
Matrix<T> mat_pow(const Matrix<T>& m, unsigned k, const T& zero, const T& one) {
  Matrix<T> acc = Matrix<T>::identity(m.rows(), zero, one), base = m;
  while (k) {
    if (k & 1) acc = acc * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return acc;
}

struct SmithForm {
  ZMatrix U, D, V;  // U * M * V = D
  std::size_t rank = 0;
};
SmithForm smith_normal_form(const ZMatrix& m);

/// Z-basis (as columns) of the saturated integer kernel of m.
ZMatrix integer_kernel_basis(const ZMatrix& m);

/// Z-basis of the lattice spanned by the given integer column vectors.
ZMatrix lattice_basis(const ZMatrix& generators);

} // namespace fbc
