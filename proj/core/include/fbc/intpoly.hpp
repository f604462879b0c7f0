#pragma once

#include <vector>

#include "fbc/laurent.hpp"

namespace fbc {

/// Dense integer polynomial, ascending coefficients, no trailing zeros.
using ZPoly = std::vector<Integer>;

/// Clears denominators and content; p must have no negative powers.
ZPoly primitive_part(const QPoly& p);
QPoly to_qpoly(const ZPoly& p);

/// Irreducibility over Q by modular factorization, Hensel lifting and
/// factor recombination. Constants are not irreducible.
bool is_irreducible_over_q(const QPoly& p);

/// Degrees of the irreducible factors of p modulo the prime q, counted with
/// multiplicity; p must be squarefree modulo q with nonzero leading coefficient.
std::vector<int> factor_degrees_mod(const ZPoly& p, unsigned q);

} // namespace fbc
