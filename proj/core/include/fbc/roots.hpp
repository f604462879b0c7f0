#pragma once

#include <vector>

#include "fbc/laurent.hpp"

namespace fbc {

/// A disc known to contain exactly one root (counted with multiplicity in the
/// sense that repeated roots appear as repeated discs).
struct RootDisc {
  long double re = 0, im = 0;
  long double radius = 0;  // rigorous upper bound
};

struct RootIsolation {
  bool certified = false;
  std::vector<RootDisc> roots;
};

/// Numerical roots with rigorous inclusion discs (Braess-Hadeler radii checked
/// in exact arithmetic). p must be a genuine polynomial of degree >= 1.
RootIsolation isolate_roots(const QPoly& p);

struct UnitCircleCount {
  int inside = 0;
  int outside = 0;
  int uncertain = 0;  // on or too close to |z| = 1 to decide
};
UnitCircleCount unit_circle_count(const QPoly& p);

/// Exactly one root of modulus > 1 (with multiplicity), all others of modulus < 1.
bool pv_check(const QPoly& p);

struct ModulusBound {
  long double value = 0, lower = 0, upper = 0;
  bool certified = false;
};
/// Largest root modulus of p with a certified enclosure.
ModulusBound max_root_modulus(const QPoly& p);

} // namespace fbc
