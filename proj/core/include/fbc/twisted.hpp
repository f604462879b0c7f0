#pragma once

#include <utility>
#include <vector>

#include "fbc/freegroup.hpp"
#include "fbc/graphmap.hpp"
#include "fbc/laurent.hpp"
#include "fbc/permgroup.hpp"

namespace fbc {

/// F_n x|_Phi Z with generators a_1..a_n and stable letter t = a_{n+1}.
struct FbcGroup {
  FreeEndo monodromy;

  explicit FbcGroup(FreeEndo phi);
  int rank() const { return monodromy.rank; }
  /// Relators t a_i t^-1 Phi(a_i)^-1.
  Presentation presentation() const;
};

/// Enumerates the image of q and checks every relator of p maps to the identity.
EnumeratedGroup validate_quotient(const Presentation& p, const FiniteQuotient& q,
                                  std::size_t order_bound = 100000);
EnumeratedGroup validate_quotient(const FbcGroup& g, const FiniteQuotient& q,
                                  std::size_t order_bound = 100000);

/// A validated quotient together with a representation of it.
struct Twist {
  EnumeratedGroup group;
  GroupRep rep;
};
Twist make_twist(const FbcGroup& g, const FiniteQuotient& q, const Representation& r);
Twist untwisted(const FbcGroup& g);

QPoly delta0(const FbcGroup& g, const Twist& tw);
/// Order of the Fox presentation matrix of the twisted first homology.
QPoly delta1_fox(const FbcGroup& g, const Twist& tw);
/// det(I - t psi) for the monodromy action on H_1 of the fibre.
QPoly delta1_charpoly(const FbcGroup& g, const Twist& tw);

/// Delta_1 / Delta_0 in lowest terms, both normalized to constant term 1.
struct Torsion {
  QPoly num, den;
};
Torsion torsion_ratio(const QPoly& delta1, const QPoly& delta0);
Torsion reidemeister_torsion(const FbcGroup& g, const Twist& tw);
std::vector<Rational> torsion_series(const Torsion& tau, int degree);

/// The pair {Delta, star Delta} sorted canonically, with the normalized product.
struct DeltaPair {
  QPoly first, second, product;
};
DeltaPair delta_pair(const QPoly& delta);

int fibre_rank(const FbcGroup& g);
int b1_mapping_torus(const FbcGroup& g);

struct RealPair {
  long double first = 0, second = 0;  // first <= second
  bool certified = false;
};
/// Spectral radii of the H_1 actions of Phi and Phi^-1.
RealPair homological_stretch(const FbcGroup& g);

/// Sum over isolated points of Fix(f^m) of index * zeta(cd word); zeta is
/// indexed by group element and q must be a quotient of the mapping torus.
Rational lefschetz_number(const GraphMap& g, int m, const EnumeratedGroup& q,
                          const std::vector<Rational>& zeta);
Rational lefschetz_number(const GraphMap& g, int m, const FiniteQuotient& q,
                          const std::vector<Rational>& zeta);
int nielsen_lower_bound(const GraphMap& g, int m, const FiniteQuotient& q);

} // namespace fbc
