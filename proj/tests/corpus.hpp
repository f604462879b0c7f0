#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fbc/coxeter.hpp"
#include "fbc/fingerprint.hpp"

namespace fbc::testkit {

/// Small permutation groups used as quotient targets.
struct SmallGroup {
  std::string name;
  int degree = 1;
  std::vector<Perm> elements;
};
const std::vector<SmallGroup>& small_groups();

/// A representation of the full symmetric group on the quotient's points,
/// restricted to whatever subgroup the quotient hits.
struct NamedRep {
  std::string name;
  int dim = 1;
  std::function<QMatrix(const Perm&)> of;
};
std::vector<NamedRep> reps_for_degree(int degree);
Representation rep_on(const FiniteQuotient& q, const NamedRep& r);

/// Surjections of G onto the group, in a seed-dependent order.
std::vector<FiniteQuotient> find_quotients(const FbcGroup& g, const SmallGroup& target, std::size_t limit,
                                           std::uint64_t seed);

struct TwistedCase {
  NielsenWord word;
  FreeEndo phi;
  std::string group, rep_name;
  FiniteQuotient quotient;
  Representation rep;
};
/// Random automorphisms of F_2 and F_3 (Nielsen length <= 8) with quotients of
/// order <= 12 and representations of dimension <= 3.
std::vector<TwistedCase> twisted_corpus(std::size_t target, std::uint64_t seed);

/// Quotient and representation data for the inverse monodromy: t goes to t^-1.
FiniteQuotient inverse_quotient(const FiniteQuotient& q);
Representation inverse_rep(const Representation& r);

/// Words in swaps and multiplications only, so rose images stay positive.
NielsenWord positive_word(int n, int length, std::uint64_t seed, std::uint64_t stream);
/// Automorphisms whose rose is an expanding irreducible train track.
std::vector<NielsenWord> expanding_train_tracks(std::size_t count, std::uint64_t seed);

/// Star graph of groups: inessential centre 0 and essential leaves 1..n.
CoxeterGraph coxeter_star(int n);
/// x_i -> x_j x_i x_j realised on the star.
CoxeterGraphMap partial_conjugation(const CoxeterGraph& star, int i, int j);
/// Leaf permutation on the star (perm[i-1] is the image of leaf i).
CoxeterGraphMap leaf_permutation(const CoxeterGraph& star, const std::vector<int>& perm);

} // namespace fbc::testkit
