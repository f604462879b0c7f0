#pragma once

#include <utility>
#include <vector>

#include "fbc/graphmap.hpp"

namespace fbc {

// Directed multigraphs ---------------------------------------------------------

struct Digraph {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;  // (from, to), repeated for multiplicity
};

/// a(i, j) parallel edges from i to j; a must be square and nonnegative.
Digraph digraph_of_matrix(const ZMatrix& a);
ZMatrix adjacency_matrix(const Digraph& d);
/// Strongly connected and carrying at least one edge.
bool is_irreducible(const Digraph& d);

/// Vertex v lifts to v and v + n; special edges switch sheets.
Digraph double_cover(const Digraph& d, const std::vector<bool>& special);

struct CoverClassification {
  enum class Kind { Irreducible, TwoCopies } kind = Kind::Irreducible;
  long double pf_base = 0;
  long double pf_cover = 0;  // Irreducible only
  /// TwoCopies: for each component, the base vertex -> cover vertex isomorphism.
  std::vector<std::vector<int>> isomorphisms;
};

/// InputError when `cover` is not a two-sheeted cover of `base` under v -> v mod n.
CoverClassification classify_cover(const Digraph& base, const Digraph& cover, long double tol = 1e-12L);

// Graphs of groups for universal Coxeter groups --------------------------------

/// Letter 0 in a path is the nontrivial element of the current vertex group.
inline constexpr int kFlip = 0;

struct CoxeterGraph {
  Graph graph;                 // a tree
  std::vector<bool> essential;  // per vertex: carries Z/2
  int rank() const;             // number of essential vertices
};

struct CoxeterGraphMap {
  CoxeterGraph domain;
  std::vector<int> vertex_map;
  std::vector<EdgePath> images;  // may contain kFlip at essential vertices
};

void validate(const CoxeterGraph& g);
void validate(const CoxeterGraphMap& g);

/// Cancels e e^-1 and adjacent flip pairs.
EdgePath tighten(const EdgePath& p);
/// Image of a path with flips carried to flips; not tightened.
EdgePath map_path(const CoxeterGraphMap& g, const EdgePath& p);
/// (f o g) with tightened images; both maps live on the same graph of groups.
CoxeterGraphMap compose(const CoxeterGraphMap& f, const CoxeterGraphMap& g);
CoxeterGraphMap identity_map(const CoxeterGraph& g);

/// Occurrences of each edge in each image, flips ignored.
ZMatrix incidence_matrix(const CoxeterGraphMap& g);

/// Lift to the double along essential vertices: a graph of rank n - 1 whose
/// fundamental group is the index-two free subgroup.
GraphMap free_double_representative(const CoxeterGraphMap& g);

struct CoxeterStretch {
  long double base = 0;     // from the strata of the graph-of-groups map
  long double doubled = 0;  // stretch_factor of the free double
};
/// ContractError when the two values differ by more than tol.
CoxeterStretch coxeter_stretch(const CoxeterGraphMap& g, long double tol = 1e-9L);

} // namespace fbc
