#pragma once

#include <vector>

#include "fbc/freegroup.hpp"
#include "fbc/linalg.hpp"

namespace fbc {

/// Signed edge letters: +(k+1) traverses edge k forwards, -(k+1) backwards.
using EdgePath = std::vector<int>;

struct GraphEdge {
  int id = 0;    // external id (positive)
  int from = 0;  // vertex index
  int to = 0;
};

struct Graph {
  std::vector<int> vertex_ids;  // external ids, indexed by vertex index
  std::vector<GraphEdge> edges;

  std::size_t num_vertices() const { return vertex_ids.size(); }
  std::size_t num_edges() const { return edges.size(); }
  int path_start(int letter) const;
  int path_end(int letter) const;
  /// First Betti number; the graph must be connected.
  int rank() const;
  bool connected() const;
};

struct GraphMap {
  Graph graph;
  std::vector<int> vertex_map;       // vertex index -> vertex index
  std::vector<EdgePath> images;      // edge index -> path
};

/// Throws InputError describing the first violated invariant.
void validate(const GraphMap& g);

GraphMap rose_representative(const FreeEndo& e);

/// a(i, j) = occurrences of edge j (either direction) in f(e_i).
ZMatrix incidence_matrix(const GraphMap& g);

struct PFResult {
  long double lambda = 0;
  long double lower = 0;
  long double upper = 0;
  bool exact = false;
};

bool is_irreducible_matrix(const ZMatrix& a);
bool is_permutation_matrix(const ZMatrix& a);
/// Spectral radius of an irreducible nonnegative matrix with Collatz-Wielandt bounds.
PFResult pf_eigenvalue(const ZMatrix& a, long double tol = 1e-9L);

/// Strongly connected components of i -> j iff a(i, j) > 0, sinks first.
std::vector<std::vector<int>> strong_components(const ZMatrix& a);

struct Stratum {
  std::vector<int> edges;
  bool zero = false;
  PFResult pf;  // meaningful when !zero
};

struct Filtration {
  std::vector<Stratum> strata;  // each prefix union is invariant
  bool irreducible() const { return strata.size() == 1 && !strata[0].zero; }
};

Filtration maximal_filtration(const GraphMap& g, long double tol = 1e-12L);
long double stretch_factor(const GraphMap& g, long double tol = 1e-12L);

/// Every turn crossed by an edge image is legal.
bool is_train_track(const GraphMap& g);

/// Collapse invariant forests, remove valence-one hairs and valence-two vertices.
GraphMap simplify(const GraphMap& g);

struct SpanningTree {
  int base = 0;
  std::vector<EdgePath> gamma;  // tree path from base to each vertex
  std::vector<int> generator;   // edge index -> free generator (1-based) or 0 for tree edges
  int rank = 0;
};

SpanningTree spanning_tree(const Graph& g, int base = 0);
/// The word in the non-tree generators spelled by a path (tree edges dropped).
Letters read_path(const SpanningTree& t, const EdgePath& p);
/// Image path, concatenated without tightening.
EdgePath map_path(const GraphMap& g, const EdgePath& p);

/// Automorphism of pi_1(Gamma, base) induced by g.
FreeEndo induced_automorphism(const GraphMap& g);

struct Presentation {
  int generators = 0;  // the last generator is the stable letter t
  std::vector<Letters> relators;
};
/// <x_1..x_r, t | t x_i t^{-1} Phi(x_i)^{-1}>
Presentation mapping_torus_presentation(const GraphMap& g);

// Periodic points ------------------------------------------------------------

struct FixedPointCounts {
  int period = 1;
  bool degenerate = false;          // some edge maps onto itself by the identity
  std::vector<long> crossings;      // occurrences of +-e in f^m(e)
  std::vector<long> interior;       // isolated interior fixed points on e
  std::vector<int> fixed_vertices;  // vertex indices
};

/// Default cap on symbolic path length.
inline constexpr long kDefaultPathCap = 10000000;

FixedPointCounts fixed_point_counts(const GraphMap& g, int m, long max_len = kDefaultPathCap);

struct PeriodicPoint {
  bool is_vertex = false;
  int vertex = -1;
  int edge = -1;         // edge index for interior points
  long position = -1;    // piece of f^m(edge) crossing the edge
  Rational coordinate;   // position along the edge in [0, 1]
  int index = 0;
  Letters cd_word;       // over generators 1..r and t = r + 1, when requested
  int cd_element = -1;   // image of the cd word in the quotient, when given
};

struct OrbitDatum {
  int period = 1;
  std::size_t representative = 0;  // into PeriodicData::points
  std::vector<std::size_t> members;
  int index = 0;                   // pointwise index, equal along the orbit
  Letters cd_word;                 // of the representative
  int cd_element = -1;
};

struct PeriodicData {
  int period = 1;
  int rank = 0;
  std::vector<PeriodicPoint> points;
  std::vector<std::size_t> image;  // f acting on points
  std::vector<OrbitDatum> orbits;
};

class EnumeratedGroup;

struct PeriodicOptions {
  long max_len = kDefaultPathCap;
  /// Explicit cd words cost time quadratic in the number of points.
  bool cd_words = true;
  /// When set, cd words are also evaluated in this quotient of the mapping torus.
  const EnumeratedGroup* quotient = nullptr;
};

/// Throws DegenerateInput when some fixed set of f^m is not isolated.
PeriodicData periodic_points(const GraphMap& g, int m, const PeriodicOptions& opt);
PeriodicData periodic_points(const GraphMap& g, int m, long max_len = kDefaultPathCap);
std::vector<OrbitDatum> periodic_orbits(const GraphMap& g, int m, long max_len = kDefaultPathCap);

} // namespace fbc
