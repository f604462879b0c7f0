#include "fbc/coxeter.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace fbc {

Digraph digraph_of_matrix(const ZMatrix& a) {
  require(a.square(), "digraph matrix must be square");
  Digraph d;
  d.vertices = static_cast<int>(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      require(a(i, j) >= 0, "digraph matrix entries must be nonnegative");
      for (long k = 0; k < a(i, j).get_si(); ++k) d.edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
  return d;
}

ZMatrix adjacency_matrix(const Digraph& d) {
  require(d.vertices >= 0, "negative vertex count");
  const std::size_t n = static_cast<std::size_t>(d.vertices);
  ZMatrix a(n, n, Integer(0));
  for (const auto& [u, v] : d.edges) {
    require(u >= 0 && u < d.vertices && v >= 0 && v < d.vertices, "digraph edge endpoint out of range");
    a(static_cast<std::size_t>(u), static_cast<std::size_t>(v)) += 1;
  }
  return a;
}

bool is_irreducible(const Digraph& d) {
  if (d.vertices == 0 || d.edges.empty()) return false;
  return is_irreducible_matrix(adjacency_matrix(d));
}

Digraph double_cover(const Digraph& d, const std::vector<bool>& special) {
  require(special.size() == d.edges.size(), "special-edge flags must match the edge list");
  const int n = d.vertices;
  Digraph c;
  c.vertices = 2 * n;
  for (std::size_t k = 0; k < d.edges.size(); ++k) {
    const auto [u, v] = d.edges[k];
    require(u >= 0 && u < n && v >= 0 && v < n, "digraph edge endpoint out of range");
    const int shift = special[k] ? n : 0;
    c.edges.emplace_back(u, v + shift);
    c.edges.emplace_back(u + n, (v + n + shift) % (2 * n));
  }
  return c;
}

namespace {

long double pf_of(const ZMatrix& a, long double tol) {
  return pf_eigenvalue(a, tol).lambda;
}

} // namespace

CoverClassification classify_cover(const Digraph& base, const Digraph& cover, long double tol) {
  require(is_irreducible(base), "base digraph must be irreducible");
  const int n = base.vertices;
  require(cover.vertices == 2 * n, "cover must have twice as many vertices as the base");
  const ZMatrix a = adjacency_matrix(base);
  const ZMatrix c = adjacency_matrix(cover);
  for (int u = 0; u < 2 * n; ++u)
    for (int j = 0; j < n; ++j) {
      Integer out = c(static_cast<std::size_t>(u), static_cast<std::size_t>(j)) +
                    c(static_cast<std::size_t>(u), static_cast<std::size_t>(j + n));
      require(out == a(static_cast<std::size_t>(u % n), static_cast<std::size_t>(j)),
              "cover violates the covering relation at vertex " + std::to_string(u));
    }

  CoverClassification r;
  r.pf_base = pf_of(a, tol);
  if (is_irreducible_matrix(c)) {
    r.kind = CoverClassification::Kind::Irreducible;
    r.pf_cover = pf_of(c, tol);
    return r;
  }
  // Undirected components of the cover.
  std::vector<int> comp(static_cast<std::size_t>(2 * n), -1);
  int ncomp = 0;
  for (int s = 0; s < 2 * n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<int> stack{s};
    comp[static_cast<std::size_t>(s)] = ncomp;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < 2 * n; ++v)
        if ((c(static_cast<std::size_t>(u), static_cast<std::size_t>(v)) > 0 ||
             c(static_cast<std::size_t>(v), static_cast<std::size_t>(u)) > 0) &&
            comp[static_cast<std::size_t>(v)] < 0) {
          comp[static_cast<std::size_t>(v)] = ncomp;
          stack.push_back(v);
        }
    }
    ++ncomp;
  }
  expect(ncomp == 2, "reducible double cover of an irreducible digraph must split in two");
  r.kind = CoverClassification::Kind::TwoCopies;
  r.isomorphisms.assign(2, std::vector<int>(static_cast<std::size_t>(n), -1));
  for (int u = 0; u < 2 * n; ++u) {
    int& slot = r.isomorphisms[static_cast<std::size_t>(comp[static_cast<std::size_t>(u)])][static_cast<std::size_t>(u % n)];
    expect(slot < 0, "component contains two lifts of one vertex");
    slot = u;
  }
  for (const auto& iso : r.isomorphisms)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        expect(c(static_cast<std::size_t>(iso[static_cast<std::size_t>(i)]), static_cast<std::size_t>(iso[static_cast<std::size_t>(j)])) ==
                   a(static_cast<std::size_t>(i), static_cast<std::size_t>(j)),
               "component is not isomorphic to the base");
  return r;
}

// Graphs of groups -------------------------------------------------------------

int CoxeterGraph::rank() const {
  return static_cast<int>(std::count(essential.begin(), essential.end(), true));
}

void validate(const CoxeterGraph& g) {
  GraphMap probe;
  probe.graph = g.graph;
  probe.vertex_map.resize(g.graph.num_vertices());
  std::iota(probe.vertex_map.begin(), probe.vertex_map.end(), 0);
  for (std::size_t k = 0; k < g.graph.num_edges(); ++k) probe.images.push_back({static_cast<int>(k) + 1});
  validate(probe);
  require(g.graph.num_edges() + 1 == g.graph.num_vertices(), "underlying graph of a Coxeter graph of groups must be a tree");
  require(g.essential.size() == g.graph.num_vertices(), "essential flags must cover every vertex");
  require(g.rank() >= 2, "need at least two essential vertices");
}

namespace {

/// Walks a path with flips, checking it is well formed; returns the end vertex.
int walk(const CoxeterGraph& cg, int start, const EdgePath& p, const std::string& where) {
  const Graph& G = cg.graph;
  const int E = static_cast<int>(G.num_edges());
  int at = start;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const int l = p[i];
    if (l == kFlip) {
      require(cg.essential[static_cast<std::size_t>(at)], where + " flips at an inessential vertex");
      require(i == 0 || p[i - 1] != kFlip, where + " has adjacent flips");
      continue;
    }
    require(std::abs(l) <= E, where + " uses an unknown edge");
    require(G.path_start(l) == at, where + " is not a connected path");
    require(i == 0 || p[i - 1] != -l, where + " backtracks");
    at = G.path_end(l);
  }
  return at;
}

} // namespace

void validate(const CoxeterGraphMap& g) {
  validate(g.domain);
  const CoxeterGraph& cg = g.domain;
  const std::size_t V = cg.graph.num_vertices();
  require(g.vertex_map.size() == V, "vertex map must cover every vertex");
  for (std::size_t v = 0; v < V; ++v) {
    const int w = g.vertex_map[v];
    require(w >= 0 && static_cast<std::size_t>(w) < V, "vertex map target out of range");
    if (cg.essential[v]) require(cg.essential[static_cast<std::size_t>(w)], "essential vertex must map to an essential vertex");
  }
  require(g.images.size() == cg.graph.num_edges(), "every edge needs an image");
  for (std::size_t k = 0; k < g.images.size(); ++k) {
    const auto& p = g.images[k];
    const auto& e = cg.graph.edges[k];
    const std::string where = "image of edge " + std::to_string(e.id);
    require(std::any_of(p.begin(), p.end(), [](int l) { return l != kFlip; }), where + " is empty");
    const int end = walk(cg, g.vertex_map[static_cast<std::size_t>(e.from)], p, where);
    require(end == g.vertex_map[static_cast<std::size_t>(e.to)], where + " does not match the vertex map");
  }
}

EdgePath tighten(const EdgePath& p) {
  EdgePath out;
  for (int l : p) {
    if (!out.empty() && ((l == kFlip && out.back() == kFlip) || (l != kFlip && out.back() == -l)))
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

EdgePath map_path(const CoxeterGraphMap& g, const EdgePath& p) {
  EdgePath out;
  for (int l : p) {
    if (l == kFlip) {
      out.push_back(kFlip);
      continue;
    }
    const EdgePath& img = g.images[static_cast<std::size_t>(std::abs(l) - 1)];
    if (l > 0) {
      out.insert(out.end(), img.begin(), img.end());
    } else {
      for (auto it = img.rbegin(); it != img.rend(); ++it) out.push_back(-*it);
    }
  }
  return out;
}

CoxeterGraphMap compose(const CoxeterGraphMap& f, const CoxeterGraphMap& g) {
  require(f.domain.graph.num_edges() == g.domain.graph.num_edges() &&
              f.domain.essential == g.domain.essential,
          "composed maps must share a graph of groups");
  CoxeterGraphMap h;
  h.domain = g.domain;
  for (int v : g.vertex_map) h.vertex_map.push_back(f.vertex_map[static_cast<std::size_t>(v)]);
  for (const auto& img : g.images) h.images.push_back(tighten(map_path(f, img)));
  validate(h);
  return h;
}

CoxeterGraphMap identity_map(const CoxeterGraph& g) {
  CoxeterGraphMap h;
  h.domain = g;
  h.vertex_map.resize(g.graph.num_vertices());
  std::iota(h.vertex_map.begin(), h.vertex_map.end(), 0);
  for (std::size_t k = 0; k < g.graph.num_edges(); ++k) h.images.push_back({static_cast<int>(k) + 1});
  return h;
}

ZMatrix incidence_matrix(const CoxeterGraphMap& g) {
  const std::size_t E = g.domain.graph.num_edges();
  ZMatrix a(E, E, Integer(0));
  for (std::size_t i = 0; i < E; ++i)
    for (int l : g.images[i])
      if (l != kFlip) a(i, static_cast<std::size_t>(std::abs(l) - 1)) += 1;
  return a;
}

GraphMap free_double_representative(const CoxeterGraphMap& g) {
  validate(g);
  const CoxeterGraph& cg = g.domain;
  const Graph& G = cg.graph;
  const int V = static_cast<int>(G.num_vertices());
  const int E = static_cast<int>(G.num_edges());

  // Vertex copies: essential vertices are shared by both sheets.
  std::vector<std::array<int, 2>> lift(static_cast<std::size_t>(V));
  GraphMap d;
  const int vshift = *std::max_element(G.vertex_ids.begin(), G.vertex_ids.end()) + 1;
  for (int s = 0; s < 2; ++s)
    for (int v = 0; v < V; ++v) {
      if (s == 1 && cg.essential[static_cast<std::size_t>(v)]) {
        lift[static_cast<std::size_t>(v)][1] = lift[static_cast<std::size_t>(v)][0];
        continue;
      }
      lift[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)] = static_cast<int>(d.graph.vertex_ids.size());
      d.graph.vertex_ids.push_back(G.vertex_ids[static_cast<std::size_t>(v)] + s * vshift);
    }
  int eshift = 0;
  for (const auto& e : G.edges) eshift = std::max(eshift, e.id);
  for (int s = 0; s < 2; ++s)
    for (const auto& e : G.edges)
      d.graph.edges.push_back({e.id + s * eshift, lift[static_cast<std::size_t>(e.from)][static_cast<std::size_t>(s)],
                               lift[static_cast<std::size_t>(e.to)][static_cast<std::size_t>(s)]});

  // Sheet offset of f along the tree path from vertex 0.
  std::vector<int> offset(static_cast<std::size_t>(V), -1);
  offset[0] = 0;
  for (bool grew = true; grew;) {
    grew = false;
    for (int k = 0; k < E; ++k) {
      const auto& e = G.edges[static_cast<std::size_t>(k)];
      const auto& img = g.images[static_cast<std::size_t>(k)];
      const int flips = static_cast<int>(std::count(img.begin(), img.end(), kFlip)) % 2;
      if (offset[static_cast<std::size_t>(e.from)] >= 0 && offset[static_cast<std::size_t>(e.to)] < 0) {
        offset[static_cast<std::size_t>(e.to)] = offset[static_cast<std::size_t>(e.from)] ^ flips;
        grew = true;
      } else if (offset[static_cast<std::size_t>(e.to)] >= 0 && offset[static_cast<std::size_t>(e.from)] < 0) {
        offset[static_cast<std::size_t>(e.from)] = offset[static_cast<std::size_t>(e.to)] ^ flips;
        grew = true;
      }
    }
  }

  d.vertex_map.assign(d.graph.num_vertices(), -1);
  for (int s = 0; s < 2; ++s)
    for (int v = 0; v < V; ++v) {
      const int sheet = s ^ offset[static_cast<std::size_t>(v)];
      d.vertex_map[static_cast<std::size_t>(lift[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)])] =
          lift[static_cast<std::size_t>(g.vertex_map[static_cast<std::size_t>(v)])][static_cast<std::size_t>(sheet)];
    }
  for (int s = 0; s < 2; ++s)
    for (int k = 0; k < E; ++k) {
      int sheet = s ^ offset[static_cast<std::size_t>(G.edges[static_cast<std::size_t>(k)].from)];
      EdgePath img;
      for (int l : g.images[static_cast<std::size_t>(k)]) {
        if (l == kFlip) {
          sheet ^= 1;
          continue;
        }
        const int idx = std::abs(l) + sheet * E;
        img.push_back(l > 0 ? idx : -idx);
      }
      d.images.push_back(std::move(img));
    }
  validate(d);
  expect(d.graph.rank() == cg.rank() - 1, "free double has the wrong rank");
  return d;
}

CoxeterStretch coxeter_stretch(const CoxeterGraphMap& g, long double tol) {
  validate(g);
  const ZMatrix a = incidence_matrix(g);
  CoxeterStretch out;
  out.base = 0;
  for (const auto& comp : strong_components(a)) {
    const std::size_t m = comp.size();
    ZMatrix sub(m, m, Integer(0));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        sub(i, j) = a(static_cast<std::size_t>(comp[i]), static_cast<std::size_t>(comp[j]));
    if (m == 1 && sub(0, 0) == 0) continue;
    out.base = std::max(out.base, pf_eigenvalue(sub, 1e-12L).lambda);
  }
  out.doubled = stretch_factor(free_double_representative(g));
  expect(std::fabs(out.base - out.doubled) <= tol * std::max(1.0L, out.base),
         "stretch factor of the free double differs from the base");
  return out;
}

} // namespace fbc
