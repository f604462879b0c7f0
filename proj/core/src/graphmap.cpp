#include "fbc/graphmap.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <numeric>
#include <set>

namespace fbc {

namespace {

std::size_t eidx(int letter) { return static_cast<std::size_t>(std::abs(letter) - 1); }

} // namespace

int Graph::path_start(int letter) const {
  const auto& e = edges[eidx(letter)];
  return letter > 0 ? e.from : e.to;
}

int Graph::path_end(int letter) const {
  const auto& e = edges[eidx(letter)];
  return letter > 0 ? e.to : e.from;
}

bool Graph::connected() const {
  if (vertex_ids.empty()) return false;
  std::vector<std::vector<int>> nb(num_vertices());
  for (const auto& e : edges) {
    nb[static_cast<std::size_t>(e.from)].push_back(e.to);
    nb[static_cast<std::size_t>(e.to)].push_back(e.from);
  }
  std::vector<bool> seen(num_vertices(), false);
  std::deque<int> q{0};
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : nb[static_cast<std::size_t>(v)])
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        ++count;
        q.push_back(w);
      }
  }
  return count == num_vertices();
}

int Graph::rank() const {
  return static_cast<int>(num_edges()) - static_cast<int>(num_vertices()) + 1;
}

void validate(const GraphMap& g) {
  const Graph& G = g.graph;
  const int V = static_cast<int>(G.num_vertices());
  const int E = static_cast<int>(G.num_edges());
  require(V >= 1, "graph has no vertices");
  std::set<int> ids(G.vertex_ids.begin(), G.vertex_ids.end());
  require(static_cast<int>(ids.size()) == V, "duplicate vertex id");
  std::set<int> eids;
  for (const auto& e : G.edges) {
    require(e.id > 0, "edge ids must be positive");
    require(eids.insert(e.id).second, "duplicate edge id " + std::to_string(e.id));
    require(e.from >= 0 && e.from < V && e.to >= 0 && e.to < V,
            "edge " + std::to_string(e.id) + " has a missing endpoint");
  }
  require(G.connected(), "graph is not connected");
  require(static_cast<int>(g.vertex_map.size()) == V, "vertex map must cover every vertex");
  for (int v : g.vertex_map) require(v >= 0 && v < V, "vertex map target out of range");
  require(static_cast<int>(g.images.size()) == E, "every edge needs an image");
  for (int k = 0; k < E; ++k) {
    const auto& p = g.images[static_cast<std::size_t>(k)];
    const std::string where = "image of edge " + std::to_string(G.edges[static_cast<std::size_t>(k)].id);
    require(!p.empty(), where + " is empty");
    for (int l : p) require(l != 0 && std::abs(l) <= E, where + " uses an unknown edge");
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
      require(p[i + 1] != -p[i], where + " backtracks");
      require(G.path_end(p[i]) == G.path_start(p[i + 1]), where + " is not a connected path");
    }
    const auto& e = G.edges[static_cast<std::size_t>(k)];
    require(G.path_start(p.front()) == g.vertex_map[static_cast<std::size_t>(e.from)] &&
                G.path_end(p.back()) == g.vertex_map[static_cast<std::size_t>(e.to)],
            where + " does not match the vertex map");
  }
}

GraphMap rose_representative(const FreeEndo& e) {
  require(is_automorphism(e), "monodromy is not an automorphism");
  GraphMap g;
  g.graph.vertex_ids = {0};
  g.vertex_map = {0};
  for (int i = 1; i <= e.rank; ++i) {
    g.graph.edges.push_back({i, 0, 0});
    g.images.push_back(e.images[static_cast<std::size_t>(i - 1)].letters);
  }
  return g;
}

ZMatrix incidence_matrix(const GraphMap& g) {
  const std::size_t E = g.graph.num_edges();
  ZMatrix a(E, E, Integer(0));
  for (std::size_t i = 0; i < E; ++i)
    for (int l : g.images[i]) a(i, eidx(l)) += 1;
  return a;
}

std::vector<std::vector<int>> strong_components(const ZMatrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0);
  std::vector<bool> on(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  std::vector<std::vector<int>> out;
  int counter = 0;
  std::function<void(int)> visit = [&](int v) {
    const auto sv = static_cast<std::size_t>(v);
    index[sv] = low[sv] = counter++;
    stack.push_back(v);
    on[sv] = true;
    for (int w = 0; w < n; ++w) {
      if (a(sv, static_cast<std::size_t>(w)) <= 0) continue;
      const auto sw = static_cast<std::size_t>(w);
      if (index[sw] < 0) {
        visit(w);
        low[sv] = std::min(low[sv], low[sw]);
      } else if (on[sw]) {
        low[sv] = std::min(low[sv], index[sw]);
      }
    }
    if (low[sv] == index[sv]) {
      std::vector<int> comp;
      for (;;) {
        int w = stack.back();
        stack.pop_back();
        on[static_cast<std::size_t>(w)] = false;
        comp.push_back(w);
        if (w == v) break;
      }
      std::sort(comp.begin(), comp.end());
      out.push_back(comp);
    }
  };
  for (int v = 0; v < n; ++v)
    if (index[static_cast<std::size_t>(v)] < 0) visit(v);
  return out;
}

bool is_irreducible_matrix(const ZMatrix& a) {
  if (!a.square() || a.rows() == 0) return false;
  if (a.rows() == 1) return a(0, 0) > 0;
  return strong_components(a).size() == 1;
}

bool is_permutation_matrix(const ZMatrix& a) {
  if (!a.square()) return false;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i) {
    int rs = 0, cs = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (a(i, j) < 0 || a(i, j) > 1 || a(j, i) < 0 || a(j, i) > 1) return false;
      rs += static_cast<int>(a(i, j).get_si());
      cs += static_cast<int>(a(j, i).get_si());
    }
    if (rs != 1 || cs != 1) return false;
  }
  return true;
}

PFResult pf_eigenvalue(const ZMatrix& a, long double tol) {
  expect(a.square() && a.rows() > 0, "PF eigenvalue needs a nonempty square matrix");
  for (const auto& x : a.data()) expect(x >= 0, "PF eigenvalue needs a nonnegative matrix");
  expect(is_irreducible_matrix(a), "PF eigenvalue needs an irreducible matrix");
  PFResult r;
  if (a.rows() == 1) {
    r.lambda = r.lower = r.upper = static_cast<long double>(a(0, 0).get_d());
    r.exact = true;
    return r;
  }
  if (is_permutation_matrix(a)) {
    r.lambda = r.lower = r.upper = 1;
    r.exact = true;
    return r;
  }
  const std::size_t n = a.rows();
  std::vector<long double> m(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i * n + j] = static_cast<long double>(a(i, j).get_d());
  std::vector<long double> x(n, 1.0L), y(n);
  long double lo = 0, hi = 0;
  for (long it = 0; it < 5000000; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      long double s = 0;
      for (std::size_t j = 0; j < n; ++j) s += m[i * n + j] * x[j];
      y[i] = s;
    }
    lo = INFINITY;
    hi = 0;
    for (std::size_t i = 0; i < n; ++i) {
      long double q = y[i] / x[i];
      lo = std::min(lo, q);
      hi = std::max(hi, q);
    }
    if (hi - lo <= tol * std::max<long double>(1, hi)) break;
    long double mx = 0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = y[i] + x[i];  // iterate with A + I, which is primitive
      mx = std::max(mx, x[i]);
    }
    for (auto& v : x) v /= mx;
  }
  r.lower = lo;
  r.upper = hi;
  r.lambda = (lo + hi) / 2;
  return r;
}

Filtration maximal_filtration(const GraphMap& g, long double tol) {
  ZMatrix a = incidence_matrix(g);
  Filtration f;
  for (auto& comp : strong_components(a)) {
    Stratum s;
    s.edges = comp;
    ZMatrix sub(comp.size(), comp.size());
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (std::size_t j = 0; j < comp.size(); ++j)
        sub(i, j) = a(static_cast<std::size_t>(comp[i]), static_cast<std::size_t>(comp[j]));
    s.zero = comp.size() == 1 && sub(0, 0) == 0;
    if (!s.zero) s.pf = pf_eigenvalue(sub, tol);
    f.strata.push_back(std::move(s));
  }
  return f;
}

long double stretch_factor(const GraphMap& g, long double tol) {
  long double best = 1;
  for (const auto& s : maximal_filtration(g, tol).strata)
    if (!s.zero) best = std::max(best, s.pf.lambda);
  return best;
}

bool is_train_track(const GraphMap& g) {
  const int E = static_cast<int>(g.graph.num_edges());
  // direction = letter leaving its initial vertex; Df(l) = first letter of f(l)
  auto df = [&](int l) {
    const auto& p = g.images[eidx(l)];
    return l > 0 ? p.front() : -p.back();
  };
  auto illegal = [&](int d1, int d2) {
    for (int k = 0; k <= 2 * E + 1; ++k) {
      if (d1 == d2) return true;
      d1 = df(d1);
      d2 = df(d2);
    }
    return d1 == d2;
  };
  for (const auto& p : g.images)
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      if (illegal(-p[i], p[i + 1])) return false;
  return true;
}

SpanningTree spanning_tree(const Graph& g, int base) {
  SpanningTree t;
  t.base = base;
  const std::size_t V = g.num_vertices();
  t.gamma.assign(V, {});
  t.generator.assign(g.num_edges(), 0);
  std::vector<bool> seen(V, false), tree(g.num_edges(), false);
  std::deque<int> q{base};
  seen[static_cast<std::size_t>(base)] = true;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (std::size_t k = 0; k < g.num_edges(); ++k) {
      const auto& e = g.edges[k];
      for (int dir : {1, -1}) {
        int letter = dir * static_cast<int>(k + 1);
        if (g.path_start(letter) != v) continue;
        int w = g.path_end(letter);
        if (seen[static_cast<std::size_t>(w)]) continue;
        seen[static_cast<std::size_t>(w)] = true;
        tree[k] = true;
        t.gamma[static_cast<std::size_t>(w)] = t.gamma[static_cast<std::size_t>(v)];
        t.gamma[static_cast<std::size_t>(w)].push_back(letter);
        q.push_back(w);
        (void)e;
      }
    }
  }
  int r = 0;
  for (std::size_t k = 0; k < g.num_edges(); ++k)
    if (!tree[k]) t.generator[k] = ++r;
  t.rank = r;
  return t;
}

Letters read_path(const SpanningTree& t, const EdgePath& p) {
  Letters w;
  for (int l : p) {
    int gen = t.generator[eidx(l)];
    if (!gen) continue;
    int x = l > 0 ? gen : -gen;
    if (!w.empty() && w.back() == -x) w.pop_back(); else w.push_back(x);
  }
  return w;
}

EdgePath map_path(const GraphMap& g, const EdgePath& p) {
  EdgePath out;
  for (int l : p) {
    const auto& img = g.images[eidx(l)];
    if (l > 0)
      out.insert(out.end(), img.begin(), img.end());
    else
      for (auto it = img.rbegin(); it != img.rend(); ++it) out.push_back(-*it);
  }
  return out;
}

FreeEndo induced_automorphism(const GraphMap& g) {
  SpanningTree t = spanning_tree(g.graph, 0);
  require(t.rank >= 1, "graph map on a tree has no fundamental group");
  FreeEndo e;
  e.rank = t.rank;
  e.images.resize(static_cast<std::size_t>(t.rank));
  const EdgePath& tau = t.gamma[static_cast<std::size_t>(g.vertex_map[static_cast<std::size_t>(t.base)])];
  for (std::size_t k = 0; k < g.graph.num_edges(); ++k) {
    if (!t.generator[k]) continue;
    const auto& ed = g.graph.edges[k];
    EdgePath loop = t.gamma[static_cast<std::size_t>(ed.from)];
    loop.push_back(static_cast<int>(k + 1));
    EdgePath back = t.gamma[static_cast<std::size_t>(ed.to)];
    for (auto it = back.rbegin(); it != back.rend(); ++it) loop.push_back(-*it);
    EdgePath img = tau;
    EdgePath fl = map_path(g, loop);
    img.insert(img.end(), fl.begin(), fl.end());
    for (auto it = tau.rbegin(); it != tau.rend(); ++it) img.push_back(-*it);
    e.images[static_cast<std::size_t>(t.generator[k] - 1)] = FreeWord{t.rank, read_path(t, img)};
  }
  return e;
}

Presentation mapping_torus_presentation(const GraphMap& g) {
  FreeEndo phi = induced_automorphism(g);
  Presentation p;
  p.generators = phi.rank + 1;
  const int t = phi.rank + 1;
  for (int i = 1; i <= phi.rank; ++i) {
    Letters r{t, i, -t};
    Letters inv = inverse_letters(phi.images[static_cast<std::size_t>(i - 1)].letters);
    r.insert(r.end(), inv.begin(), inv.end());
    p.relators.push_back(free_reduce(r));
  }
  return p;
}

// Simplification -------------------------------------------------------------

namespace {

bool any_empty(const std::vector<EdgePath>& imgs) {
  return std::any_of(imgs.begin(), imgs.end(), [](const EdgePath& p) { return p.empty(); });
}

// Rebuilds a map after deleting the edges in `drop` and identifying vertices
// through `vclass` (old vertex -> new vertex index, or -1 if deleted).
std::optional<GraphMap> rebuild(const GraphMap& g, const std::vector<bool>& drop,
                                const std::vector<int>& vclass, int new_vertex_count,
                                const std::vector<int>& vertex_redirect) {
  const std::size_t E = g.graph.num_edges();
  std::vector<int> renum(E, 0);
  GraphMap out;
  for (int v = 0; v < new_vertex_count; ++v) out.graph.vertex_ids.push_back(0);
  for (std::size_t v = 0; v < g.graph.num_vertices(); ++v)
    if (vclass[v] >= 0) out.graph.vertex_ids[static_cast<std::size_t>(vclass[v])] = g.graph.vertex_ids[v];
  int next = 0;
  for (std::size_t k = 0; k < E; ++k) {
    if (drop[k]) continue;
    renum[k] = ++next;
    const auto& e = g.graph.edges[k];
    out.graph.edges.push_back({e.id, vclass[static_cast<std::size_t>(e.from)], vclass[static_cast<std::size_t>(e.to)]});
  }
  out.vertex_map.assign(static_cast<std::size_t>(new_vertex_count), -1);
  for (std::size_t v = 0; v < g.graph.num_vertices(); ++v) {
    if (vclass[v] < 0) continue;
    int target = vertex_redirect[static_cast<std::size_t>(g.vertex_map[v])];
    int cls = vclass[static_cast<std::size_t>(target)];
    if (cls < 0) return std::nullopt;
    out.vertex_map[static_cast<std::size_t>(vclass[v])] = cls;
  }
  for (std::size_t k = 0; k < E; ++k) {
    if (drop[k]) continue;
    EdgePath p;
    for (int l : g.images[k]) {
      int r = renum[eidx(l)];
      if (!r) continue;
      int x = l > 0 ? r : -r;
      if (!p.empty() && p.back() == -x) p.pop_back(); else p.push_back(x);
    }
    out.images.push_back(p);
  }
  if (any_empty(out.images)) return std::nullopt;
  return out;
}

std::vector<int> identity_redirect(std::size_t n) {
  std::vector<int> r(n);
  std::iota(r.begin(), r.end(), 0);
  return r;
}

std::optional<GraphMap> collapse_invariant_forest(const GraphMap& g) {
  const std::size_t E = g.graph.num_edges(), V = g.graph.num_vertices();
  ZMatrix a = incidence_matrix(g);
  std::vector<bool> inF(E, false);
  std::vector<int> uf(V);
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (uf[static_cast<std::size_t>(x)] != x) x = uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
    return x;
  };
  bool any = false;
  for (std::size_t e = 0; e < E; ++e) {
    if (inF[e]) continue;
    std::vector<bool> in(E, false);
    std::deque<std::size_t> q{e};
    in[e] = true;
    while (!q.empty()) {
      auto i = q.front();
      q.pop_front();
      for (std::size_t j = 0; j < E; ++j)
        if (a(i, j) > 0 && !in[j]) {
          in[j] = true;
          q.push_back(j);
        }
    }
    std::vector<int> trial = uf;
    auto tfind = [&](int x) {
      while (trial[static_cast<std::size_t>(x)] != x) x = trial[static_cast<std::size_t>(x)];
      return x;
    };
    bool forest = true;
    for (std::size_t j = 0; j < E && forest; ++j) {
      if (!in[j] || inF[j]) continue;
      int x = tfind(g.graph.edges[j].from), y = tfind(g.graph.edges[j].to);
      if (x == y) forest = false; else trial[static_cast<std::size_t>(x)] = y;
    }
    if (!forest) continue;
    uf = trial;
    for (std::size_t j = 0; j < E; ++j)
      if (in[j]) inF[j] = true;
    any = true;
  }
  if (!any) return std::nullopt;
  std::vector<int> root_class(V, -1), vclass(V, -1);
  int count = 0;
  for (std::size_t v = 0; v < V; ++v) {
    int r = find(static_cast<int>(v));
    if (root_class[static_cast<std::size_t>(r)] < 0) root_class[static_cast<std::size_t>(r)] = count++;
    vclass[v] = root_class[static_cast<std::size_t>(r)];
  }
  return rebuild(g, inF, vclass, count, identity_redirect(V));
}

std::vector<int> valence(const Graph& g) {
  std::vector<int> val(g.num_vertices(), 0);
  for (const auto& e : g.edges) {
    ++val[static_cast<std::size_t>(e.from)];
    ++val[static_cast<std::size_t>(e.to)];
  }
  return val;
}

std::optional<GraphMap> remove_hair(const GraphMap& g) {
  auto val = valence(g.graph);
  const std::size_t V = g.graph.num_vertices(), E = g.graph.num_edges();
  for (std::size_t v = 0; v < V; ++v) {
    if (val[v] != 1 || V == 1) continue;
    std::size_t k = 0;
    while (k < E && g.graph.edges[k].from != static_cast<int>(v) && g.graph.edges[k].to != static_cast<int>(v)) ++k;
    const auto& e = g.graph.edges[k];
    int w = e.from == static_cast<int>(v) ? e.to : e.from;
    std::vector<bool> drop(E, false);
    drop[k] = true;
    std::vector<int> vclass(V, -1), redirect = identity_redirect(V);
    redirect[v] = w;
    int c = 0;
    for (std::size_t u = 0; u < V; ++u)
      if (u != v) vclass[u] = c++;
    auto r = rebuild(g, drop, vclass, c, redirect);
    if (r) return r;
  }
  return std::nullopt;
}

std::optional<GraphMap> remove_valence_two(const GraphMap& g) {
  auto val = valence(g.graph);
  const std::size_t V = g.graph.num_vertices(), E = g.graph.num_edges();
  for (std::size_t v = 0; v < V; ++v) {
    if (val[v] != 2) continue;
    bool hit = false;
    for (std::size_t u = 0; u < V; ++u)
      if (u != v && g.vertex_map[u] == static_cast<int>(v)) hit = true;
    if (hit) continue;
    std::vector<std::size_t> inc;
    for (std::size_t k = 0; k < E; ++k)
      if (g.graph.edges[k].from == static_cast<int>(v) || g.graph.edges[k].to == static_cast<int>(v)) inc.push_back(k);
    if (inc.size() != 2) continue;  // a loop
    // orient so that l1 ends at v and l2 starts at v
    const int sv = static_cast<int>(v);
    int l1 = g.graph.edges[inc[0]].to == sv ? static_cast<int>(inc[0] + 1) : -static_cast<int>(inc[0] + 1);
    int l2 = g.graph.edges[inc[1]].from == sv ? static_cast<int>(inc[1] + 1) : -static_cast<int>(inc[1] + 1);
    auto img = [&](int l) {
      EdgePath p = map_path(g, EdgePath{l});
      return p;
    };
    EdgePath merged_img = img(l1);
    EdgePath tail = img(l2);
    merged_img.insert(merged_img.end(), tail.begin(), tail.end());
    merged_img = free_reduce(merged_img);
    // new edge keeps slot inc[0]; rewrite every path
    const int keep = static_cast<int>(inc[0] + 1);
    const int keep_sign = l1 > 0 ? 1 : -1;  // merged edge runs along l1 then l2
    auto rewrite = [&](const EdgePath& p, bool& ok) {
      EdgePath out;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == l1) {
          if (i + 1 >= p.size() || p[i + 1] != l2) { ok = false; return out; }
          out.push_back(keep_sign * keep);
          ++i;
        } else if (p[i] == -l2) {
          if (i + 1 >= p.size() || p[i + 1] != -l1) { ok = false; return out; }
          out.push_back(-keep_sign * keep);
          ++i;
        } else if (p[i] == -l1 || p[i] == l2) {
          ok = false;
          return out;
        } else {
          out.push_back(p[i]);
        }
      }
      return out;
    };
    bool ok = true;
    GraphMap h = g;
    auto& ek = h.graph.edges[inc[0]];
    // stored orientation of the kept edge: from start of l1 to end of l2 when l1 > 0
    int a = g.graph.path_start(l1), b = g.graph.path_end(l2);
    if (keep_sign > 0) { ek.from = a; ek.to = b; } else { ek.from = b; ek.to = a; }
    EdgePath new_keep = rewrite(merged_img, ok);
    if (keep_sign < 0) new_keep = inverse_letters(new_keep);
    for (std::size_t k = 0; k < E && ok; ++k) {
      if (k == inc[0] || k == inc[1]) continue;
      h.images[k] = rewrite(g.images[k], ok);
    }
    if (!ok) continue;
    h.images[inc[0]] = free_reduce(new_keep);
    // drop the second edge and vertex v
    std::vector<bool> drop(E, false);
    drop[inc[1]] = true;
    std::vector<int> vclass(V, -1);
    int c = 0;
    for (std::size_t u = 0; u < V; ++u)
      if (u != v) vclass[u] = c++;
    std::vector<int> redirect = identity_redirect(V);
    // v is gone; nothing other than v maps to it, and v's own image is irrelevant
    GraphMap h2 = h;
    h2.vertex_map[v] = h.vertex_map[v] == sv ? (a == sv ? b : a) : h.vertex_map[v];
    auto r = rebuild(h2, drop, vclass, c, redirect);
    if (r) return r;
  }
  return std::nullopt;
}

} // namespace

GraphMap simplify(const GraphMap& input) {
  validate(input);
  GraphMap g = input;
  for (int guard = 0; guard < 10000; ++guard) {
    if (auto r = collapse_invariant_forest(g)) { g = *r; continue; }
    if (auto r = remove_hair(g)) { g = *r; continue; }
    if (auto r = remove_valence_two(g)) { g = *r; continue; }
    break;
  }
  validate(g);
  return g;
}

} // namespace fbc
