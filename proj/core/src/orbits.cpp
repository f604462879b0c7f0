#include "fbc/graphmap.hpp"
#include "fbc/permgroup.hpp"

#include <map>

namespace fbc {

namespace {

std::size_t eidx(int letter) { return static_cast<std::size_t>(std::abs(letter) - 1); }

struct Powers {
  int m = 0;
  std::vector<std::vector<long>> len;  // len[i][k] = |f^i(e_k)|
  std::vector<EdgePath> top;           // f^m(e_k), untightened
};

Powers build_powers(const GraphMap& g, int m, long max_len) {
  require(m >= 1, "period must be positive");
  const std::size_t E = g.graph.num_edges();
  Powers p;
  p.m = m;
  p.len.assign(static_cast<std::size_t>(m + 1), std::vector<long>(E, 1));
  for (int i = 1; i <= m; ++i)
    for (std::size_t k = 0; k < E; ++k) {
      long s = 0;
      for (int l : g.images[k]) {
        s += p.len[static_cast<std::size_t>(i - 1)][eidx(l)];
        require(s <= max_len, "symbolic path length exceeds the configured cap");
      }
      p.len[static_cast<std::size_t>(i)][k] = s;
    }
  std::vector<EdgePath> cur(E);
  for (std::size_t k = 0; k < E; ++k) cur[k] = {static_cast<int>(k + 1)};
  for (int i = 1; i <= m; ++i) {
    std::vector<EdgePath> next(E);
    for (std::size_t k = 0; k < E; ++k) {
      auto& out = next[k];
      out.reserve(static_cast<std::size_t>(p.len[static_cast<std::size_t>(i)][k]));
      for (int l : g.images[k]) {
        const auto& src = cur[eidx(l)];
        if (l > 0)
          out.insert(out.end(), src.begin(), src.end());
        else
          for (auto it = src.rbegin(); it != src.rend(); ++it) out.push_back(-*it);
      }
    }
    cur.swap(next);
  }
  p.top = std::move(cur);
  return p;
}

EdgePath power_path(const Powers& p, const EdgePath& path) {
  EdgePath out;
  for (int l : path) {
    const auto& src = p.top[eidx(l)];
    if (l > 0)
      out.insert(out.end(), src.begin(), src.end());
    else
      for (auto it = src.rbegin(); it != src.rend(); ++it) out.push_back(-*it);
  }
  return out;
}

struct Interval {
  Rational a, b;
};

// Parameter interval on edge k covered by piece `pos` of f^i(e_k).
Interval piece_interval(const GraphMap& g, const Powers& p, int i, std::size_t k, long pos) {
  if (i == 0) return {Rational(0), Rational(1)};
  const auto& img = g.images[k];
  const Rational r(static_cast<long>(img.size()));
  for (std::size_t j = 0; j < img.size(); ++j) {
    const int l = img[j];
    const long L = p.len[static_cast<std::size_t>(i - 1)][eidx(l)];
    if (pos >= L) {
      pos -= L;
      continue;
    }
    Interval sub = l > 0 ? piece_interval(g, p, i - 1, eidx(l), pos)
                         : piece_interval(g, p, i - 1, eidx(l), L - 1 - pos);
    if (l < 0) sub = {1 - sub.b, 1 - sub.a};
    const Rational off(static_cast<long>(j));
    return {(off + sub.a) / r, (off + sub.b) / r};
  }
  expect(false, "piece position out of range");
  return {};
}

std::vector<int> vertex_power(const GraphMap& g, int m) {
  std::vector<int> vm(g.vertex_map.size());
  for (std::size_t v = 0; v < vm.size(); ++v) {
    int x = static_cast<int>(v);
    for (int i = 0; i < m; ++i) x = g.vertex_map[static_cast<std::size_t>(x)];
    vm[v] = x;
  }
  return vm;
}

bool degenerate_edge(const Powers& p, std::size_t k) {
  return p.top[k].size() == 1 && p.top[k][0] == static_cast<int>(k + 1);
}

} // namespace

FixedPointCounts fixed_point_counts(const GraphMap& g, int m, long max_len) {
  validate(g);
  Powers p = build_powers(g, m, max_len);
  FixedPointCounts c;
  c.period = m;
  const std::size_t E = g.graph.num_edges();
  c.crossings.assign(E, 0);
  c.interior.assign(E, 0);
  for (std::size_t k = 0; k < E; ++k) {
    const int e = static_cast<int>(k + 1);
    const auto& path = p.top[k];
    if (degenerate_edge(p, k)) c.degenerate = true;
    for (std::size_t pos = 0; pos < path.size(); ++pos) {
      if (std::abs(path[pos]) != e) continue;
      ++c.crossings[k];
      bool boundary = path[pos] == e && (pos == 0 || pos + 1 == path.size());
      if (!boundary) ++c.interior[k];
    }
  }
  auto vm = vertex_power(g, m);
  for (std::size_t v = 0; v < vm.size(); ++v)
    if (vm[v] == static_cast<int>(v)) c.fixed_vertices.push_back(static_cast<int>(v));
  return c;
}

PeriodicData periodic_points(const GraphMap& g, int m, long max_len) {
  PeriodicOptions opt;
  opt.max_len = max_len;
  return periodic_points(g, m, opt);
}

namespace {

/// Reads loops in the mapping torus either as reduced words or as elements
/// of a finite quotient, incrementally along a path.
class LoopReader {
public:
  LoopReader(const SpanningTree& tree, const EnumeratedGroup* q, bool words)
      : tree_(tree), q_(q), words_(words), elem_(q ? q->identity() : 0) {}

  void push_edge(int l) {
    const int gen = tree_.generator[eidx(l)];
    if (gen != 0) push_gen(l > 0 ? gen : -gen);
  }
  void push_path(const EdgePath& p) {
    for (int l : p) push_edge(l);
  }
  void push_reverse(const EdgePath& p) {
    for (auto it = p.rbegin(); it != p.rend(); ++it) push_edge(-*it);
  }
  void push_reader(const LoopReader& o) {
    if (words_)
      for (int x : o.word_) push_gen(x);
    if (q_) elem_ = q_->multiply(elem_, o.elem_);
  }

  /// (loop)^-1 t^m
  void finish(PeriodicPoint& pt, int m) const {
    const int t = tree_.rank + 1;
    if (words_) {
      Letters w = inverse_letters(word_);
      for (int i = 0; i < m; ++i) w.push_back(t);
      pt.cd_word = free_reduce(w);
    }
    if (q_) pt.cd_element = q_->multiply(q_->inverse(elem_), q_->power(q_->gen(t - 1), m));
  }

private:
  void push_gen(int x) {
    if (words_) {
      if (!word_.empty() && word_.back() == -x)
        word_.pop_back();
      else
        word_.push_back(x);
    }
    if (q_) elem_ = q_->step(elem_, x);
  }

  const SpanningTree& tree_;
  const EnumeratedGroup* q_;
  bool words_;
  Letters word_;
  int elem_;
};

} // namespace

PeriodicData periodic_points(const GraphMap& g, int m, const PeriodicOptions& opt) {
  validate(g);
  Powers p = build_powers(g, m, opt.max_len);
  const std::size_t E = g.graph.num_edges();
  for (std::size_t k = 0; k < E; ++k)
    if (degenerate_edge(p, k))
      throw DegenerateInput("edge " + std::to_string(g.graph.edges[k].id) +
                            " is fixed pointwise by the power of the map; periodic points are not isolated");

  SpanningTree tree = spanning_tree(g.graph, 0);
  if (opt.quotient)
    require(opt.quotient->num_gens() == tree.rank + 1, "quotient does not match the mapping torus generators");
  // eta_m = tau f(tau) ... f^{m-1}(tau), a path from the base to f^m(base)
  EdgePath eta;
  {
    EdgePath tau = tree.gamma[static_cast<std::size_t>(g.vertex_map[static_cast<std::size_t>(tree.base)])];
    EdgePath cur = tau;
    for (int i = 0; i < m; ++i) {
      eta.insert(eta.end(), cur.begin(), cur.end());
      cur = map_path(g, cur);
    }
  }
  // Per vertex: eta followed by f^m of the tree path to it.
  std::vector<LoopReader> head;
  for (std::size_t v = 0; v < g.graph.num_vertices(); ++v) {
    LoopReader r(tree, opt.quotient, opt.cd_words);
    r.push_path(eta);
    r.push_path(power_path(p, tree.gamma[v]));
    head.push_back(std::move(r));
  }

  PeriodicData d;
  d.period = m;
  d.rank = tree.rank;
  std::map<std::pair<std::size_t, Rational>, std::size_t> where;
  std::map<int, std::size_t> vertex_point;

  auto vm = vertex_power(g, m);
  for (std::size_t v = 0; v < vm.size(); ++v) {
    if (vm[v] != static_cast<int>(v)) continue;
    PeriodicPoint pt;
    pt.is_vertex = true;
    pt.vertex = static_cast<int>(v);
    int fixed_dirs = 0;
    for (std::size_t k = 0; k < E; ++k) {
      const int e = static_cast<int>(k + 1);
      if (g.graph.edges[k].from == static_cast<int>(v) && p.top[k].front() == e) ++fixed_dirs;
      if (g.graph.edges[k].to == static_cast<int>(v) && p.top[k].back() == e) ++fixed_dirs;
    }
    pt.index = 1 - fixed_dirs;
    LoopReader loop = head[v];
    loop.push_reverse(tree.gamma[v]);
    loop.finish(pt, m);
    vertex_point[static_cast<int>(v)] = d.points.size();
    d.points.push_back(std::move(pt));
  }

  for (std::size_t k = 0; k < E; ++k) {
    const int e = static_cast<int>(k + 1);
    const auto& path = p.top[k];
    const std::size_t from = static_cast<std::size_t>(g.graph.edges[k].from);
    const EdgePath& gi = tree.gamma[from];
    LoopReader prefix(tree, opt.quotient, opt.cd_words);
    for (std::size_t pos = 0; pos < path.size(); prefix.push_edge(path[pos]), ++pos) {
      if (std::abs(path[pos]) != e) continue;
      if (path[pos] == e && (pos == 0 || pos + 1 == path.size())) continue;  // vertex direction
      Interval iv = piece_interval(g, p, m, k, static_cast<long>(pos));
      PeriodicPoint pt;
      pt.edge = static_cast<int>(k);
      pt.position = static_cast<long>(pos);
      if (path[pos] > 0) {
        pt.coordinate = iv.a / (1 - iv.b + iv.a);
        pt.index = -1;
      } else {
        pt.coordinate = iv.b / (1 + iv.b - iv.a);
        pt.index = 1;
      }
      LoopReader loop = head[from];
      loop.push_reader(prefix);
      if (path[pos] < 0) loop.push_edge(-e);
      loop.push_reverse(gi);
      loop.finish(pt, m);
      where[{k, pt.coordinate}] = d.points.size();
      d.points.push_back(std::move(pt));
    }
  }

  // action of f on the fixed set of f^m
  d.image.resize(d.points.size());
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    const auto& pt = d.points[i];
    if (pt.is_vertex) {
      d.image[i] = vertex_point.at(g.vertex_map[static_cast<std::size_t>(pt.vertex)]);
      continue;
    }
    const auto& img = g.images[static_cast<std::size_t>(pt.edge)];
    Rational y = pt.coordinate * Rational(static_cast<long>(img.size()));
    mpz_class j;
    mpz_fdiv_q(j.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    Rational u = y - Rational(j);
    expect(sgn(u) != 0, "interior periodic point mapped onto a vertex");
    int l = img[static_cast<std::size_t>(j.get_si())];
    Rational c = l > 0 ? u : Rational(1 - u);
    auto it = where.find({eidx(l), c});
    expect(it != where.end(), "image of a periodic point is not periodic");
    d.image[i] = it->second;
  }

  std::vector<bool> seen(d.points.size(), false);
  for (std::size_t i = 0; i < d.points.size(); ++i) {
    if (seen[i]) continue;
    OrbitDatum o;
    o.period = m;
    o.representative = i;
    std::size_t x = i;
    do {
      seen[x] = true;
      o.members.push_back(x);
      expect(d.points[x].index == d.points[i].index, "index varies along an orbit");
      x = d.image[x];
      expect(x == i || !seen[x], "map on periodic points is not a permutation");
    } while (x != i);
    o.index = d.points[i].index;
    o.cd_word = d.points[i].cd_word;
    o.cd_element = d.points[i].cd_element;
    d.orbits.push_back(std::move(o));
  }
  return d;
}

std::vector<OrbitDatum> periodic_orbits(const GraphMap& g, int m, long max_len) {
  return periodic_points(g, m, max_len).orbits;
}

} // namespace fbc
