#include "fbc/freegroup.hpp"

#include <algorithm>
#include <sstream>

namespace fbc {

Letters free_reduce(const Letters& letters) {
  Letters out;
  out.reserve(letters.size());
  for (int l : letters) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

FreeWord reduce(int rank, const Letters& letters) {
  require(rank >= 1, "rank must be positive");
  for (int l : letters)
    require(l != 0 && std::abs(l) <= rank,
            "letter " + std::to_string(l) + " out of range for rank " + std::to_string(rank));
  return FreeWord{rank, free_reduce(letters)};
}

Letters inverse_letters(const Letters& w) {
  Letters r(w.rbegin(), w.rend());
  for (int& l : r) l = -l;
  return r;
}

FreeWord inverse(const FreeWord& w) { return FreeWord{w.rank, inverse_letters(w.letters)}; }

FreeWord multiply(const FreeWord& a, const FreeWord& b) {
  require(a.rank == b.rank, "rank mismatch in word product");
  Letters l = a.letters;
  l.insert(l.end(), b.letters.begin(), b.letters.end());
  return FreeWord{a.rank, free_reduce(l)};
}

std::string NielsenSymbol::name() const {
  switch (kind) {
    case Kind::Swap: return "swap";
    case Kind::Invert: return "invert";
    case Kind::LeftMul: return "leftmul";
    case Kind::RightMul: return "rightmul";
  }
  return "?";
}

void validate(const NielsenWord& w) {
  require(w.rank >= 1, "rank must be positive");
  for (const auto& s : w.factors) {
    require(s.i >= 1 && s.i <= w.rank, "Nielsen index out of range");
    if (s.kind != NielsenSymbol::Kind::Invert) {
      require(s.j >= 1 && s.j <= w.rank, "Nielsen index out of range");
      require(s.i != s.j, "Nielsen symbol needs distinct indices");
    }
  }
}

FreeEndo FreeEndo::identity(int rank) {
  require(rank >= 1, "rank must be positive");
  FreeEndo e;
  e.rank = rank;
  for (int i = 1; i <= rank; ++i) e.images.push_back(FreeWord{rank, {i}});
  e.nielsen = NielsenWord{rank, {}};
  return e;
}

FreeEndo FreeEndo::from_images(int rank, const std::vector<Letters>& images) {
  require(rank >= 1, "rank must be positive");
  require(static_cast<int>(images.size()) == rank, "need exactly one image per generator");
  FreeEndo e;
  e.rank = rank;
  for (const auto& w : images) e.images.push_back(reduce(rank, w));
  return e;
}

FreeWord apply_endo(const FreeEndo& e, const FreeWord& w) {
  require(e.rank == w.rank, "rank mismatch applying endomorphism");
  Letters out;
  for (int l : w.letters) {
    const Letters& img = e.images[static_cast<std::size_t>(std::abs(l) - 1)].letters;
    if (l > 0) {
      for (int x : img) {
        if (!out.empty() && out.back() == -x) out.pop_back(); else out.push_back(x);
      }
    } else {
      for (auto it = img.rbegin(); it != img.rend(); ++it) {
        int x = -*it;
        if (!out.empty() && out.back() == -x) out.pop_back(); else out.push_back(x);
      }
    }
  }
  return FreeWord{e.rank, out};
}

FreeEndo compose(const FreeEndo& e1, const FreeEndo& e2) {
  require(e1.rank == e2.rank, "rank mismatch in composition");
  FreeEndo r;
  r.rank = e1.rank;
  for (const auto& w : e2.images) r.images.push_back(apply_endo(e1, w));
  if (e1.nielsen && e2.nielsen) {
    NielsenWord nw{e1.rank, e1.nielsen->factors};
    nw.factors.insert(nw.factors.end(), e2.nielsen->factors.begin(), e2.nielsen->factors.end());
    r.nielsen = nw;
  }
  return r;
}

bool same_images(const FreeEndo& a, const FreeEndo& b) { return a.rank == b.rank && a.images == b.images; }

FreeEndo elementary(int rank, const NielsenSymbol& s) {
  FreeEndo e = FreeEndo::identity(rank);
  auto& img = e.images;
  const auto i = static_cast<std::size_t>(s.i - 1), j = static_cast<std::size_t>(s.j - 1);
  switch (s.kind) {
    case NielsenSymbol::Kind::Swap: std::swap(img[i], img[j]); break;
    case NielsenSymbol::Kind::Invert: img[i].letters = {-s.i}; break;
    case NielsenSymbol::Kind::LeftMul: img[i].letters = {s.j, s.i}; break;
    case NielsenSymbol::Kind::RightMul: img[i].letters = {s.i, s.j}; break;
  }
  e.nielsen = NielsenWord{rank, {s}};
  return e;
}

FreeEndo elementary_inverse(int rank, const NielsenSymbol& s) {
  FreeEndo e = FreeEndo::identity(rank);
  auto& img = e.images;
  const auto i = static_cast<std::size_t>(s.i - 1), j = static_cast<std::size_t>(s.j - 1);
  switch (s.kind) {
    case NielsenSymbol::Kind::Swap: std::swap(img[i], img[j]); break;
    case NielsenSymbol::Kind::Invert: img[i].letters = {-s.i}; break;
    case NielsenSymbol::Kind::LeftMul: img[i].letters = {-s.j, s.i}; break;
    case NielsenSymbol::Kind::RightMul: img[i].letters = {s.i, -s.j}; break;
  }
  e.nielsen.reset();
  return e;
}

FreeEndo endo_from_nielsen(const NielsenWord& w) {
  validate(w);
  FreeEndo acc = FreeEndo::identity(w.rank);
  for (const auto& s : w.factors) acc = compose(acc, elementary(w.rank, s));
  acc.nielsen = w;
  return acc;
}

FreeEndo inverse_from_nielsen(const NielsenWord& w) {
  validate(w);
  FreeEndo acc = FreeEndo::identity(w.rank);
  acc.nielsen.reset();
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it)
    acc = compose(acc, elementary_inverse(w.rank, *it));
  // the inverse is itself Nielsen-backed: invert symbols, reverse order
  NielsenWord inv{w.rank, {}};
  for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) {
    // swap and invert are involutions; multiplications need their inverses,
    // which are products of elementary symbols: x_i -> x_j^{-1} x_i equals
    // invert(j) leftmul(i,j) invert(j) under our composition order.
    switch (it->kind) {
      case NielsenSymbol::Kind::Swap:
      case NielsenSymbol::Kind::Invert: inv.factors.push_back(*it); break;
      case NielsenSymbol::Kind::LeftMul:
      case NielsenSymbol::Kind::RightMul: {
        NielsenSymbol flip{NielsenSymbol::Kind::Invert, it->j, 0};
        inv.factors.push_back(flip);
        inv.factors.push_back(*it);
        inv.factors.push_back(flip);
        break;
      }
    }
  }
  acc.nielsen = inv;
  return acc;
}

FreeEndo inverse_endo(const FreeEndo& e) {
  require(e.nielsen.has_value(), "inverse requires a Nielsen word for the automorphism");
  return inverse_from_nielsen(*e.nielsen);
}

namespace {

struct Folder {
  std::vector<int> parent;
  std::vector<std::map<int, int>> adj;
  std::vector<std::pair<int, int>> pending;

  int make() {
    parent.push_back(static_cast<int>(parent.size()));
    adj.emplace_back();
    return parent.back();
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void link(int u, int label, int v) {
    auto& a = adj[static_cast<std::size_t>(u)];
    auto it = a.find(label);
    if (it == a.end())
      a.emplace(label, v);
    else if (find(it->second) != find(v))
      pending.emplace_back(it->second, v);
  }
  void add_edge(int u, int label, int v) {
    u = find(u);
    v = find(v);
    link(u, label, v);
    link(v, -label, u);
    drain();
  }
  void drain() {
    while (!pending.empty()) {
      auto [a, b] = pending.back();
      pending.pop_back();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      if (adj[static_cast<std::size_t>(a)].size() < adj[static_cast<std::size_t>(b)].size()) std::swap(a, b);
      parent[static_cast<std::size_t>(b)] = a;
      auto moved = std::move(adj[static_cast<std::size_t>(b)]);
      adj[static_cast<std::size_t>(b)].clear();
      for (const auto& [label, w] : moved) link(a, label, w);
    }
  }
};

} // namespace

bool is_automorphism(const FreeEndo& e) {
  require(static_cast<int>(e.images.size()) == e.rank, "endomorphism needs one image per generator");
  Folder f;
  const int base = f.make();
  for (const auto& w : e.images) {
    if (w.letters.empty()) continue;
    int cur = base;
    for (std::size_t k = 0; k < w.letters.size(); ++k) {
      int next = (k + 1 == w.letters.size()) ? base : f.make();
      f.add_edge(cur, w.letters[k], next);
      cur = next;
    }
  }
  // surviving vertices and their labels
  int live = 0;
  for (std::size_t v = 0; v < f.parent.size(); ++v)
    if (f.find(static_cast<int>(v)) == static_cast<int>(v)) ++live;
  if (live != 1) return false;
  const auto& a = f.adj[static_cast<std::size_t>(f.find(base))];
  return static_cast<int>(a.size()) == 2 * e.rank;
}

ZMatrix abelianization_matrix(const FreeEndo& e) {
  const auto n = static_cast<std::size_t>(e.rank);
  ZMatrix m(n, n, Integer(0));
  for (std::size_t j = 0; j < n; ++j)
    for (int l : e.images[j].letters) m(static_cast<std::size_t>(std::abs(l) - 1), j) += (l > 0 ? 1 : -1);
  return m;
}

void GroupRingElt::add(const Letters& w, const Rational& c) {
  if (sgn(c) == 0) return;
  auto [it, fresh] = terms.emplace(w, c);
  if (!fresh) {
    it->second += c;
    if (sgn(it->second) == 0) terms.erase(it);
  }
}

GroupRingElt GroupRingElt::word(int rank, const Letters& w, const Rational& c) {
  GroupRingElt g;
  g.rank = rank;
  g.add(free_reduce(w), c);
  return g;
}

GroupRingElt operator+(GroupRingElt a, const GroupRingElt& b) {
  for (const auto& [w, c] : b.terms) a.add(w, c);
  return a;
}

GroupRingElt operator-(GroupRingElt a, const GroupRingElt& b) {
  for (const auto& [w, c] : b.terms) a.add(w, -c);
  return a;
}

GroupRingElt operator*(const GroupRingElt& a, const GroupRingElt& b) {
  GroupRingElt r;
  r.rank = std::max(a.rank, b.rank);
  for (const auto& [wa, ca] : a.terms)
    for (const auto& [wb, cb] : b.terms) {
      Letters w = wa;
      w.insert(w.end(), wb.begin(), wb.end());
      r.add(free_reduce(w), ca * cb);
    }
  return r;
}

GroupRingElt fox_derivative(const FreeWord& w, int i) {
  require(i >= 1 && i <= w.rank, "Fox derivative index out of range");
  GroupRingElt d;
  d.rank = w.rank;
  Letters prefix;
  for (int l : w.letters) {
    if (l == i) d.add(free_reduce(prefix), 1);
    prefix.push_back(l);
    if (l == -i) d.add(free_reduce(prefix), -1);
  }
  return d;
}

std::string word_to_string(const Letters& w) {
  std::ostringstream os;
  os << '[';
  for (std::size_t k = 0; k < w.size(); ++k) os << (k ? "," : "") << w[k];
  os << ']';
  return os.str();
}

} // namespace fbc
