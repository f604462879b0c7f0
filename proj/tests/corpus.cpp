#include "corpus.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace fbc::testkit {

const std::vector<SmallGroup>& small_groups() {
  static const std::vector<SmallGroup> groups = [] {
    auto make = [](std::string name, int d, std::vector<Perm> gens) {
      EnumeratedGroup e(d, gens);
      SmallGroup g{std::move(name), d, {}};
      for (std::size_t i = 0; i < e.order(); ++i) g.elements.push_back(e.element(static_cast<int>(i)));
      return g;
    };
    return std::vector<SmallGroup>{
        make("Z2", 2, {{1, 0}}),
        make("Z3", 3, {{1, 2, 0}}),
        make("Z4", 4, {{1, 2, 3, 0}}),
        make("V4", 4, {{1, 0, 3, 2}, {2, 3, 0, 1}}),
        make("S3", 3, {{1, 0, 2}, {1, 2, 0}}),
        make("Z6", 5, {{1, 0, 3, 4, 2}}),
        make("A4", 4, {{1, 2, 0, 3}, {1, 0, 3, 2}}),
    };
  }();
  return groups;
}

std::vector<NamedRep> reps_for_degree(int d) {
  std::vector<NamedRep> out;
  out.push_back({"trivial", 1, [](const Perm&) { return q_identity(1); }});
  out.push_back({"sign", 1, [](const Perm& p) {
                   QMatrix m(1, 1, Rational(perm_is_odd(p) ? -1 : 1));
                   return m;
                 }});
  if (d <= 3)
    out.push_back({"permutation", d, [d](const Perm& p) {
                     QMatrix m(static_cast<std::size_t>(d), static_cast<std::size_t>(d), Rational(0));
                     for (int x = 0; x < d; ++x) m(static_cast<std::size_t>(p[static_cast<std::size_t>(x)]), static_cast<std::size_t>(x)) = 1;
                     return m;
                   }});
  if (d >= 2 && d <= 4)
    out.push_back({"standard", d - 1, [d](const Perm& p) {
                     // basis e_i - e_{d-1}
                     const std::size_t k = static_cast<std::size_t>(d - 1);
                     QMatrix m(k, k, Rational(0));
                     const std::size_t last = static_cast<std::size_t>(p[k]);
                     for (std::size_t i = 0; i < k; ++i) {
                       const std::size_t img = static_cast<std::size_t>(p[i]);
                       if (img < k) m(img, i) += 1;
                       if (last < k) m(last, i) -= 1;
                     }
                     return m;
                   }});
  return out;
}

Representation rep_on(const FiniteQuotient& q, const NamedRep& r) {
  Representation rep;
  rep.dim = r.dim;
  for (const auto& g : q.gens) rep.gen_matrices.push_back(r.of(g));
  return rep;
}

std::vector<FiniteQuotient> find_quotients(const FbcGroup& g, const SmallGroup& target, std::size_t limit,
                                           std::uint64_t seed) {
  const int n = g.rank();
  const std::size_t N = target.elements.size();
  const Presentation p = g.presentation();
  std::vector<FiniteQuotient> found;
  std::vector<std::size_t> pick(static_cast<std::size_t>(n + 1), 0);
  EnumeratedGroup full(target.degree, target.elements);
  for (;;) {
    FiniteQuotient q;
    q.degree = target.degree;
    for (auto i : pick) q.gens.push_back(target.elements[i]);
    bool ok = true;
    for (const auto& r : p.relators) {
      Perm acc = perm_identity(target.degree);
      for (int l : r) {
        const Perm& s = q.gens[static_cast<std::size_t>(std::abs(l) - 1)];
        acc = perm_compose(acc, l > 0 ? s : perm_inverse(s));
      }
      if (acc != perm_identity(target.degree)) {
        ok = false;
        break;
      }
    }
    if (ok && EnumeratedGroup(q.degree, q.gens).order() == N) found.push_back(q);
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == N) pick[i++] = 0;
    if (i == pick.size()) break;
  }
  std::mt19937_64 rng(seed);
  std::shuffle(found.begin(), found.end(), rng);
  if (found.size() > limit) found.resize(limit);
  return found;
}

std::vector<TwistedCase> twisted_corpus(std::size_t target, std::uint64_t seed) {
  std::vector<TwistedCase> out;
  const auto& groups = small_groups();
  std::mt19937_64 rng(seed);
  for (std::uint64_t stream = 0; out.size() < target; ++stream) {
    const int n = 2 + static_cast<int>(stream % 2);
    const int len = 1 + static_cast<int>(rng() % 8);
    NielsenWord w = random_auto(n, len, seed, stream);
    FreeEndo phi = endo_from_nielsen(w);
    FbcGroup g(phi);
    // Rotate through the groups so every target appears.
    for (std::size_t k = 0; k < groups.size() && out.size() < target; ++k) {
      const SmallGroup& grp = groups[(stream + k) % groups.size()];
      if (n == 3 && grp.elements.size() > 6 && k > 2) continue;  // keep the search cheap
      auto qs = find_quotients(g, grp, 1, rng());
      if (qs.empty()) continue;
      for (const auto& r : reps_for_degree(grp.degree)) {
        if (r.name == "trivial" && k != 0) continue;
        out.push_back({w, phi, grp.name, r.name, qs[0], rep_on(qs[0], r)});
      }
      break;
    }
  }
  return out;
}

FiniteQuotient inverse_quotient(const FiniteQuotient& q) {
  FiniteQuotient r = q;
  r.gens.back() = perm_inverse(q.gens.back());
  return r;
}

Representation inverse_rep(const Representation& r) {
  Representation s = r;
  s.gen_matrices.back() = inverse(r.gen_matrices.back());
  return s;
}

NielsenWord positive_word(int n, int length, std::uint64_t seed, std::uint64_t stream) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + stream);
  std::vector<NielsenSymbol> set;
  for (const auto& s : nielsen_generating_set(n))
    if (s.kind != NielsenSymbol::Kind::Invert) set.push_back(s);
  NielsenWord w;
  w.rank = n;
  for (int i = 0; i < length; ++i) w.factors.push_back(set[rng() % set.size()]);
  return w;
}

std::vector<NielsenWord> expanding_train_tracks(std::size_t count, std::uint64_t seed) {
  std::vector<NielsenWord> out;
  for (std::uint64_t s = 0; out.size() < count; ++s) {
    const int n = 2 + static_cast<int>(s % 2);
    NielsenWord w = positive_word(n, 3 + static_cast<int>(s % 4), seed, s);
    const GraphMap rose = rose_representative(endo_from_nielsen(w));
    const Filtration f = maximal_filtration(rose);
    if (f.irreducible() && f.strata[0].pf.lambda > 1 + 1e-6L && is_train_track(rose)) out.push_back(w);
  }
  return out;
}

CoxeterGraph coxeter_star(int n) {
  CoxeterGraph g;
  g.graph.vertex_ids.resize(static_cast<std::size_t>(n + 1));
  std::iota(g.graph.vertex_ids.begin(), g.graph.vertex_ids.end(), 0);
  g.essential.assign(static_cast<std::size_t>(n + 1), true);
  g.essential[0] = false;
  for (int i = 1; i <= n; ++i) g.graph.edges.push_back({i, 0, i});
  return g;
}

CoxeterGraphMap partial_conjugation(const CoxeterGraph& star, int i, int j) {
  CoxeterGraphMap f = identity_map(star);
  f.images[static_cast<std::size_t>(i - 1)] = {j, kFlip, -j, i};
  validate(f);
  return f;
}

CoxeterGraphMap leaf_permutation(const CoxeterGraph& star, const std::vector<int>& perm) {
  CoxeterGraphMap f = identity_map(star);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    f.vertex_map[i + 1] = perm[i];
    f.images[i] = {perm[i]};
  }
  validate(f);
  return f;
}

} // namespace fbc::testkit
