#include "fbc/permgroup.hpp"

#include <deque>
#include <numeric>

namespace fbc {

Perm perm_identity(int degree) {
  Perm p(static_cast<std::size_t>(degree));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

Perm perm_compose(const Perm& p, const Perm& q) {
  expect(p.size() == q.size(), "permutation degree mismatch");
  Perm r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[x] = p[static_cast<std::size_t>(q[x])];
  return r;
}

Perm perm_inverse(const Perm& p) {
  Perm r(p.size());
  for (std::size_t x = 0; x < p.size(); ++x) r[static_cast<std::size_t>(p[x])] = static_cast<int>(x);
  return r;
}

bool perm_is_odd(const Perm& p) {
  std::vector<bool> seen(p.size(), false);
  int transpositions = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t x = i; !seen[x]; x = static_cast<std::size_t>(p[x])) {
      seen[x] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 1;
}

void validate_perm(const Perm& p, int degree) {
  require(static_cast<int>(p.size()) == degree, "permutation has the wrong degree");
  std::vector<bool> seen(p.size(), false);
  for (int x : p) {
    require(x >= 0 && x < degree, "permutation entry out of range");
    require(!seen[static_cast<std::size_t>(x)], "permutation repeats an entry");
    seen[static_cast<std::size_t>(x)] = true;
  }
}

EnumeratedGroup::EnumeratedGroup(int degree, const std::vector<Perm>& gens, std::size_t bound)
    : degree_(degree) {
  require(degree >= 1, "permutation degree must be positive");
  for (const auto& g : gens) validate_perm(g, degree);
  const Perm id = perm_identity(degree);
  elements_.push_back(id);
  index_[id] = 0;
  identity_ = 0;
  std::vector<Perm> moves;
  for (const auto& g : gens) {
    moves.push_back(g);
    moves.push_back(perm_inverse(g));
  }
  std::deque<int> q{0};
  right_.push_back(std::vector<int>(moves.size(), -1));
  while (!q.empty()) {
    int x = q.front();
    q.pop_front();
    for (std::size_t s = 0; s < moves.size(); ++s) {
      Perm y = perm_compose(elements_[static_cast<std::size_t>(x)], moves[s]);
      auto it = index_.find(y);
      int yi;
      if (it == index_.end()) {
        require(elements_.size() < bound, "quotient exceeds the order bound");
        yi = static_cast<int>(elements_.size());
        index_.emplace(y, yi);
        elements_.push_back(std::move(y));
        right_.push_back(std::vector<int>(moves.size(), -1));
        q.push_back(yi);
      } else {
        yi = it->second;
      }
      right_[static_cast<std::size_t>(x)][s] = yi;
    }
  }
  for (std::size_t g = 0; g < gens.size(); ++g) {
    gen_elem_.push_back(index_.at(gens[g]));
    gen_inv_.push_back(index_.at(moves[2 * g + 1]));
  }
  const std::size_t N = elements_.size();
  inverse_.resize(N);
  order_.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    inverse_[i] = index_.at(perm_inverse(elements_[i]));
    int o = 1;
    Perm p = elements_[i];
    while (p != id) {
      p = perm_compose(p, elements_[i]);
      ++o;
    }
    order_[i] = o;
  }
  class_.assign(N, -1);
  for (std::size_t i = 0; i < N; ++i) {
    if (class_[i] >= 0) continue;
    const int c = num_classes_++;
    std::deque<int> cq{static_cast<int>(i)};
    class_[i] = c;
    while (!cq.empty()) {
      int x = cq.front();
      cq.pop_front();
      for (const auto& g : gens) {
        Perm y = perm_compose(perm_compose(g, elements_[static_cast<std::size_t>(x)]), perm_inverse(g));
        int yi = index_.at(y);
        if (class_[static_cast<std::size_t>(yi)] < 0) {
          class_[static_cast<std::size_t>(yi)] = c;
          cq.push_back(yi);
        }
      }
    }
  }
}

int EnumeratedGroup::index_of(const Perm& p) const {
  auto it = index_.find(p);
  require(it != index_.end(), "permutation is not in the enumerated group");
  return it->second;
}

int EnumeratedGroup::multiply(int a, int b) const {
  return index_.at(perm_compose(elements_[static_cast<std::size_t>(a)], elements_[static_cast<std::size_t>(b)]));
}

int EnumeratedGroup::power(int a, long k) const {
  int base = k >= 0 ? a : inverse(a);
  long e = k >= 0 ? k : -k;
  int acc = identity_;
  for (long i = 0; i < e % order_[static_cast<std::size_t>(a)]; ++i) acc = multiply(acc, base);
  return acc;
}

int EnumeratedGroup::step(int x, int l) const {
  require(l != 0 && std::abs(l) <= num_gens(), "word letter outside the quotient generators");
  const std::size_t s = 2 * static_cast<std::size_t>(std::abs(l) - 1) + (l < 0 ? 1 : 0);
  return right_[static_cast<std::size_t>(x)][s];
}

int EnumeratedGroup::evaluate(const Letters& w) const {
  int x = identity_;
  for (int l : w) x = step(x, l);
  return x;
}

ZhatClasses zhat_classes(const EnumeratedGroup& q) {
  const int C = q.num_classes();
  std::vector<int> uf(static_cast<std::size_t>(C));
  std::iota(uf.begin(), uf.end(), 0);
  auto find = [&](int x) {
    while (uf[static_cast<std::size_t>(x)] != x) x = uf[static_cast<std::size_t>(x)];
    return x;
  };
  for (std::size_t i = 0; i < q.order(); ++i) {
    const int a = static_cast<int>(i);
    const int o = q.element_order(a);
    for (int k = 2; k < o; ++k) {
      if (std::gcd(k, o) != 1) continue;
      int x = find(q.class_of(a)), y = find(q.class_of(q.power(a, k)));
      if (x != y) uf[static_cast<std::size_t>(std::max(x, y))] = std::min(x, y);
    }
  }
  ZhatClasses z;
  std::vector<int> label(static_cast<std::size_t>(C), -1);
  z.omega_of_class.resize(static_cast<std::size_t>(C));
  for (int c = 0; c < C; ++c) {
    int r = find(c);
    if (label[static_cast<std::size_t>(r)] < 0) {
      label[static_cast<std::size_t>(r)] = static_cast<int>(z.classes.size());
      z.classes.emplace_back();
    }
    z.omega_of_class[static_cast<std::size_t>(c)] = label[static_cast<std::size_t>(r)];
    z.classes[static_cast<std::size_t>(label[static_cast<std::size_t>(r)])].push_back(c);
  }
  z.indicator.assign(z.classes.size(), std::vector<Rational>(q.order(), Rational(0)));
  for (std::size_t i = 0; i < q.order(); ++i)
    z.indicator[static_cast<std::size_t>(z.omega_of_class[static_cast<std::size_t>(q.class_of(static_cast<int>(i)))])][i] = 1;
  return z;
}

std::vector<Rational> GroupRep::character() const {
  std::vector<Rational> chi;
  for (const auto& m : mat) {
    Rational tr = 0;
    for (std::size_t i = 0; i < m.rows(); ++i) tr += m(i, i);
    chi.push_back(tr);
  }
  return chi;
}

GroupRep extend_representation(const EnumeratedGroup& q, const Representation& r) {
  require(r.dim >= 1, "representation dimension must be positive");
  require(static_cast<int>(r.gen_matrices.size()) == q.num_gens(),
          "representation needs one matrix per quotient generator");
  for (const auto& m : r.gen_matrices) {
    require(m.rows() == static_cast<std::size_t>(r.dim) && m.cols() == static_cast<std::size_t>(r.dim),
            "representation matrix has the wrong size");
    require(sgn(determinant(m)) != 0, "representation matrix is not invertible");
  }
  std::vector<QMatrix> inv;
  for (const auto& m : r.gen_matrices) inv.push_back(inverse(m));
  GroupRep g;
  g.dim = r.dim;
  g.mat.assign(q.order(), QMatrix());
  std::vector<bool> done(q.order(), false);
  g.mat[static_cast<std::size_t>(q.identity())] = q_identity(static_cast<std::size_t>(r.dim));
  done[static_cast<std::size_t>(q.identity())] = true;
  std::deque<int> bfs{q.identity()};
  while (!bfs.empty()) {
    int x = bfs.front();
    bfs.pop_front();
    for (int s = 0; s < q.num_gens(); ++s)
      for (int sign : {1, -1}) {
        int step = q.evaluate(Letters{sign * (s + 1)});
        int xy = q.multiply(x, step);
        QMatrix m = g.mat[static_cast<std::size_t>(x)] *
                    (sign > 0 ? r.gen_matrices[static_cast<std::size_t>(s)] : inv[static_cast<std::size_t>(s)]);
        if (done[static_cast<std::size_t>(xy)]) {
          require(m == g.mat[static_cast<std::size_t>(xy)],
                  "generator matrices do not define a representation of the quotient");
        } else {
          g.mat[static_cast<std::size_t>(xy)] = m;
          done[static_cast<std::size_t>(xy)] = true;
          bfs.push_back(xy);
        }
      }
  }
  return g;
}

GroupRep trivial_rep(const EnumeratedGroup& q) {
  GroupRep g;
  g.dim = 1;
  g.mat.assign(q.order(), q_identity(1));
  return g;
}

} // namespace fbc
