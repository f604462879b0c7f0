#pragma once

#include <map>
#include <vector>

#include "fbc/freegroup.hpp"
#include "fbc/linalg.hpp"

namespace fbc {

using Perm = std::vector<int>;

Perm perm_identity(int degree);
/// (p o q)(x) = p(q(x)); this is the group product p * q.
Perm perm_compose(const Perm& p, const Perm& q);
Perm perm_inverse(const Perm& p);
bool perm_is_odd(const Perm& p);
void validate_perm(const Perm& p, int degree);

/// Generator images of a quotient: a_1..a_n followed by t.
struct FiniteQuotient {
  int degree = 1;
  std::vector<Perm> gens;
};

/// Closure of the generated permutation group with cached structure.
class EnumeratedGroup {
public:
  EnumeratedGroup() = default;
  EnumeratedGroup(int degree, const std::vector<Perm>& gens, std::size_t order_bound = 100000);

  std::size_t order() const { return elements_.size(); }
  int degree() const { return degree_; }
  int num_gens() const { return static_cast<int>(gen_elem_.size()); }
  const Perm& element(int i) const { return elements_[static_cast<std::size_t>(i)]; }
  int index_of(const Perm& p) const;
  int identity() const { return identity_; }
  int gen(int g) const { return gen_elem_[static_cast<std::size_t>(g)]; }  // 0-based
  int multiply(int a, int b) const;
  int inverse(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  int power(int a, long k) const;
  int element_order(int a) const { return order_[static_cast<std::size_t>(a)]; }
  /// Word in generators 1..num_gens (signed).
  int evaluate(const Letters& w) const;
  /// x times a single signed generator.
  int step(int x, int letter) const;
  int class_of(int a) const { return class_[static_cast<std::size_t>(a)]; }
  int num_classes() const { return num_classes_; }
  bool conjugate(int a, int b) const { return class_of(a) == class_of(b); }

private:
  int degree_ = 1;
  std::vector<Perm> elements_;
  std::map<Perm, int> index_;
  std::vector<int> gen_elem_, gen_inv_;
  std::vector<std::vector<int>> right_;  // right_[x][2g + s]: x * gen^{+-1}
  std::vector<int> inverse_, order_, class_;
  int identity_ = 0;
  int num_classes_ = 0;
};

/// Conjugacy classes merged when generated cyclic subgroups are conjugate.
struct ZhatClasses {
  std::vector<int> omega_of_class;             // conjugacy class -> omega
  std::vector<std::vector<int>> classes;       // omega -> conjugacy classes
  std::vector<std::vector<Rational>> indicator;  // omega -> value per element
  std::size_t size() const { return classes.size(); }
};
ZhatClasses zhat_classes(const EnumeratedGroup& q);

struct Representation {
  int dim = 1;
  std::vector<QMatrix> gen_matrices;  // same order as the quotient generators
};

/// Representation evaluated on every element of the group.
struct GroupRep {
  int dim = 1;
  std::vector<QMatrix> mat;  // indexed by element
  std::vector<Rational> character() const;
};

/// Extends generator matrices multiplicatively; InputError if they do not
/// define a representation of the enumerated group.
GroupRep extend_representation(const EnumeratedGroup& q, const Representation& r);
GroupRep trivial_rep(const EnumeratedGroup& q);

} // namespace fbc
