#include "doctest.h"
#include "testutil.hpp"
#include "oracles.hpp"

using namespace fbc;
using namespace fbc::testkit;

namespace {

Letters L(std::initializer_list<int> l) { return Letters(l); }
FreeWord W(int rank, std::initializer_list<int> l) { return reduce(rank, Letters(l)); }

// Oracle: exponent sum vector of a word.
std::vector<long> exponent_sums(int rank, const Letters& w) {
  std::vector<long> v(static_cast<std::size_t>(rank), 0);
  for (int l : w) v[static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
  return v;
}

// Oracle: naive reduction by repeated scanning.
Letters naive_reduce(Letters w) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] == -w[i + 1]) {
        w.erase(w.begin() + static_cast<long>(i), w.begin() + static_cast<long>(i) + 2);
        changed = true;
        break;
      }
  }
  return w;
}

// Evaluate a group-ring element under the abelianizing map to Q[x1^+-1..] and then
// at the point where each generator is a given rational.
Rational eval_at(const GroupRingElt& a, const std::vector<Rational>& x) {
  Rational acc = 0;
  for (const auto& [w, c] : a.terms) {
    Rational v = 1;
    for (int l : w) v *= l > 0 ? x[static_cast<std::size_t>(l - 1)] : 1 / x[static_cast<std::size_t>(-l - 1)];
    acc += c * v;
  }
  return acc;
}

} // namespace

TEST_CASE("reduce: worked examples") {
  CHECK(W(2, {1, -1}).letters.empty());
  CHECK(W(2, {1, 2, -2, 1}).letters == L({1, 1}));
  CHECK(W(3, {2, -1, 1, -2, 3}).letters == L({3}));
}

TEST_CASE("reduce rejects letters outside the alphabet") {
  CHECK_THROWS_AS(reduce(2, L({1, 3})), InputError);
  CHECK_THROWS_AS(reduce(2, L({0})), InputError);
}

TEST_CASE("reduce agrees with naive rescanning and is idempotent") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    const Letters w = random_letters(rng, 3, 30);
    const Letters r = reduce(3, w).letters;
    CHECK(r == naive_reduce(w));
    CHECK(reduce(3, r).letters == r);
    CHECK(exponent_sums(3, r) == exponent_sums(3, w));
  }
}

TEST_CASE("apply_endo: worked examples") {
  const FreeEndo f = fibonacci();
  CHECK(apply_endo(f, W(2, {1, 2})).letters == L({2, 1, 2}));
  CHECK(apply_endo(f, W(2, {2, -1})).letters == L({1}));
  const FreeWord w = W(3, {1, -2, 3, 3});
  CHECK(apply_endo(FreeEndo::identity(3), w).letters == w.letters);
}

TEST_CASE("apply_endo is a homomorphism") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const FreeEndo e = endo_from_nielsen(random_nielsen(rng, 3, 6));
    const FreeWord a = reduce(3, random_letters(rng, 3, 10)), b = reduce(3, random_letters(rng, 3, 10));
    CHECK(apply_endo(e, multiply(a, b)).letters == multiply(apply_endo(e, a), apply_endo(e, b)).letters);
    CHECK(apply_endo(e, inverse(a)).letters == inverse(apply_endo(e, a)).letters);
  }
}

TEST_CASE("compose: worked examples") {
  const FreeEndo f = fibonacci();
  CHECK(same_images(compose(f, FreeEndo::identity(2)), f));
  const FreeEndo s = endo(2, {{2}, {1}});
  CHECK(same_images(compose(s, s), FreeEndo::identity(2)));
  CHECK(same_images(compose(f, f), endo(2, {{1, 2}, {2, 1, 2}})));
}

TEST_CASE("compose applies the right factor first and is associative") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const FreeEndo a = endo_from_nielsen(random_nielsen(rng, 3, 4));
    const FreeEndo b = endo_from_nielsen(random_nielsen(rng, 3, 4));
    const FreeEndo c = endo_from_nielsen(random_nielsen(rng, 3, 4));
    const FreeWord w = reduce(3, random_letters(rng, 3, 8));
    CHECK(apply_endo(compose(a, b), w).letters == apply_endo(a, apply_endo(b, w)).letters);
    CHECK(same_images(compose(compose(a, b), c), compose(a, compose(b, c))));
  }
}

TEST_CASE("Nielsen words: worked examples") {
  CHECK(same_images(endo_from_nielsen({2, {swap(1, 2)}}), endo(2, {{2}, {1}})));
  CHECK(same_images(endo_from_nielsen({2, {rightmul(2, 1)}}), endo(2, {{1}, {2, 1}})));
  CHECK(same_images(fibonacci(), endo(2, {{2}, {1, 2}})));
}

TEST_CASE("Nielsen word validation") {
  CHECK_THROWS_AS(endo_from_nielsen({2, {swap(1, 1)}}), InputError);
  CHECK_THROWS_AS(endo_from_nielsen({2, {rightmul(1, 3)}}), InputError);
  CHECK_THROWS_AS(endo_from_nielsen({0, {}}), InputError);
}

TEST_CASE("inverse_from_nielsen inverts on both sides") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 3;
    const NielsenWord w = random_nielsen(rng, n, 1 + trial % 9);
    const FreeEndo e = endo_from_nielsen(w), inv = inverse_from_nielsen(w);
    CHECK(same_images(compose(e, inv), FreeEndo::identity(n)));
    CHECK(same_images(compose(inv, e), FreeEndo::identity(n)));
    CHECK(same_images(inverse_endo(e), inv));
  }
}

TEST_CASE("is_automorphism: worked examples") {
  CHECK(is_automorphism(fibonacci()));
  CHECK_FALSE(is_automorphism(endo(2, {{1, 1}, {2}})));
  CHECK(is_automorphism(FreeEndo::identity(4)));
}

TEST_CASE("is_automorphism: Nielsen products pass, non-surjective images fail") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 3;
    CHECK(is_automorphism(endo_from_nielsen(random_nielsen(rng, n, 1 + trial % 10))));
  }
  // Abelianization with determinant other than +-1 cannot come from an automorphism.
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Letters> imgs;
    for (int i = 0; i < 2; ++i) imgs.push_back(free_reduce(random_letters(rng, 2, 6)));
    const FreeEndo e = endo(2, imgs);
    const Integer d = oracle::bareiss_det(abelianization_matrix(e));
    if (abs(d) != 1) CHECK_FALSE(is_automorphism(e));
  }
  CHECK_FALSE(is_automorphism(endo(2, {{1, 2, -1, -2}, {2}})));  // commutator image, det 0
  CHECK_FALSE(is_automorphism(endo(2, {{1, 2, 1}, {2, 1, 2}})));  // det 3
  CHECK_FALSE(is_automorphism(endo(2, {{1, 2}, {2, 1}})));  // det 0 but primitive images
}

TEST_CASE("abelianization_matrix: worked examples") {
  CHECK(abelianization_matrix(fibonacci()) == ZMatrix{{0, 1}, {1, 1}});
  CHECK(abelianization_matrix(FreeEndo::identity(3)) == z_identity(3));
  CHECK(abelianization_matrix(endo(2, {{2}, {1, 2, 2}})) == ZMatrix{{0, 1}, {1, 2}});
}

TEST_CASE("abelianization: column j is the exponent vector of the image of x_j, and it is functorial") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const FreeEndo e = endo_from_nielsen(random_nielsen(rng, 3, 7));
    const ZMatrix m = abelianization_matrix(e);
    for (int i = 0; i < 3; ++i) {
      const auto v = exponent_sums(3, e.images[static_cast<std::size_t>(i)].letters);
      for (int j = 0; j < 3; ++j) CHECK(m(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) == v[static_cast<std::size_t>(j)]);
    }
    CHECK(abs(oracle::bareiss_det(m)) == 1);
    const FreeEndo other = endo_from_nielsen(random_nielsen(rng, 3, 5));
    CHECK(abelianization_matrix(compose(e, other)) == m * abelianization_matrix(other));
  }
}

TEST_CASE("fox_derivative: worked examples") {
  CHECK(fox_derivative(W(2, {1, 2}), 2) == GroupRingElt::word(2, {1}));
  CHECK(fox_derivative(W(2, {-1}), 1) == GroupRingElt::word(2, {-1}, -1));
  CHECK(fox_derivative(W(2, {1, 2, -1}), 1) == GroupRingElt::word(2, {}) - GroupRingElt::word(2, {1, 2, -1}));
}

TEST_CASE("fundamental formula: w - 1 = sum_i (dw/dx_i)(x_i - 1)") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    const FreeWord w = reduce(3, random_letters(rng, 3, 12));
    GroupRingElt rhs;
    rhs.rank = 3;
    for (int i = 1; i <= 3; ++i)
      rhs = rhs + fox_derivative(w, i) * (GroupRingElt::word(3, {i}) - GroupRingElt::word(3, {}));
    CHECK(rhs == GroupRingElt::word(3, w.letters) - GroupRingElt::word(3, {}));
  }
}

TEST_CASE("Fox product rule after abelianized evaluation") {
  std::mt19937_64 rng(31);
  const std::vector<Rational> x{Rational(2), Rational(-3, 5), Rational(7, 2)};
  for (int trial = 0; trial < 100; ++trial) {
    const FreeWord u = reduce(3, random_letters(rng, 3, 8)), v = reduce(3, random_letters(rng, 3, 8));
    for (int i = 1; i <= 3; ++i) {
      const Rational lhs = eval_at(fox_derivative(multiply(u, v), i), x);
      const Rational rhs = eval_at(fox_derivative(u, i), x) +
                           eval_at(GroupRingElt::word(3, u.letters), x) * eval_at(fox_derivative(v, i), x);
      CHECK(lhs == rhs);
    }
  }
}
