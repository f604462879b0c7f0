#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fbc/linalg.hpp"
#include "fbc/rational.hpp"

namespace fbc {

/// Letters are signed generator indices: +i is x_i, -i is x_i^{-1}.
using Letters = std::vector<int>;

struct FreeWord {
  int rank = 0;
  Letters letters;

  friend bool operator==(const FreeWord&, const FreeWord&) = default;
  bool empty() const { return letters.empty(); }
  std::size_t length() const { return letters.size(); }
};

/// Free reduction; throws InputError on zero or out-of-range letters.
FreeWord reduce(int rank, const Letters& letters);
Letters free_reduce(const Letters& letters);
Letters inverse_letters(const Letters& w);
FreeWord inverse(const FreeWord& w);
FreeWord multiply(const FreeWord& a, const FreeWord& b);

struct NielsenSymbol {
  enum class Kind { Swap, Invert, LeftMul, RightMul };
  Kind kind = Kind::Swap;
  int i = 1;
  int j = 2;  // unused for Invert

  friend bool operator==(const NielsenSymbol& a, const NielsenSymbol& b) {
    return a.kind == b.kind && a.i == b.i && (a.kind == Kind::Invert || a.j == b.j);
  }
  std::string name() const;
};

struct NielsenWord {
  int rank = 0;
  std::vector<NielsenSymbol> factors;
};

void validate(const NielsenWord& w);

struct FreeEndo {
  int rank = 0;
  std::vector<FreeWord> images;
  std::optional<NielsenWord> nielsen;  // kept when known so the inverse is exact

  static FreeEndo identity(int rank);
  /// Builds from raw letter lists, reducing each image.
  static FreeEndo from_images(int rank, const std::vector<Letters>& images);
};

FreeWord apply_endo(const FreeEndo& e, const FreeWord& w);
/// x_i -> e1(e2(x_i))
FreeEndo compose(const FreeEndo& e1, const FreeEndo& e2);
bool same_images(const FreeEndo& a, const FreeEndo& b);

FreeEndo elementary(int rank, const NielsenSymbol& s);
FreeEndo elementary_inverse(int rank, const NielsenSymbol& s);
/// f_1 o f_2 o ... o f_k
FreeEndo endo_from_nielsen(const NielsenWord& w);
/// f_k^{-1} o ... o f_1^{-1}
FreeEndo inverse_from_nielsen(const NielsenWord& w);
/// Exact inverse when the Nielsen word is attached; InputError otherwise.
FreeEndo inverse_endo(const FreeEndo& e);

/// Stallings folding of the wedge of image loops; true iff it folds to the rose.
bool is_automorphism(const FreeEndo& e);

/// M(i, j) = exponent sum of x_{i+1} in e(x_{j+1}).
ZMatrix abelianization_matrix(const FreeEndo& e);

/// Finite formal sum of reduced words with rational coefficients.
struct GroupRingElt {
  int rank = 0;
  std::map<Letters, Rational> terms;

  void add(const Letters& w, const Rational& c);
  friend bool operator==(const GroupRingElt& a, const GroupRingElt& b) {
    return a.rank == b.rank && a.terms == b.terms;
  }
  friend GroupRingElt operator+(GroupRingElt a, const GroupRingElt& b);
  friend GroupRingElt operator-(GroupRingElt a, const GroupRingElt& b);
  friend GroupRingElt operator*(const GroupRingElt& a, const GroupRingElt& b);
  static GroupRingElt word(int rank, const Letters& w, const Rational& c = 1);
};

/// Fox derivative d w / d x_i (1-based i).
GroupRingElt fox_derivative(const FreeWord& w, int i);

std::string word_to_string(const Letters& w);

} // namespace fbc
