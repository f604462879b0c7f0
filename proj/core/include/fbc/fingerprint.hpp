#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fbc/superirr.hpp"
#include "fbc/twisted.hpp"

namespace fbc {

struct Attachment {
  std::string label;
  FiniteQuotient quotient;
  Representation rep;
};

struct FingerprintInput {
  FreeEndo monodromy;
  std::optional<GraphMap> plus, minus;  // representatives of Phi and Phi^-1
  std::vector<Attachment> twisted;
};

struct StretchEntry {
  long double lambda = 0;
  bool irreducible = false;  // the representative has a single nonzero stratum
  bool train_track = false;
  std::vector<long double> strata;  // PF values of nonzero strata
};

struct LambdaPair {
  StretchEntry first, second;  // sorted by lambda
};

struct TwistedEntry {
  std::string label;
  QPoly delta0, delta1;
  Torsion tau;
  DeltaPair delta;
  Torsion tau_first, tau_second;  // tau and its reciprocal class, sorted
};

struct Fingerprint {
  int fibre_rank = 0;
  int b1 = 0;
  QPoly char_first, char_second;  // monic, sorted by canonical class
  RealPair nu_pair;
  std::optional<LambdaPair> lambda_pair;
  std::vector<TwistedEntry> twisted;  // sorted by label
};

Fingerprint compute_fingerprint(const FingerprintInput& in);

struct Verdict {
  bool distinguished = false;
  std::vector<std::string> witnesses;
  std::vector<std::string> checked;
};

/// InputError when the attachment labels differ.
Verdict compare(const Fingerprint& a, const Fingerprint& b, long double tol = 1e-9L);

// Random automorphisms and the genericity experiment --------------------------

/// The fixed generating set: swaps i<j, inversions, left and right multiplications.
std::vector<NielsenSymbol> nielsen_generating_set(int n);

/// i.i.d. uniform symbols; draw c of stream s depends only on (seed, s, c).
NielsenWord random_auto(int n, int length, std::uint64_t seed, std::uint64_t stream = 0);

struct ExperimentRow {
  int n = 0;
  int length = 0;
  int trials = 0;
  double frac_b1_one = 0, frac_super = 0, frac_both = 0;
  std::uint64_t seed = 0;
  int power_bound = kDefaultPowerBound;
};

std::vector<ExperimentRow> genericity_experiment(int n, const std::vector<int>& lengths, int trials,
                                                 std::uint64_t seed, int power_bound = kDefaultPowerBound,
                                                 unsigned threads = 0);

inline constexpr const char* kExperimentCsvHeader =
    "n,length,trials,frac_b1_one,frac_super,frac_both,seed,power_bound";
std::string experiment_csv(const std::vector<ExperimentRow>& rows);

} // namespace fbc
