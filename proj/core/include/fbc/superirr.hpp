#pragma once

#include "fbc/linalg.hpp"

namespace fbc {

enum class SuperVerdict { CertifiedYes, CertifiedNo, Unknown };

struct SuperIrreducibility {
  SuperVerdict verdict = SuperVerdict::Unknown;
  int power_bound = 12;
  int witness_power = 0;  // k with char(M^k) reducible, for CertifiedNo
  const char* reason = "";
};

inline constexpr int kDefaultPowerBound = 12;

/// Semi-decision: no positive power of M preserves a proper rational subspace.
SuperIrreducibility super_irreducible_check(const ZMatrix& m, int power_bound = kDefaultPowerBound);

const char* to_string(SuperVerdict v);

} // namespace fbc
