#pragma once

#include <cstddef>

#include "morseforge/complex.hpp"
#include "morseforge/gradient.hpp"

namespace morseforge {

inline constexpr std::size_t kDefaultOracleCap = 16;

/// Cap read from MORSEFORGE_ORACLE_CAP, falling back to kDefaultOracleCap.
std::size_t oracleCap();

struct OracleResult {
  GradientField field;
  std::size_t optimum = 0;  // regular simplices
};

/// Exhaustive search over acyclic matchings. Throws OracleCapError when
/// K.size() exceeds `cap`.
OracleResult bruteForceOptimal(const SimplicialComplex& K, std::size_t cap);
OracleResult bruteForceOptimal(const SimplicialComplex& K);

}  // namespace morseforge
