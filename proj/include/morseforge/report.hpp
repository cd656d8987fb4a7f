#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "morseforge/morse.hpp"

namespace morseforge {

/// Non-negative fraction in lowest terms.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational of(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string toString() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b) {
    return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
  }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
};

struct MorseReport {
  std::string algoName;
  std::size_t N = 0;
  int D = 0;
  std::vector<std::size_t> criticalPerDim;
  std::size_t regularTotal = 0;
  /// 2|M| for a maximum matching of the whole Hasse graph.
  std::size_t matchingUpperBound = 0;
  std::vector<ComponentStat> frontierStats;
  std::vector<MinFacetStageStat> minFacetStages;
  bool manifoldMode = false;
  double elapsedMs = 0.0;

  std::size_t criticalTotal() const;
};

/// `matchingSize` is |M| of the whole-Hasse maximum matching.
MorseReport makeReport(const SimplicialComplex& K, const AlgorithmOutput& out,
                       AlgorithmKind kind, std::size_t matchingSize, double elapsedMs);

/// regular / min(2|M|, N - bettiSum); 1 when that minimum is 0.
Rational estimatedRatio(const MorseReport& report, std::size_t bettiSum);
Rational estimatedRatio(std::size_t regular, std::size_t matchingSize, std::size_t N,
                        std::size_t bettiSum);

}  // namespace morseforge
