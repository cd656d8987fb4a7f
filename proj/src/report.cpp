#include "morseforge/report.hpp"

#include <algorithm>
#include <numeric>

#include "morseforge/error.hpp"

namespace morseforge {

Rational Rational::of(std::int64_t num, std::int64_t den) {
  if (den == 0) throw RangeError("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const auto g = std::gcd(num, den);
  return g ? Rational{num / g, den / g} : Rational{0, 1};
}

std::string Rational::toString() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

std::size_t MorseReport::criticalTotal() const {
  return std::accumulate(criticalPerDim.begin(), criticalPerDim.end(), std::size_t{0});
}

MorseReport makeReport(const SimplicialComplex& K, const AlgorithmOutput& out,
                       AlgorithmKind kind, std::size_t matchingSize, double elapsedMs) {
  MorseReport r;
  r.algoName = std::string(algorithmName(kind));
  r.N = K.size();
  r.D = K.dimension();
  r.criticalPerDim = criticalPerDimension(K, out.field);
  r.regularTotal = out.field.regularCount();
  r.matchingUpperBound = 2 * matchingSize;
  r.frontierStats = out.components;
  r.minFacetStages = out.minFacetStages;
  r.manifoldMode = out.manifoldMode;
  r.elapsedMs = elapsedMs;
  return r;
}

Rational estimatedRatio(std::size_t regular, std::size_t matchingSize, std::size_t N,
                        std::size_t bettiSum) {
  const auto reachable = N >= bettiSum ? N - bettiSum : 0;
  const auto den = std::min(2 * matchingSize, reachable);
  if (den == 0) return {1, 1};
  return Rational::of(static_cast<std::int64_t>(regular), static_cast<std::int64_t>(den));
}

Rational estimatedRatio(const MorseReport& report, std::size_t bettiSum) {
  return estimatedRatio(report.regularTotal, report.matchingUpperBound / 2, report.N, bettiSum);
}

}  // namespace morseforge
