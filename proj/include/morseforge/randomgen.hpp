#pragma once

#include <cstdint>
#include <vector>

#include "morseforge/complex.hpp"

namespace morseforge {

/// SplitMix64: state advances by the golden-ratio increment and each output
/// is a bijective mix of the new state. The stream is fully determined by
/// the seed, which makes fixtures reproducible in any language.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  /// Uniform double in [0, 1) from the top 53 bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::uint64_t state_;
};

struct GeneratorParams {
  int numVertices = 0;
  int D = 0;
  double pTop = 0.0;
  std::vector<double> pVec;
  std::uint64_t seed = 0;
};

/// Complete (D-1)-skeleton on numVertices vertices plus every D-simplex
/// independently with probability pTop, one draw per candidate in
/// lexicographic order. Throws ParameterError on invalid parameters.
SimplicialComplex meshulamWallach(const GeneratorParams& params);

/// Built upwards from dimension 0: a candidate d-simplex s + {v} with
/// v > max(s) for a present (d-1)-simplex s is drawn, in lexicographic
/// order, only when all its facets are present, and kept with probability
/// pVec[d]. Throws ParameterError on invalid parameters and
/// EmptyComplexError when no vertex survives.
SimplicialComplex type2Random(const GeneratorParams& params);

/// All simplices of the random Type-2 complex, grouped by dimension.
std::vector<std::vector<std::vector<Vertex>>> type2Simplices(const GeneratorParams& params);

}  // namespace morseforge
