#include "morseforge/randomgen.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "morseforge/error.hpp"

namespace morseforge {

namespace {

void checkProbability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0))
    throw ParameterError(std::string(what) + " must lie in [0, 1], got " + std::to_string(p));
}

void checkShape(const GeneratorParams& p) {
  if (p.D < 0) throw ParameterError("dimension must be non-negative");
  if (p.numVertices <= p.D)
    throw ParameterError("need more vertices than the dimension (n=" +
                         std::to_string(p.numVertices) + ", D=" + std::to_string(p.D) + ")");
}

// Calls f on every k-subset of {0..n-1} in lexicographic order.
template <typename F>
void forEachSubset(int n, int k, F&& f) {
  std::vector<Vertex> s(k);
  for (int i = 0; i < k; ++i) s[i] = i;
  if (k > n) return;
  for (;;) {
    f(s);
    int i = k - 1;
    while (i >= 0 && s[i] == n - k + i) --i;
    if (i < 0) return;
    ++s[i];
    for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
  }
}

}  // namespace

SimplicialComplex meshulamWallach(const GeneratorParams& params) {
  checkShape(params);
  checkProbability(params.pTop, "pTop");
  std::vector<std::vector<Vertex>> simplices;
  if (params.D > 0)
    forEachSubset(params.numVertices, params.D, [&](const auto& s) { simplices.push_back(s); });
  SplitMix64 rng(params.seed);
  forEachSubset(params.numVertices, params.D + 1, [&](const auto& s) {
    if (rng.bernoulli(params.pTop)) simplices.push_back(s);
  });
  return SimplicialComplex::fromMaximalSimplices(simplices);
}

std::vector<std::vector<std::vector<Vertex>>> type2Simplices(const GeneratorParams& params) {
  checkShape(params);
  if (params.pVec.size() != static_cast<std::size_t>(params.D) + 1)
    throw ParameterError("pVec needs D+1 = " + std::to_string(params.D + 1) + " entries, got " +
                         std::to_string(params.pVec.size()));
  for (double p : params.pVec) checkProbability(p, "pVec entry");

  SplitMix64 rng(params.seed);
  std::vector<std::vector<std::vector<Vertex>>> levels(params.D + 1);
  for (Vertex v = 0; v < params.numVertices; ++v)
    if (rng.bernoulli(params.pVec[0])) levels[0].push_back({v});

  std::vector<Vertex> cand, facet;
  for (int d = 1; d <= params.D; ++d) {
    const auto& prev = levels[d - 1];  // sorted lexicographically by construction
    for (const auto& s : prev) {
      for (Vertex v = s.back() + 1; v < params.numVertices; ++v) {
        cand = s;
        cand.push_back(v);
        bool closed = true;
        // The facet dropping v is s itself; check the others.
        for (int k = 0; k < d && closed; ++k) {
          facet.clear();
          for (int i = 0; i <= d; ++i)
            if (i != k) facet.push_back(cand[i]);
          closed = std::binary_search(prev.begin(), prev.end(), facet);
        }
        if (closed && rng.bernoulli(params.pVec[d])) levels[d].push_back(cand);
      }
    }
  }
  return levels;
}

SimplicialComplex type2Random(const GeneratorParams& params) {
  auto levels = type2Simplices(params);
  std::vector<std::vector<Vertex>> all;
  for (auto& lvl : levels)
    for (auto& s : lvl) all.push_back(std::move(s));
  if (all.empty()) throw EmptyComplexError("type-2 generator produced no vertices");
  return SimplicialComplex::fromMaximalSimplices(all);
}

}  // namespace morseforge
