#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "morseforge/complex.hpp"

namespace morseforge {

/// Bipartite graph in CSR form, edges stored from the left side.
struct BipartiteGraph {
  std::int32_t leftCount = 0;
  std::int32_t rightCount = 0;
  std::vector<std::int32_t> start{0};
  std::vector<std::int32_t> adj;

  static BipartiteGraph fromEdges(std::int32_t left, std::int32_t right,
                                  const std::vector<std::pair<std::int32_t, std::int32_t>>& edges);
};

struct BipartiteMatching {
  std::vector<std::int32_t> mateLeft;   // -1 if free
  std::vector<std::int32_t> mateRight;  // -1 if free
  std::size_t size = 0;
};

/// Hopcroft-Karp. Left vertices and adjacency lists are scanned in stored
/// order, so equal inputs give equal matchings.
BipartiteMatching maximumMatching(const BipartiteGraph& g);

/// Set of Hasse-graph pairs (lower, upper) with dim(upper) = dim(lower) + 1.
struct Matching {
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::size_t size() const { return pairs.size(); }
};

/// Maximum matching of the whole Hasse graph, bipartitioned into even and
/// odd dimensions. Pairs are returned sorted by lower node.
Matching maximumMatching(const SimplicialComplex& K);

/// Maximum matching of a single interface, in local indices
/// (left = upper d-simplices, right = lower (d-1)-simplices).
BipartiteMatching maximumMatching(const InterfaceView& g);

}  // namespace morseforge
