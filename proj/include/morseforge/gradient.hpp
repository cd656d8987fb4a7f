#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "morseforge/complex.hpp"

namespace morseforge {

/// Discrete gradient vector field stored as a partial involution on nodes.
/// A pair (lower, upper) reorients the Hasse edge lower -> upper; every
/// other edge points down.
class GradientField {
 public:
  GradientField() = default;
  explicit GradientField(std::size_t nodeCount) : partner_(nodeCount, kNoNode) {}

  std::size_t nodeCount() const { return partner_.size(); }
  NodeId partner(NodeId v) const { return partner_[v]; }
  bool isCritical(NodeId v) const { return partner_[v] == kNoNode; }
  /// True when v is the lower end of its pair.
  bool isMatchedUp(NodeId v) const { return partner_[v] > v; }

  void pair(NodeId lower, NodeId upper);
  void unpair(NodeId v);

  std::size_t pairCount() const;
  std::size_t regularCount() const { return 2 * pairCount(); }
  /// (lower, upper) pairs ordered by lower node.
  std::vector<std::pair<NodeId, NodeId>> pairs() const;

  friend bool operator==(const GradientField&, const GradientField&) = default;

 private:
  std::vector<NodeId> partner_;
};

struct GvfVerdict {
  bool ok = true;
  std::string message;
  /// For an orientation cycle: the nodes along it, first node repeated at the end.
  std::vector<NodeId> cycle;

  explicit operator bool() const { return ok; }
};

/// Checks that the pairs are facet incidences, that no node is used twice,
/// and that the induced orientation of every interface is acyclic.
GvfVerdict verifyGVF(const SimplicialComplex& K,
                     std::span<const std::pair<NodeId, NodeId>> pairs);
GvfVerdict verifyGVF(const SimplicialComplex& K, const GradientField& field);

std::vector<std::size_t> criticalPerDimension(const SimplicialComplex& K,
                                              const GradientField& field);

/// Text dump, one pair per line: comma-separated vertex lists of the lower
/// and upper simplex separated by a space, e.g. "0,1 0,1,2".
void writeGradientField(std::ostream& out, const SimplicialComplex& K, const GradientField& field);

/// Parses a dump against `K`. Simplices absent from `K` raise
/// MalformedInputError; structural problems are left to verifyGVF.
std::vector<std::pair<NodeId, NodeId>> readGradientPairs(std::istream& in,
                                                         const SimplicialComplex& K);

}  // namespace morseforge
