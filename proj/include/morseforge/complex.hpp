#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace morseforge {

using Vertex = std::int64_t;

/// Global node id of a simplex in the Hasse graph. Ids follow the canonical
/// order: by dimension, then lexicographically by vertex sequence.
using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = -1;

/// Per-node liveness flags indexed by NodeId (1 = alive).
using Liveness = std::vector<std::uint8_t>;

/// A simplex in canonical form: strictly increasing vertex ids.
class Simplex {
 public:
  Simplex() = default;

  /// Sorts the vertices; throws MalformedInputError on an empty list,
  /// a negative id or a repeated vertex.
  explicit Simplex(std::vector<Vertex> vertices);

  int dim() const { return static_cast<int>(vertices_.size()) - 1; }
  std::span<const Vertex> vertices() const { return vertices_; }
  std::string toString() const;

  friend bool operator==(const Simplex&, const Simplex&) = default;
  friend auto operator<=>(const Simplex& a, const Simplex& b) {
    if (a.vertices_.size() != b.vertices_.size())
      return a.vertices_.size() <=> b.vertices_.size();
    return a.vertices_ <=> b.vertices_;
  }

 private:
  std::vector<Vertex> vertices_;
};

/// Downward-closed simplicial complex with precomputed Hasse adjacency.
///
/// Simplices of each dimension are stored in lexicographic order of their
/// vertex sequences. Facet and cofacet lists are sorted by NodeId, which for
/// facets means the facet omitting the last vertex comes first.
/// Immutable after construction.
class SimplicialComplex {
 public:
  /// Downward closure of the given simplices. Non-maximal and repeated
  /// entries are absorbed.
  static SimplicialComplex fromMaximalSimplices(
      const std::vector<std::vector<Vertex>>& simplices);

  int dimension() const { return static_cast<int>(offset_.size()) - 2; }
  std::size_t size() const { return dim_.size(); }
  std::size_t count(int d) const;

  NodeId id(int d, std::size_t index) const {
    return static_cast<NodeId>(offset_[d] + index);
  }
  NodeId firstId(int d) const { return static_cast<NodeId>(offset_[d]); }
  NodeId endId(int d) const { return static_cast<NodeId>(offset_[d + 1]); }
  int dim(NodeId v) const { return dim_[v]; }
  std::size_t indexInDim(NodeId v) const { return v - offset_[dim_[v]]; }

  std::span<const Vertex> vertices(NodeId v) const;
  Simplex simplex(NodeId v) const;

  std::span<const NodeId> facets(NodeId v) const {
    return {facetList_.data() + facetStart_[v], facetList_.data() + facetStart_[v + 1]};
  }
  std::span<const NodeId> cofacets(NodeId v) const {
    return {cofacetList_.data() + cofacetStart_[v],
            cofacetList_.data() + cofacetStart_[v + 1]};
  }

  /// Oriented incidence [sigma : tau] in {-1, 0, +1}. For tau obtained by
  /// deleting the k-th vertex of sigma the value is (-1)^k.
  int incidence(NodeId sigma, NodeId tau) const;

  std::optional<NodeId> find(std::span<const Vertex> sortedVertices) const;
  std::optional<NodeId> find(const Simplex& s) const { return find(s.vertices()); }

  /// Simplices with no cofacets, in canonical order.
  std::vector<NodeId> maximalSimplices() const;

  /// Total number of (facet, simplex) incidences, i.e. Hasse edges.
  std::size_t edgeCount() const { return facetList_.size(); }

 private:
  SimplicialComplex() = default;

  std::vector<std::size_t> offset_;           // size D+2
  std::vector<std::vector<Vertex>> verts_;    // per dim, stride d+1
  std::vector<std::int8_t> dim_;              // per node
  std::vector<std::size_t> facetStart_;
  std::vector<NodeId> facetList_;
  std::vector<std::size_t> cofacetStart_;
  std::vector<NodeId> cofacetList_;
};

/// Parses the maximal-simplex list format: one simplex per line, whitespace
/// separated non-negative integer vertex ids, '#' comment lines and blank
/// lines ignored.
std::vector<std::vector<Vertex>> readSimplexList(std::istream& in);
SimplicialComplex readComplex(std::istream& in);
SimplicialComplex loadComplex(const std::string& path);

/// Writes the maximal simplices of `K`, one per line.
void writeComplex(std::ostream& out, const SimplicialComplex& K);

long long eulerCharacteristic(const SimplicialComplex& K);

/// Bipartite view of the d-interface restricted to a set of live nodes.
/// Adjacency is kept in local indices: upper[i] is a d-simplex,
/// lower[j] a (d-1)-simplex, both in canonical order.
struct InterfaceView {
  int d = 0;
  std::vector<NodeId> upper;
  std::vector<NodeId> lower;
  std::vector<std::int32_t> upStart, upAdj;    // upper -> lower (facets)
  std::vector<std::int32_t> lowStart, lowAdj;  // lower -> upper (cofacets)

  std::span<const std::int32_t> facetsOf(std::int32_t u) const {
    return {upAdj.data() + upStart[u], upAdj.data() + upStart[u + 1]};
  }
  std::span<const std::int32_t> cofacetsOf(std::int32_t l) const {
    return {lowAdj.data() + lowStart[l], lowAdj.data() + lowStart[l + 1]};
  }
  std::size_t edgeCount() const { return upAdj.size(); }
  std::int32_t localLower(NodeId v) const;  // -1 when absent
  std::int32_t localUpper(NodeId v) const;  // -1 when absent
};

/// Full d-interface (every node alive). Throws RangeError unless 1 <= d <= D.
InterfaceView extractInterface(const SimplicialComplex& K, int d);
/// d-interface over live nodes: all live d-simplices and all live
/// (d-1)-simplices, with the incidences between them.
InterfaceView extractInterface(const SimplicialComplex& K, int d, const Liveness& alive);

/// Interface induced by the given d-simplices (canonical order, need not be
/// contiguous) together with their facets that are alive.
InterfaceView inducedInterface(const SimplicialComplex& K, int d,
                               std::vector<NodeId> upper, const Liveness& alive);

struct DualEdge {
  std::int32_t a = 0, b = 0;  // local node indices, a < b
  NodeId facet = kNoNode;     // shared (D-1)-simplex
};

/// Graph on the D-simplices with an edge through every live (D-1)-simplex
/// that has exactly two cofacets.
struct DualGraph {
  std::vector<NodeId> nodes;
  std::vector<DualEdge> edges;
  std::vector<std::int32_t> start, incident;  // node -> edge indices

  std::size_t componentCount() const;
};

DualGraph buildDualGraph(const SimplicialComplex& K);
DualGraph buildDualGraph(const SimplicialComplex& K, const Liveness& alive);

/// Every (D-1)-simplex has exactly two cofacets and the dual graph is connected.
bool isClosedPseudomanifold(const SimplicialComplex& K);

}  // namespace morseforge
