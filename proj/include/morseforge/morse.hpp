#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "morseforge/complex.hpp"
#include "morseforge/gradient.hpp"
#include "morseforge/matching.hpp"

namespace morseforge {

enum class AlgorithmKind { Naive, Frontier, Interface, MinFacet, Reduction, Coreduction };

std::string_view algorithmName(AlgorithmKind kind);
std::optional<AlgorithmKind> parseAlgorithm(std::string_view name);
inline constexpr AlgorithmKind kAllAlgorithms[] = {
    AlgorithmKind::Naive,     AlgorithmKind::Frontier,  AlgorithmKind::Interface,
    AlgorithmKind::MinFacet,  AlgorithmKind::Reduction, AlgorithmKind::Coreduction};

enum class Mode { Auto, Manifold, NonManifold };

struct AlgorithmOptions {
  Mode mode = Mode::Auto;
  /// Run maximum matching before cycle removal in intermediate stages.
  bool prematch = true;
};

/// Forward/backward counts of one edge-component found in a d-interface.
struct ComponentStat {
  int d = 0;
  std::size_t forward = 0;
  std::size_t backward = 0;
};

/// Min-facet components processed at one interface and the largest facet
/// degree any of them had.
struct MinFacetStageStat {
  int d = 0;
  std::size_t components = 0;
  int maxDegree = 0;
};

struct AlgorithmOutput {
  GradientField field;
  std::vector<ComponentStat> components;
  std::vector<MinFacetStageStat> minFacetStages;
  bool manifoldMode = false;
};

/// Pairs (lower, upper) chosen for one interface stage, global ids.
using StageMatching = std::vector<std::pair<NodeId, NodeId>>;

/// Matching restricted to one interface, in the view's local indices.
struct InterfaceMatching {
  std::vector<std::int32_t> mateUpper;  // upper -> lower, -1 if free
  std::vector<std::int32_t> mateLower;  // lower -> upper, -1 if free

  static InterfaceMatching empty(const InterfaceView& g);
  static InterfaceMatching maximum(const InterfaceView& g);
  StageMatching toStage(const InterfaceView& g) const;
};

/// Breadth-first cycle removal over edge-components of one interface.
///
/// Up-edges are the matched pairs of `m`. An edge-component grows from a
/// seed up-edge by visiting leading up-edges: an up-edge (a, b) leads from
/// (a0, b0) when a is a facet of b0 other than a0. Each leading up-edge is
/// kept (forward) unless adding the facet-edges of its upper simplex closes
/// a directed cycle, in which case the pair is dissolved (backward).
/// Cycle tests run against an incrementally maintained topological order of
/// the lower level.
class FrontierClassifier {
 public:
  enum class State : std::uint8_t { Unvisited, Forward, Backward };

  struct Component {
    int d = 0;
    std::int32_t seed = -1;
    /// Upper simplices whose facet-edges belong to the component.
    std::vector<std::int32_t> uppers;
    std::vector<std::int32_t> forward;
    std::vector<std::int32_t> backward;

    ComponentStat stat() const { return {d, forward.size(), backward.size()}; }
  };

  FrontierClassifier(const InterfaceView& g, InterfaceMatching& m);

  /// BFSComponent from an unvisited matched upper simplex.
  Component expand(std::int32_t seedUpper);
  /// Expands every remaining up-edge in canonical order.
  std::vector<ComponentStat> run();

  State state(std::int32_t u) const { return state_[u]; }

 private:
  bool closesCycle(std::int32_t u) const;
  void commit(std::int32_t u);
  bool reaches(std::int32_t from, std::int32_t target) const;
  void addArc(std::int32_t x, std::int32_t y);

  const InterfaceView& g_;
  InterfaceMatching& m_;
  std::vector<State> state_;
  std::vector<std::vector<std::int32_t>> out_, in_;
  std::vector<std::int32_t> ord_;
  mutable std::vector<std::uint32_t> mark_;
  mutable std::uint32_t stamp_ = 0;
};

/// Cycle removal on an interface matching; returns per-component counts.
std::vector<ComponentStat> frontierEdges(const InterfaceView& g, InterfaceMatching& m);

/// Frontier edges on one interface followed by pairing every (d-1)-simplex
/// whose live cofacets are all unmatched with the first such cofacet.
StageMatching intermediateApx(const InterfaceView& g, bool prematch,
                              std::vector<ComponentStat>* stats = nullptr);

/// Depth-first spanning forest of the 1-interface. The first vertex of each
/// component stays critical; every other vertex is paired with its tree edge.
StageMatching dfsOptimal1Interface(const InterfaceView& g);

/// Depth-first spanning tree of the dual graph over live (D-1)-simplices.
/// Throws IntegrityError if that graph is disconnected.
StageMatching dfsOptimalDInterface(const SimplicialComplex& K, const Liveness& alive);

/// Records the stage pairs in `field`; kills every lower node of the stage
/// and every matched upper node.
void deleteAndReorient(Liveness& alive, GradientField& field, const InterfaceView& g,
                       const StageMatching& stage);

/// Live facet-degree bookkeeping for one interface with one bucket queue
/// per degree value.
class MinFacetTracker {
 public:
  MinFacetTracker(const SimplicialComplex& K, int d, const Liveness& alive);

  /// Min-facet component containing the canonically first d-simplex of
  /// minimum positive live facet degree; nullopt when no d-simplex has a
  /// live facet.
  std::optional<InterfaceView> extract(const Liveness& alive);
  /// Must be called for every (d-1)-simplex that dies.
  void lowerDied(NodeId tau, const Liveness& alive);
  int lastDegree() const { return lastDegree_; }
  int degree(NodeId sigma) const { return degree_[sigma - first_]; }

 private:
  const SimplicialComplex& K_;
  int d_;
  NodeId first_;
  std::vector<int> degree_;
  std::vector<std::vector<NodeId>> buckets_;  // min-heaps keyed by NodeId
  std::vector<std::uint32_t> mark_;
  std::uint32_t stamp_ = 0;
  int lastDegree_ = 0;
};

/// Stateless variant: recomputes facet degrees from `alive`.
std::optional<InterfaceView> extractMinFacetComponent(const SimplicialComplex& K, int d,
                                                      const Liveness& alive);

AlgorithmOutput naiveAlgorithm(const SimplicialComplex& K);
AlgorithmOutput frontierEdges(const SimplicialComplex& K);
AlgorithmOutput interfaceAlgorithm(const SimplicialComplex& K, AlgorithmOptions opts = {});
AlgorithmOutput minFacetAlgorithm(const SimplicialComplex& K, AlgorithmOptions opts = {});
AlgorithmOutput reductionHeuristic(const SimplicialComplex& K);
AlgorithmOutput coreductionHeuristic(const SimplicialComplex& K);

AlgorithmOutput runAlgorithm(AlgorithmKind kind, const SimplicialComplex& K,
                             AlgorithmOptions opts = {});

/// Resolves Auto against isClosedPseudomanifold; throws ModeError when
/// manifold mode is forced on a complex that is not a closed pseudomanifold.
bool resolveManifoldMode(const SimplicialComplex& K, Mode mode);

}  // namespace morseforge
