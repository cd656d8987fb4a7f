#include <catch_amalgamated.hpp>

#include <cstdlib>

#include "corpus.hpp"
#include "oracles.hpp"
#include "morseforge/error.hpp"
#include "morseforge/morse.hpp"
#include "morseforge/oracle.hpp"
#include "morseforge/randomgen.hpp"
#include "morseforge/report.hpp"

using namespace morseforge;
using namespace morseforge::testing;

namespace {

std::size_t regular(const AlgorithmOutput& out) { return out.field.regularCount(); }

std::size_t critical(const SimplicialComplex& K, const AlgorithmOutput& out, int d) {
  return criticalPerDimension(K, out.field)[d];
}

Liveness allAlive(const SimplicialComplex& K) { return Liveness(K.size(), 1); }

NodeId node(const SimplicialComplex& K, std::vector<Vertex> vs) { return *K.find(vs); }

// Every floor and structural property a field from `kind` must satisfy.
void checkContract(const SimplicialComplex& K, AlgorithmKind kind, const AlgorithmOutput& out,
                   const std::vector<long long>& betti) {
  INFO(algorithmName(kind));
  const auto verdict = verifyGVF(K, out.field);
  INFO(verdict.message);
  REQUIRE(verdict.ok);
  CHECK(acyclicByKahn(K, out.field.pairs()));
  const auto crit = criticalPerDimension(K, out.field);
  std::size_t critTotal = 0;
  for (int d = 0; d <= K.dimension(); ++d) {
    CHECK(static_cast<long long>(crit[d]) >= betti[d]);
    critTotal += crit[d];
  }
  CHECK(regular(out) % 2 == 0);
  CHECK(regular(out) + critTotal == K.size());

  const std::size_t M = maximumMatching(K).size();
  const std::size_t D = K.dimension();
  if (kind == AlgorithmKind::Naive) CHECK(regular(out) * (D + 1) >= 2 * M);
  if (kind == AlgorithmKind::Frontier) {
    CHECK(regular(out) * (D * D + D + 1) >= 2 * M * (D + 1));
    for (const auto& c : out.components) {
      const std::size_t d = c.d;
      CHECK(c.forward >= 1);
      CHECK(c.forward * (d * d + d + 1) >= (c.forward + c.backward) * (d + 1));
      if (D == 2) CHECK(11 * c.forward >= 5 * (c.forward + c.backward));
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------

TEST_CASE("naive algorithm examples") {
  const auto point = SimplicialComplex::fromMaximalSimplices({{0}});
  const auto p = naiveAlgorithm(point);
  CHECK(regular(p) == 0);
  CHECK(critical(point, p, 0) == 1);

  const auto hollow = simplexBoundary(2);
  const auto h = naiveAlgorithm(hollow);
  CHECK(regular(h) >= 2);
  CHECK(verifyGVF(hollow, h.field).ok);

  const auto solid = solidSimplex(2);
  CHECK(regular(naiveAlgorithm(solid)) >= 2);
}

TEST_CASE("frontier edges examples") {
  SECTION("path with two edges") {
    const auto K = SimplicialComplex::fromMaximalSimplices({{0, 1}, {1, 2}});
    CHECK(regular(frontierEdges(K)) == 4);
  }
  SECTION("projective plane floor") {
    const auto K = fromData("rp2.txt");
    CHECK(maximumMatching(K).size() == 15);
    const auto out = frontierEdges(K);
    CHECK(regular(out) >= 14);
  }
  SECTION("acyclic maximum matching keeps every pair") {
    const auto K = SimplicialComplex::fromMaximalSimplices({{0, 1}, {1, 2}});
    const auto out = frontierEdges(K);
    std::size_t backward = 0;
    for (const auto& c : out.components) backward += c.backward;
    CHECK(backward == 0);
    CHECK(regular(out) == 2 * maximumMatching(K).size());
  }
}

TEST_CASE("BFS components") {
  SECTION("seed without leading up-edges") {
    const auto K = SimplicialComplex::fromMaximalSimplices({{0, 1}});
    const auto g = extractInterface(K, 1);
    auto m = InterfaceMatching::empty(g);
    m.mateUpper[0] = 0;
    m.mateLower[0] = 0;
    FrontierClassifier fc(g, m);
    const auto c = fc.expand(0);
    CHECK(c.forward.size() == 1);
    CHECK(c.backward.empty());
    CHECK(c.uppers == std::vector<std::int32_t>{0});
  }
  SECTION("cyclic matching on the hollow triangle") {
    const auto K = simplexBoundary(2);
    const auto g = extractInterface(K, 1);
    // upper: 01, 02, 12; lower: 0, 1, 2. Pairs 0-01, 1-12, 2-02.
    auto m = InterfaceMatching::empty(g);
    const std::pair<int, int> pairs[] = {{0, 0}, {1, 2}, {2, 1}};
    for (auto [l, u] : pairs) {
      m.mateLower[l] = u;
      m.mateUpper[u] = l;
    }
    FrontierClassifier fc(g, m);
    const auto c = fc.expand(0);
    CHECK(c.forward.size() == 2);
    CHECK(c.backward.size() == 1);
    std::size_t kept = 0;
    for (auto mu : m.mateUpper) kept += mu >= 0;
    CHECK(kept == 2);
    CHECK(verifyGVF(K, m.toStage(g)).ok);
    CHECK_THROWS_AS(fc.expand(0), RangeError);
  }
  SECTION("disjoint matched edges form separate components") {
    const auto K = SimplicialComplex::fromMaximalSimplices({{0, 1}, {2, 3}});
    const auto g = extractInterface(K, 1);
    auto m = InterfaceMatching::maximum(g);
    const auto stats = frontierEdges(g, m);
    REQUIRE(stats.size() == 2);
    for (const auto& s : stats) {
      CHECK(s.forward == 1);
      CHECK(s.backward == 0);
    }
  }
  SECTION("retained up-edges were classified forward") {
    for (const auto& [name, K, manifold] : corpus()) {
      for (int d = 1; d <= K.dimension(); ++d) {
        const auto g = extractInterface(K, d);
        auto m = InterfaceMatching::maximum(g);
        FrontierClassifier fc(g, m);
        fc.run();
        for (std::size_t u = 0; u < g.upper.size(); ++u) {
          if (m.mateUpper[u] >= 0)
            CHECK(fc.state(static_cast<std::int32_t>(u)) == FrontierClassifier::State::Forward);
          else if (fc.state(static_cast<std::int32_t>(u)) != FrontierClassifier::State::Unvisited)
            CHECK(fc.state(static_cast<std::int32_t>(u)) == FrontierClassifier::State::Backward);
        }
        CHECK(verifyGVF(K, m.toStage(g)).ok);
      }
    }
  }
  SECTION("every backward edge would close a cycle") {
    // The forward set only grows, so a cycle seen at classification time is
    // still present in the final orientation. Checked with Kahn's algorithm.
    for (const auto& [name, K, manifold] : corpus()) {
      for (int d = 1; d <= K.dimension(); ++d) {
        const auto g = extractInterface(K, d);
        auto m = InterfaceMatching::maximum(g);
        const auto original = m.mateUpper;
        FrontierClassifier fc(g, m);
        fc.run();
        const auto kept = m.toStage(g);
        for (std::size_t u = 0; u < g.upper.size(); ++u) {
          if (fc.state(static_cast<std::int32_t>(u)) != FrontierClassifier::State::Backward)
            continue;
          auto withEdge = kept;
          withEdge.emplace_back(g.lower[original[u]], g.upper[u]);
          INFO(name << " d=" << d << " upper " << u);
          CHECK_FALSE(acyclicByKahn(K, withEdge));
        }
      }
    }
  }
}

TEST_CASE("interface algorithm examples") {
  SECTION("boundary of the tetrahedron") {
    const auto K = simplexBoundary(3);
    const auto out = interfaceAlgorithm(K);
    CHECK(out.manifoldMode);
    CHECK(critical(K, out, 0) == 1);
    CHECK(critical(K, out, 2) == 1);
    CHECK(K.size() - regular(out) >= 2);
  }
  SECTION("boundary of the 4-simplex") {
    const auto K = simplexBoundary(4);
    CHECK(K.size() == 30);
    CHECK(regular(interfaceAlgorithm(K)) >= 15);
  }
  SECTION("single vertex") {
    const auto K = SimplicialComplex::fromMaximalSimplices({{3}});
    CHECK(critical(K, interfaceAlgorithm(K), 0) == 1);
  }
  SECTION("mode errors and overrides") {
    const auto solid = solidSimplex(2);
    CHECK_THROWS_AS(interfaceAlgorithm(solid, {Mode::Manifold}), ModeError);
    CHECK_THROWS_AS(minFacetAlgorithm(solid, {Mode::Manifold}), ModeError);
    const auto sphere = simplexBoundary(3);
    const auto forced = interfaceAlgorithm(sphere, {Mode::NonManifold});
    CHECK_FALSE(forced.manifoldMode);
    CHECK(verifyGVF(sphere, forced.field).ok);
  }
}

TEST_CASE("intermediateApx") {
  SECTION("single edge interface") {
    const auto K = SimplicialComplex::fromMaximalSimplices({{0, 1}});
    auto alive = allAlive(K);
    alive[K.id(0, 1)] = 0;
    const auto g = extractInterface(K, 1, alive);
    REQUIRE(g.edgeCount() == 1);
    const auto stage = intermediateApx(g, false);
    REQUIRE(stage.size() == 1);
    CHECK(stage[0] == std::pair{K.id(0, 0), K.id(1, 0)});
  }
  SECTION("saturated lower level leaves step 2 idle") {
    const auto K = SimplicialComplex::fromMaximalSimplices({{0, 1}, {1, 2}});
    auto alive = allAlive(K);
    alive[node(K, {0})] = 0;
    const auto g = extractInterface(K, 1, alive);
    auto m = InterfaceMatching::maximum(g);
    frontierEdges(g, m);
    for (auto u : m.mateLower) CHECK(u >= 0);
    CHECK(intermediateApx(g, true) == m.toStage(g));
  }
  SECTION("star around one free facet") {
    const auto K = fromData("book3.txt");
    Liveness alive(K.size(), 0);
    for (NodeId t = K.firstId(2); t < K.endId(2); ++t) alive[t] = 1;
    alive[node(K, {0, 1})] = 1;
    const auto g = extractInterface(K, 2, alive);
    REQUIRE(g.lower.size() == 1);
    REQUIRE(g.upper.size() == 3);
    for (bool prematch : {false, true}) {
      const auto stage = intermediateApx(g, prematch);
      REQUIRE(stage.size() == 1);
      CHECK(stage[0] == std::pair{node(K, {0, 1}), node(K, {0, 1, 2})});
    }
  }
  SECTION("no lower node is left with only unmatched cofacets") {
    for (const auto& [name, K, manifold] : corpus()) {
      for (int d = 2; d <= K.dimension(); ++d) {
        const auto g = extractInterface(K, d);
        const auto stage = intermediateApx(g, true);
        CHECK(verifyGVF(K, stage).ok);
        std::vector<std::uint8_t> matched(K.size(), 0);
        for (auto [a, b] : stage) matched[a] = matched[b] = 1;
        for (std::size_t l = 0; l < g.lower.size(); ++l) {
          if (matched[g.lower[l]]) continue;
          const auto cof = g.cofacetsOf(static_cast<std::int32_t>(l));
          if (cof.empty()) continue;
          bool some = false;
          for (auto u : cof) some = some || matched[g.upper[u]];
          CHECK(some);
        }
      }
    }
  }
}

TEST_CASE("stage subroutines") {
  SECTION("DFS on the 1-interface of a path") {
    const auto K = SimplicialComplex::fromMaximalSimplices({{0, 1}, {1, 2}});
    const auto stage = dfsOptimal1Interface(extractInterface(K, 1));
    const StageMatching expect{{node(K, {1}), node(K, {0, 1})}, {node(K, {2}), node(K, {1, 2})}};
    CHECK(stage == expect);
  }
  SECTION("single vertex and two disjoint edges") {
    const auto edges = SimplicialComplex::fromMaximalSimplices({{0, 1}, {2, 3}});
    CHECK(dfsOptimal1Interface(extractInterface(edges, 1)).size() == 2);
    const auto loose = SimplicialComplex::fromMaximalSimplices({{0, 1}, {2}});
    CHECK(dfsOptimal1Interface(extractInterface(loose, 1)).size() == 1);
  }
  SECTION("deleteAndReorient after the first stage of a sphere") {
    const auto K = simplexBoundary(3);
    auto alive = allAlive(K);
    GradientField field(K.size());
    const auto g = extractInterface(K, 1, alive);
    deleteAndReorient(alive, field, g, dfsOptimal1Interface(g));
    std::size_t liveEdges = 0, liveVertices = 0;
    for (NodeId e = K.firstId(1); e < K.endId(1); ++e) liveEdges += alive[e];
    for (NodeId v = K.firstId(0); v < K.endId(0); ++v) liveVertices += alive[v];
    CHECK(liveEdges == 3);
    CHECK(liveVertices == 0);
    CHECK(field.pairCount() == 3);
  }
  SECTION("empty stage kills only the lower level") {
    const auto K = solidSimplex(2);
    auto alive = allAlive(K);
    GradientField field(K.size());
    deleteAndReorient(alive, field, extractInterface(K, 2, alive), {});
    for (NodeId v = 0; v < static_cast<NodeId>(K.size()); ++v) CHECK(alive[v] == (K.dim(v) != 1));
  }
  SECTION("DFS on the dual graph") {
    const auto K = simplexBoundary(3);
    CHECK(dfsOptimalDInterface(K, allAlive(K)).size() == 3);
    const auto one = solidSimplex(2);
    CHECK(dfsOptimalDInterface(one, allAlive(one)).empty());
    const auto two = SimplicialComplex::fromMaximalSimplices(
        {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {4, 5, 6}, {4, 5, 7}, {4, 6, 7}, {5, 6, 7}});
    CHECK_THROWS_AS(dfsOptimalDInterface(two, allAlive(two)), IntegrityError);
  }
  SECTION("dual DFS on the 3-sphere after the earlier stages") {
    const auto K = simplexBoundary(4);
    auto alive = allAlive(K);
    GradientField field(K.size());
    auto g1 = extractInterface(K, 1, alive);
    deleteAndReorient(alive, field, g1, dfsOptimal1Interface(g1));
    auto g2 = extractInterface(K, 2, alive);
    deleteAndReorient(alive, field, g2, intermediateApx(g2, true));
    CHECK(dfsOptimalDInterface(K, alive).size() == 4);
  }
}

TEST_CASE("min-facet algorithm examples") {
  SECTION("boundary of the 4-simplex") {
    const auto K = simplexBoundary(4);
    CHECK(regular(minFacetAlgorithm(K)) >= 20);
  }
  SECTION("projective plane") {
    const auto K = fromData("rp2.txt");
    const auto out = minFacetAlgorithm(K);
    CHECK(regular(out) == 28);
    CHECK(K.size() - regular(out) == 3);
  }
  SECTION("dunce hat") {
    const auto K = fromData("dunce_hat.txt");
    CHECK(K.size() == 49);
    CHECK(regular(minFacetAlgorithm(K)) >= 44);
  }
  SECTION("facet degree stays within d on closed pseudomanifolds") {
    for (const auto& [name, K, manifold] : corpus()) {
      if (!manifold) continue;
      INFO(name);
      for (const auto& s : minFacetAlgorithm(K).minFacetStages) CHECK(s.maxDegree <= s.d);
    }
  }
}

TEST_CASE("min-facet component extraction") {
  SECTION("uniform degree gives the whole interface") {
    const auto K = simplexBoundary(3);
    const auto g = extractMinFacetComponent(K, 2, allAlive(K));
    REQUIRE(g.has_value());
    CHECK(g->upper.size() == 4);
    CHECK(g->lower.size() == 6);
  }
  SECTION("lower degree wins") {
    const auto K = SimplicialComplex::fromMaximalSimplices({{0, 1, 2}, {3, 4, 5}});
    auto alive = allAlive(K);
    alive[node(K, {0, 1})] = 0;
    alive[node(K, {0, 2})] = 0;
    const auto g = extractMinFacetComponent(K, 2, alive);
    REQUIRE(g.has_value());
    CHECK(g->upper == std::vector<NodeId>{node(K, {0, 1, 2})});
    CHECK(g->lower == std::vector<NodeId>{node(K, {1, 2})});
  }
  SECTION("middle of a strip") {
    const auto K = SimplicialComplex::fromMaximalSimplices({{0, 1, 2}, {1, 2, 3}, {2, 3, 4}});
    auto alive = allAlive(K);
    alive[node(K, {1, 3})] = 0;
    const auto g = extractMinFacetComponent(K, 2, alive);
    REQUIRE(g.has_value());
    CHECK(g->upper == std::vector<NodeId>{node(K, {1, 2, 3})});
  }
  SECTION("nothing left") {
    const auto K = solidSimplex(2);
    Liveness alive(K.size(), 0);
    alive[K.id(2, 0)] = 1;
    CHECK_FALSE(extractMinFacetComponent(K, 2, alive).has_value());
  }
}

TEST_CASE("reduction and coreduction") {
  const auto solid = solidSimplex(2);
  for (auto out : {reductionHeuristic(solid), coreductionHeuristic(solid)}) {
    CHECK(regular(out) == 6);
    CHECK(critical(solid, out, 0) == 1);
  }
  const auto point = SimplicialComplex::fromMaximalSimplices({{0}});
  CHECK(critical(point, reductionHeuristic(point), 0) == 1);
  CHECK(critical(point, coreductionHeuristic(point), 0) == 1);
}

TEST_CASE("verifyGVF") {
  const auto hollow = simplexBoundary(2);
  CHECK(verifyGVF(hollow, GradientField(hollow.size())).ok);

  const Pairs cyclic{{node(hollow, {0}), node(hollow, {0, 1})},
                     {node(hollow, {1}), node(hollow, {1, 2})},
                     {node(hollow, {2}), node(hollow, {0, 2})}};
  const auto v = verifyGVF(hollow, cyclic);
  CHECK_FALSE(v.ok);
  REQUIRE(v.cycle.size() == 7);
  CHECK(v.cycle.front() == v.cycle.back());
  CHECK_FALSE(acyclicByKahn(hollow, cyclic));

  const auto solid = solidSimplex(2);
  CHECK_FALSE(verifyGVF(solid, Pairs{{node(solid, {0}), node(solid, {1, 2})}}).ok);
  CHECK_FALSE(verifyGVF(solid, Pairs{{node(solid, {0}), node(solid, {0, 1})},
                                     {node(solid, {0}), node(solid, {0, 2})}})
                  .ok);
}

TEST_CASE("exhaustive oracle") {
  CHECK(bruteForceOptimal(simplexBoundary(2)).optimum == 4);
  CHECK(bruteForceOptimal(solidSimplex(2)).optimum == 6);
  CHECK(bruteForceOptimal(simplexBoundary(3)).optimum == 12);
  for (const auto& [name, K, manifold] : corpus()) {
    if (K.size() > 14) continue;
    INFO(name);
    const auto r = bruteForceOptimal(K);
    CHECK(r.optimum == enumeratedOptimum(K));
    CHECK(r.field.regularCount() == r.optimum);
    CHECK(verifyGVF(K, r.field).ok);
  }
  CHECK_THROWS_AS(bruteForceOptimal(fromData("rp2.txt")), OracleCapError);
  ::setenv("MORSEFORGE_ORACLE_CAP", "40", 1);
  CHECK(oracleCap() == 40);
  ::unsetenv("MORSEFORGE_ORACLE_CAP");
  CHECK(oracleCap() == kDefaultOracleCap);
}

TEST_CASE("estimated ratio") {
  CHECK(estimatedRatio(28, 15, 31, 1) == Rational::of(28, 30));
  CHECK(estimatedRatio(46, 24, 49, 1) == Rational::of(46, 48));
  CHECK(estimatedRatio(0, 0, 1, 1) == Rational{1, 1});
  CHECK(Rational::of(28, 30).toString() == "14/15");
}

TEST_CASE("report invariants") {
  for (const auto& [name, K, manifold] : corpus()) {
    const auto M = maximumMatching(K).size();
    for (auto kind : kAllAlgorithms) {
      const auto r = makeReport(K, runAlgorithm(kind, K), kind, M, 0.0);
      CHECK(r.regularTotal + r.criticalTotal() == K.size());
      CHECK(r.regularTotal % 2 == 0);
      CHECK(r.matchingUpperBound == 2 * M);
      CHECK(r.regularTotal <= r.matchingUpperBound);
    }
  }
}

TEST_CASE("contracts hold on the corpus") {
  for (const auto& [name, K, manifold] : corpus()) {
    INFO(name);
    const auto betti = bettiOverQ(K);
    for (auto kind : kAllAlgorithms) {
      const auto out = runAlgorithm(kind, K);
      checkContract(K, kind, out, betti);
      CHECK(runAlgorithm(kind, K).field == out.field);
    }
  }
}

TEST_CASE("contracts hold on random complexes") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GeneratorParams g{6 + static_cast<int>(seed % 3), 2 + static_cast<int>(seed % 2), 0.5,
                      {1, 0.9, 0.7, 0.6}, seed};
    g.pVec.resize(g.D + 1);
    const auto K = seed % 2 ? meshulamWallach(g) : type2Random(g);
    INFO("seed " << seed);
    const auto betti = bettiOverQ(K);
    for (auto kind : kAllAlgorithms)
      for (bool prematch : {true, false})
        checkContract(K, kind, runAlgorithm(kind, K, {Mode::Auto, prematch}), betti);
  }
}

TEST_CASE("optimal on collapsible complexes") {
  for (const char* name : {"solid_1", "solid_2", "solid_3", "solid_4", "solid_5", "path"}) {
    const auto& K = corpusEntry(name).K;
    INFO(name);
    CHECK(regular(minFacetAlgorithm(K)) == K.size() - 1);
  }
}
