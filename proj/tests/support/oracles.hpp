#pragma once

// Reference computations used only by tests. They share no code with the
// library algorithms they check.

#include <cstddef>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "morseforge/complex.hpp"
#include "morseforge/homology.hpp"

namespace morseforge::testing {

using Pairs = std::vector<std::pair<NodeId, NodeId>>;

/// Maximum matching size by exhaustive search over the edge list.
std::size_t bruteMatchingSize(std::size_t nodes, const std::vector<std::pair<int, int>>& edges);
/// Hasse-graph edges (facet, simplex) of K.
std::vector<std::pair<int, int>> hasseEdges(const SimplicialComplex& K);

/// Whole-Hasse acyclicity by Kahn's algorithm on the reoriented graph.
bool acyclicByKahn(const SimplicialComplex& K, const Pairs& pairs);

/// Largest regular count over all acyclic matchings, by enumerating every
/// matching of the Hasse graph.
std::size_t enumeratedOptimum(const SimplicialComplex& K);

std::vector<std::vector<mpq_class>> toDense(const IntegerMatrix& m);
std::size_t rankOverQ(std::vector<std::vector<mpq_class>> a);
std::size_t rankModP(const IntegerMatrix& m, long p);
/// Invariant factors from determinantal divisors (gcd of k x k minors).
std::vector<mpz_class> invariantFactorsByMinors(const std::vector<std::vector<long>>& a);

/// Boundary matrix built from vertex lists, signs (-1)^k for the k-th vertex.
IntegerMatrix boundaryFromVertices(const SimplicialComplex& K, int d);
/// Rational Betti numbers from ranks over Q.
std::vector<long long> bettiOverQ(const SimplicialComplex& K);

}  // namespace morseforge::testing
