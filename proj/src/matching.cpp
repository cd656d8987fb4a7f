#include "morseforge/matching.hpp"

#include <algorithm>
#include <limits>

namespace morseforge {

BipartiteGraph BipartiteGraph::fromEdges(
    std::int32_t left, std::int32_t right,
    const std::vector<std::pair<std::int32_t, std::int32_t>>& edges) {
  BipartiteGraph g;
  g.leftCount = left;
  g.rightCount = right;
  g.start.assign(left + 1, 0);
  for (const auto& [l, r] : edges) ++g.start[l + 1];
  for (std::int32_t i = 0; i < left; ++i) g.start[i + 1] += g.start[i];
  g.adj.resize(edges.size());
  std::vector<std::int32_t> fill(g.start.begin(), g.start.end() - 1);
  for (const auto& [l, r] : edges) g.adj[fill[l]++] = r;
  return g;
}

BipartiteMatching maximumMatching(const BipartiteGraph& g) {
  constexpr std::int32_t kInf = std::numeric_limits<std::int32_t>::max();
  const std::int32_t nL = g.leftCount;
  BipartiteMatching m;
  m.mateLeft.assign(nL, -1);
  m.mateRight.assign(g.rightCount, -1);

  std::vector<std::int32_t> dist(nL), queue(nL), it(nL), stack;
  stack.reserve(64);

  for (;;) {
    // BFS layering from free left vertices.
    std::int32_t head = 0, tail = 0;
    for (std::int32_t u = 0; u < nL; ++u) {
      if (m.mateLeft[u] < 0) {
        dist[u] = 0;
        queue[tail++] = u;
      } else {
        dist[u] = kInf;
      }
    }
    std::int32_t freeDist = kInf;
    while (head < tail) {
      const std::int32_t u = queue[head++];
      if (dist[u] >= freeDist) continue;
      for (auto p = g.start[u]; p < g.start[u + 1]; ++p) {
        const std::int32_t w = m.mateRight[g.adj[p]];
        if (w < 0) {
          freeDist = std::min(freeDist, dist[u] + 1);
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          queue[tail++] = w;
        }
      }
    }
    if (freeDist == kInf) break;

    // Layered DFS, iterative.
    for (std::int32_t u = 0; u < nL; ++u) it[u] = g.start[u];
    std::size_t augmented = 0;
    for (std::int32_t root = 0; root < nL; ++root) {
      if (m.mateLeft[root] >= 0 || dist[root] != 0) continue;
      stack.clear();
      stack.push_back(root);
      bool found = false;
      while (!stack.empty() && !found) {
        const std::int32_t u = stack.back();
        bool advanced = false;
        for (; it[u] < g.start[u + 1]; ++it[u]) {
          const std::int32_t r = g.adj[it[u]];
          const std::int32_t w = m.mateRight[r];
          if (w < 0) {
            if (dist[u] + 1 == freeDist) {
              found = true;
              break;
            }
          } else if (dist[w] == dist[u] + 1) {
            stack.push_back(w);
            advanced = true;
            break;
          }
        }
        if (found) break;
        if (!advanced) {
          dist[u] = kInf;  // dead end
          stack.pop_back();
          if (!stack.empty()) ++it[stack.back()];
        }
      }
      if (!found) continue;
      // Flip along the stack: each it[u] points at the edge used.
      for (std::size_t k = stack.size(); k-- > 0;) {
        const std::int32_t u = stack[k];
        const std::int32_t r = g.adj[it[u]];
        m.mateLeft[u] = r;
        m.mateRight[r] = u;
        dist[u] = kInf;
      }
      ++augmented;
    }
    if (augmented == 0) break;
    m.size += augmented;
  }
  return m;
}

Matching maximumMatching(const SimplicialComplex& K) {
  const std::size_t N = K.size();
  // Local index per node within its parity class.
  std::vector<std::int32_t> local(N);
  std::vector<NodeId> evens, odds;
  for (std::size_t v = 0; v < N; ++v) {
    auto& side = K.dim(static_cast<NodeId>(v)) % 2 == 0 ? evens : odds;
    local[v] = static_cast<std::int32_t>(side.size());
    side.push_back(static_cast<NodeId>(v));
  }
  BipartiteGraph g;
  g.leftCount = static_cast<std::int32_t>(evens.size());
  g.rightCount = static_cast<std::int32_t>(odds.size());
  g.start.assign(evens.size() + 1, 0);
  for (std::size_t i = 0; i < evens.size(); ++i) {
    const NodeId v = evens[i];
    // Neighbours in ascending NodeId: facets precede cofacets.
    for (NodeId f : K.facets(v)) g.adj.push_back(local[f]);
    for (NodeId c : K.cofacets(v)) g.adj.push_back(local[c]);
    g.start[i + 1] = static_cast<std::int32_t>(g.adj.size());
  }
  const auto bm = maximumMatching(g);
  Matching m;
  for (std::size_t i = 0; i < evens.size(); ++i) {
    if (bm.mateLeft[i] < 0) continue;
    const NodeId a = evens[i], b = odds[bm.mateLeft[i]];
    m.pairs.emplace_back(K.dim(a) < K.dim(b) ? a : b, K.dim(a) < K.dim(b) ? b : a);
  }
  std::sort(m.pairs.begin(), m.pairs.end());
  return m;
}

BipartiteMatching maximumMatching(const InterfaceView& g) {
  BipartiteGraph b;
  b.leftCount = static_cast<std::int32_t>(g.upper.size());
  b.rightCount = static_cast<std::int32_t>(g.lower.size());
  b.start = g.upStart;
  b.adj = g.upAdj;
  return maximumMatching(b);
}

}  // namespace morseforge
