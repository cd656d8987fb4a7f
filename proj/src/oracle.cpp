#include "morseforge/oracle.hpp"

#include <cstdlib>
#include <string>

#include "morseforge/error.hpp"
#include "morseforge/matching.hpp"

namespace morseforge {

std::size_t oracleCap() {
  const char* env = std::getenv("MORSEFORGE_ORACLE_CAP");
  if (!env || !*env) return kDefaultOracleCap;
  char* end = nullptr;
  const auto v = std::strtoull(env, &end, 10);
  if (*end != '\0') return kDefaultOracleCap;
  return static_cast<std::size_t>(v);
}

namespace {

class Search {
 public:
  explicit Search(const SimplicialComplex& K)
      : K_(K), partner_(K.size(), kNoNode), bound_(2 * maximumMatching(K).size()) {}

  OracleResult run() {
    best_ = partner_;
    go(0, 0);
    OracleResult r{GradientField(K_.size()), bestRegular_};
    for (std::size_t v = 0; v < best_.size(); ++v)
      if (best_[v] > static_cast<NodeId>(v)) r.field.pair(static_cast<NodeId>(v), best_[v]);
    return r;
  }

 private:
  // Pairing a with its cofacet b closes a cycle iff another facet of b
  // reaches a through matched up-edges and down-edges of the same interface.
  bool closesCycle(NodeId a, NodeId b) const {
    const int d = K_.dim(b);
    std::vector<NodeId> stack;
    std::vector<std::uint8_t> seen(K_.size(), 0);
    for (NodeId y : K_.facets(b))
      if (y != a) stack.push_back(y);
    while (!stack.empty()) {
      const NodeId l = stack.back();
      stack.pop_back();
      if (l == a) return true;
      if (seen[l]) continue;
      seen[l] = 1;
      const NodeId u = partner_[l];
      if (u == kNoNode || K_.dim(u) != d) continue;
      for (NodeId y : K_.facets(u))
        if (y != l) stack.push_back(y);
    }
    return false;
  }

  void go(NodeId v, std::size_t regular) {
    if (bestRegular_ == bound_) return;
    const auto n = static_cast<NodeId>(K_.size());
    while (v < n && partner_[v] != kNoNode) ++v;
    // Every unvisited free node could still be regular.
    std::size_t slack = 0;
    for (NodeId w = v; w < n; ++w) slack += partner_[w] == kNoNode ? 1 : 0;
    if (regular + slack <= bestRegular_) return;
    if (v == n) {
      if (regular > bestRegular_) {
        bestRegular_ = regular;
        best_ = partner_;
      }
      return;
    }
    for (NodeId c : K_.cofacets(v)) {
      if (partner_[c] != kNoNode || closesCycle(v, c)) continue;
      partner_[v] = c;
      partner_[c] = v;
      go(v + 1, regular + 2);
      partner_[v] = kNoNode;
      partner_[c] = kNoNode;
    }
    go(v + 1, regular);  // facets of v are already decided, so v stays critical
  }

  const SimplicialComplex& K_;
  std::vector<NodeId> partner_, best_;
  std::size_t bound_;
  std::size_t bestRegular_ = 0;
};

}  // namespace

OracleResult bruteForceOptimal(const SimplicialComplex& K, std::size_t cap) {
  if (K.size() > cap)
    throw OracleCapError("exhaustive search refused: N = " + std::to_string(K.size()) +
                         " exceeds cap " + std::to_string(cap));
  return Search(K).run();
}

OracleResult bruteForceOptimal(const SimplicialComplex& K) {
  return bruteForceOptimal(K, oracleCap());
}

}  // namespace morseforge
