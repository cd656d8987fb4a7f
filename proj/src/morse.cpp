#include "morseforge/morse.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "morseforge/error.hpp"

namespace morseforge {

std::string_view algorithmName(AlgorithmKind kind) {
  switch (kind) {
    case AlgorithmKind::Naive: return "naive";
    case AlgorithmKind::Frontier: return "frontier";
    case AlgorithmKind::Interface: return "interface";
    case AlgorithmKind::MinFacet: return "minfacet";
    case AlgorithmKind::Reduction: return "reduction";
    case AlgorithmKind::Coreduction: return "coreduction";
  }
  return "?";
}

std::optional<AlgorithmKind> parseAlgorithm(std::string_view name) {
  for (auto k : kAllAlgorithms)
    if (algorithmName(k) == name) return k;
  return std::nullopt;
}

InterfaceMatching InterfaceMatching::empty(const InterfaceView& g) {
  return {std::vector<std::int32_t>(g.upper.size(), -1),
          std::vector<std::int32_t>(g.lower.size(), -1)};
}

InterfaceMatching InterfaceMatching::maximum(const InterfaceView& g) {
  auto bm = maximumMatching(g);
  return {std::move(bm.mateLeft), std::move(bm.mateRight)};
}

StageMatching InterfaceMatching::toStage(const InterfaceView& g) const {
  StageMatching out;
  for (std::size_t u = 0; u < mateUpper.size(); ++u)
    if (mateUpper[u] >= 0) out.emplace_back(g.lower[mateUpper[u]], g.upper[u]);
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Frontier edges

FrontierClassifier::FrontierClassifier(const InterfaceView& g, InterfaceMatching& m)
    : g_(g),
      m_(m),
      state_(g.upper.size(), State::Unvisited),
      out_(g.lower.size()),
      in_(g.lower.size()),
      ord_(g.lower.size()),
      mark_(g.lower.size(), 0) {
  std::iota(ord_.begin(), ord_.end(), 0);
}

// Directed reachability between lower nodes: a -> b when b is a facet of the
// forward upper simplex matched with a. Only nodes ordered before `target`
// can lie on a path to it.
bool FrontierClassifier::reaches(std::int32_t from, std::int32_t target) const {
  if (from == target) return true;
  const auto bound = ord_[target];
  if (ord_[from] > bound) return false;
  const auto s = ++stamp_;
  std::vector<std::int32_t> stack{from};
  mark_[from] = s;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    for (auto w : out_[v]) {
      if (w == target) return true;
      if (mark_[w] != s && ord_[w] < bound) {
        mark_[w] = s;
        stack.push_back(w);
      }
    }
  }
  return false;
}

bool FrontierClassifier::closesCycle(std::int32_t u) const {
  const auto x = m_.mateUpper[u];
  for (auto y : g_.facetsOf(u))
    if (y != x && reaches(y, x)) return true;
  return false;
}

// Pearce-Kelly insertion of x -> y into the topological order.
void FrontierClassifier::addArc(std::int32_t x, std::int32_t y) {
  out_[x].push_back(y);
  in_[y].push_back(x);
  const auto lb = ord_[y], ub = ord_[x];
  if (lb > ub) return;

  std::vector<std::int32_t> fwd, bwd, stack;
  auto s = ++stamp_;
  stack.push_back(y);
  mark_[y] = s;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    fwd.push_back(v);
    for (auto w : out_[v])
      if (mark_[w] != s && ord_[w] < ub) {
        mark_[w] = s;
        stack.push_back(w);
      }
  }
  s = ++stamp_;
  stack.push_back(x);
  mark_[x] = s;
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    bwd.push_back(v);
    for (auto w : in_[v])
      if (mark_[w] != s && ord_[w] > lb) {
        mark_[w] = s;
        stack.push_back(w);
      }
  }
  auto byOrd = [&](std::int32_t a, std::int32_t b) { return ord_[a] < ord_[b]; };
  std::sort(fwd.begin(), fwd.end(), byOrd);
  std::sort(bwd.begin(), bwd.end(), byOrd);
  std::vector<std::int32_t> pool;
  pool.reserve(fwd.size() + bwd.size());
  for (auto v : bwd) pool.push_back(ord_[v]);
  for (auto v : fwd) pool.push_back(ord_[v]);
  std::sort(pool.begin(), pool.end());
  std::size_t k = 0;
  for (auto v : bwd) ord_[v] = pool[k++];
  for (auto v : fwd) ord_[v] = pool[k++];
}

void FrontierClassifier::commit(std::int32_t u) {
  const auto x = m_.mateUpper[u];
  for (auto y : g_.facetsOf(u))
    if (y != x) addArc(x, y);
}

FrontierClassifier::Component FrontierClassifier::expand(std::int32_t seedUpper) {
  if (seedUpper < 0 || static_cast<std::size_t>(seedUpper) >= state_.size() ||
      m_.mateUpper[seedUpper] < 0 || state_[seedUpper] != State::Unvisited)
    throw RangeError("seed must be an unvisited matched upper simplex");

  Component c;
  c.d = g_.d;
  c.seed = seedUpper;
  auto classify = [&](std::int32_t u) {
    c.uppers.push_back(u);
    if (closesCycle(u)) {
      state_[u] = State::Backward;
      m_.mateLower[m_.mateUpper[u]] = -1;
      m_.mateUpper[u] = -1;
      c.backward.push_back(u);
      return false;
    }
    commit(u);
    state_[u] = State::Forward;
    c.forward.push_back(u);
    return true;
  };

  std::vector<std::int32_t> queue;
  if (classify(seedUpper)) queue.push_back(seedUpper);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const auto u0 = queue[head];
    const auto x0 = m_.mateUpper[u0];
    for (auto l : g_.facetsOf(u0)) {
      if (l == x0) continue;
      const auto u1 = m_.mateLower[l];
      if (u1 < 0 || state_[u1] != State::Unvisited) continue;
      if (classify(u1)) queue.push_back(u1);
    }
  }
  return c;
}

std::vector<ComponentStat> FrontierClassifier::run() {
  std::vector<ComponentStat> stats;
  for (std::size_t u = 0; u < state_.size(); ++u)
    if (m_.mateUpper[u] >= 0 && state_[u] == State::Unvisited)
      stats.push_back(expand(static_cast<std::int32_t>(u)).stat());
  return stats;
}

std::vector<ComponentStat> frontierEdges(const InterfaceView& g, InterfaceMatching& m) {
  return FrontierClassifier(g, m).run();
}

StageMatching intermediateApx(const InterfaceView& g, bool prematch,
                              std::vector<ComponentStat>* stats) {
  auto m = prematch ? InterfaceMatching::maximum(g) : InterfaceMatching::empty(g);
  auto st = frontierEdges(g, m);
  if (stats) stats->insert(stats->end(), st.begin(), st.end());

  for (std::size_t l = 0; l < g.lower.size(); ++l) {
    if (m.mateLower[l] >= 0) continue;
    auto cof = g.cofacetsOf(static_cast<std::int32_t>(l));
    if (cof.empty()) continue;
    if (std::any_of(cof.begin(), cof.end(), [&](auto u) { return m.mateUpper[u] >= 0; }))
      continue;
    m.mateUpper[cof.front()] = static_cast<std::int32_t>(l);
    m.mateLower[l] = cof.front();
  }
  return m.toStage(g);
}

// ---------------------------------------------------------------------------
// Optimal stages

StageMatching dfsOptimal1Interface(const InterfaceView& g) {
  if (g.d != 1) throw RangeError("dfsOptimal1Interface expects the 1-interface");
  StageMatching out;
  std::vector<std::uint8_t> visited(g.lower.size(), 0);
  struct Frame {
    std::int32_t v;
    std::int32_t pos;
  };
  std::vector<Frame> stack;
  for (std::size_t s = 0; s < g.lower.size(); ++s) {
    if (visited[s]) continue;
    visited[s] = 1;
    stack.push_back({static_cast<std::int32_t>(s), g.lowStart[s]});
    while (!stack.empty()) {
      auto& fr = stack.back();
      if (fr.pos == g.lowStart[fr.v + 1]) {
        stack.pop_back();
        continue;
      }
      const auto e = g.lowAdj[fr.pos++];
      auto ends = g.facetsOf(e);
      if (ends.size() != 2) continue;
      const auto w = ends[0] == fr.v ? ends[1] : ends[0];
      if (visited[w]) continue;
      visited[w] = 1;
      out.emplace_back(g.lower[w], g.upper[e]);
      stack.push_back({w, g.lowStart[w]});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

StageMatching dfsOptimalDInterface(const SimplicialComplex& K, const Liveness& alive) {
  const auto dual = buildDualGraph(K, alive);
  StageMatching out;
  if (dual.nodes.empty()) return out;
  std::vector<std::uint8_t> visited(dual.nodes.size(), 0);
  struct Frame {
    std::int32_t v;
    std::int32_t pos;
  };
  std::vector<Frame> stack{{0, dual.start[0]}};
  visited[0] = 1;
  std::size_t seen = 1;
  while (!stack.empty()) {
    auto& fr = stack.back();
    if (fr.pos == dual.start[fr.v + 1]) {
      stack.pop_back();
      continue;
    }
    const auto& e = dual.edges[dual.incident[fr.pos++]];
    const auto w = e.a == fr.v ? e.b : e.a;
    if (visited[w]) continue;
    visited[w] = 1;
    ++seen;
    out.emplace_back(e.facet, dual.nodes[w]);
    stack.push_back({w, dual.start[w]});
  }
  if (seen != dual.nodes.size())
    throw IntegrityError("dual graph over live (D-1)-simplices is disconnected (" +
                         std::to_string(seen) + " of " + std::to_string(dual.nodes.size()) +
                         " top simplices reached)");
  std::sort(out.begin(), out.end());
  return out;
}

void deleteAndReorient(Liveness& alive, GradientField& field, const InterfaceView& g,
                       const StageMatching& stage) {
  for (auto [lower, upper] : stage) {
    field.pair(lower, upper);
    alive[upper] = 0;
  }
  for (NodeId l : g.lower) alive[l] = 0;
}

// ---------------------------------------------------------------------------
// Min-facet components

MinFacetTracker::MinFacetTracker(const SimplicialComplex& K, int d, const Liveness& alive)
    : K_(K),
      d_(d),
      first_(K.firstId(d)),
      degree_(K.count(d), 0),
      buckets_(d + 2),
      mark_(K.count(d), 0) {
  for (NodeId s = K.firstId(d); s < K.endId(d); ++s) {
    if (!alive[s]) continue;
    int deg = 0;
    for (NodeId f : K.facets(s)) deg += alive[f] ? 1 : 0;
    degree_[s - first_] = deg;
    if (deg > 0) buckets_[deg].push_back(s);
  }
  for (auto& b : buckets_) std::make_heap(b.begin(), b.end(), std::greater<>{});
}

std::optional<InterfaceView> MinFacetTracker::extract(const Liveness& alive) {
  NodeId seed = kNoNode;
  int k = 1;
  for (; k <= d_ + 1; ++k) {
    auto& h = buckets_[k];
    while (!h.empty() && !(alive[h.front()] && degree_[h.front() - first_] == k)) {
      std::pop_heap(h.begin(), h.end(), std::greater<>{});
      h.pop_back();
    }
    if (!h.empty()) {
      seed = h.front();
      break;
    }
  }
  if (seed == kNoNode) return std::nullopt;
  lastDegree_ = k;

  const auto s = ++stamp_;
  std::vector<NodeId> comp{seed};
  mark_[seed - first_] = s;
  for (std::size_t head = 0; head < comp.size(); ++head) {
    for (NodeId f : K_.facets(comp[head])) {
      if (!alive[f]) continue;
      for (NodeId c : K_.cofacets(f)) {
        if (!alive[c] || degree_[c - first_] != k || mark_[c - first_] == s) continue;
        mark_[c - first_] = s;
        comp.push_back(c);
      }
    }
  }
  std::sort(comp.begin(), comp.end());
  return inducedInterface(K_, d_, std::move(comp), alive);
}

void MinFacetTracker::lowerDied(NodeId tau, const Liveness& alive) {
  for (NodeId c : K_.cofacets(tau)) {
    if (!alive[c]) continue;
    int& deg = degree_[c - first_];
    --deg;
    if (deg > 0) {
      buckets_[deg].push_back(c);
      std::push_heap(buckets_[deg].begin(), buckets_[deg].end(), std::greater<>{});
    }
  }
}

std::optional<InterfaceView> extractMinFacetComponent(const SimplicialComplex& K, int d,
                                                      const Liveness& alive) {
  if (d < 1 || d > K.dimension()) throw RangeError("interface index out of range");
  MinFacetTracker tracker(K, d, alive);
  return tracker.extract(alive);
}

namespace {

void interApxMinFacet(const SimplicialComplex& K, int d, Liveness& alive, GradientField& field,
                      bool prematch, AlgorithmOutput& out) {
  MinFacetStageStat stage{d, 0, 0};
  MinFacetTracker tracker(K, d, alive);
  while (auto comp = tracker.extract(alive)) {
    ++stage.components;
    stage.maxDegree = std::max(stage.maxDegree, tracker.lastDegree());
    const auto pairs = intermediateApx(*comp, prematch, &out.components);
    deleteAndReorient(alive, field, *comp, pairs);
    for (NodeId l : comp->lower) tracker.lowerDied(l, alive);
  }
  for (NodeId v = K.firstId(d - 1); v < K.endId(d - 1); ++v) alive[v] = 0;
  out.minFacetStages.push_back(stage);
}

AlgorithmOutput staged(const SimplicialComplex& K, AlgorithmOptions opts, bool minFacet) {
  AlgorithmOutput out;
  out.manifoldMode = resolveManifoldMode(K, opts.mode);
  out.field = GradientField(K.size());
  Liveness alive(K.size(), 1);
  const int D = K.dimension();
  for (int d = 1; d <= D; ++d) {
    if (d == 1) {
      const auto g = extractInterface(K, 1, alive);
      deleteAndReorient(alive, out.field, g, dfsOptimal1Interface(g));
    } else if (d == D && out.manifoldMode) {
      for (auto [lower, upper] : dfsOptimalDInterface(K, alive)) out.field.pair(lower, upper);
    } else if (minFacet) {
      interApxMinFacet(K, d, alive, out.field, opts.prematch, out);
    } else {
      const auto g = extractInterface(K, d, alive);
      deleteAndReorient(alive, out.field, g, intermediateApx(g, opts.prematch, &out.components));
    }
  }
  return out;
}

}  // namespace

bool resolveManifoldMode(const SimplicialComplex& K, Mode mode) {
  switch (mode) {
    case Mode::Auto: return isClosedPseudomanifold(K);
    case Mode::NonManifold: return false;
    case Mode::Manifold:
      if (!isClosedPseudomanifold(K))
        throw ModeError("manifold mode requires a closed pseudomanifold");
      return true;
  }
  return false;
}

AlgorithmOutput interfaceAlgorithm(const SimplicialComplex& K, AlgorithmOptions opts) {
  return staged(K, opts, false);
}

AlgorithmOutput minFacetAlgorithm(const SimplicialComplex& K, AlgorithmOptions opts) {
  return staged(K, opts, true);
}

// ---------------------------------------------------------------------------
// Whole-Hasse algorithms

AlgorithmOutput naiveAlgorithm(const SimplicialComplex& K) {
  AlgorithmOutput out;
  out.field = GradientField(K.size());
  std::vector<NodeId> partner(K.size(), kNoNode);
  std::vector<std::uint8_t> present(K.size(), 0);  // indexed by upper node
  for (auto [lower, upper] : maximumMatching(K).pairs) {
    partner[lower] = upper;
    partner[upper] = lower;
    present[upper] = 1;
  }
  for (NodeId beta = 0; beta < static_cast<NodeId>(K.size()); ++beta) {
    if (!present[beta]) continue;
    const NodeId alpha = partner[beta];
    present[beta] = 0;
    out.field.pair(alpha, beta);
    for (NodeId a : K.facets(beta)) {
      if (a == alpha) continue;
      const NodeId b = partner[a];
      if (b > a && present[b]) present[b] = 0;  // reversed leading up-edge
    }
  }
  return out;
}

AlgorithmOutput frontierEdges(const SimplicialComplex& K) {
  AlgorithmOutput out;
  out.field = GradientField(K.size());
  const auto M = maximumMatching(K);
  for (int d = 1; d <= K.dimension(); ++d) {
    const auto g = extractInterface(K, d);
    auto m = InterfaceMatching::empty(g);
    const NodeId lo = K.firstId(d - 1), up = K.firstId(d);
    for (auto [a, b] : M.pairs) {
      if (K.dim(b) != d) continue;
      m.mateUpper[b - up] = a - lo;
      m.mateLower[a - lo] = b - up;
    }
    auto st = frontierEdges(g, m);
    out.components.insert(out.components.end(), st.begin(), st.end());
    for (auto [lower, upper] : m.toStage(g)) out.field.pair(lower, upper);
  }
  return out;
}

AlgorithmOutput coreductionHeuristic(const SimplicialComplex& K) {
  AlgorithmOutput out;
  out.field = GradientField(K.size());
  const auto N = static_cast<NodeId>(K.size());
  Liveness alive(K.size(), 1);
  std::vector<int> liveFacets(K.size());
  for (NodeId v = 0; v < N; ++v) liveFacets[v] = static_cast<int>(K.facets(v).size());
  std::vector<NodeId> queue;
  std::size_t head = 0, remaining = K.size();
  NodeId lowest = 0;

  auto kill = [&](NodeId v) {
    alive[v] = 0;
    --remaining;
    for (NodeId c : K.cofacets(v))
      if (alive[c] && --liveFacets[c] == 1) queue.push_back(c);
  };

  while (remaining > 0) {
    if (head < queue.size()) {
      const NodeId beta = queue[head++];
      if (!alive[beta] || liveFacets[beta] != 1) continue;
      NodeId alpha = kNoNode;
      for (NodeId f : K.facets(beta))
        if (alive[f]) alpha = f;
      out.field.pair(alpha, beta);
      kill(alpha);
      kill(beta);
      continue;
    }
    while (!alive[lowest]) ++lowest;  // first live node = lowest dimension, canonical first
    kill(lowest);
  }
  return out;
}

AlgorithmOutput reductionHeuristic(const SimplicialComplex& K) {
  AlgorithmOutput out;
  out.field = GradientField(K.size());
  const auto N = static_cast<NodeId>(K.size());
  const int D = K.dimension();
  Liveness alive(K.size(), 1);
  std::vector<int> liveCofacets(K.size());
  std::vector<NodeId> queue;
  for (NodeId v = 0; v < N; ++v) {
    liveCofacets[v] = static_cast<int>(K.cofacets(v).size());
    if (liveCofacets[v] == 1) queue.push_back(v);
  }
  std::size_t head = 0, remaining = K.size();
  std::vector<NodeId> cursor(D + 1);
  for (int d = 0; d <= D; ++d) cursor[d] = K.firstId(d);

  auto kill = [&](NodeId v) {
    alive[v] = 0;
    --remaining;
    for (NodeId f : K.facets(v))
      if (alive[f] && --liveCofacets[f] == 1) queue.push_back(f);
  };

  while (remaining > 0) {
    if (head < queue.size()) {
      const NodeId alpha = queue[head++];
      if (!alive[alpha] || liveCofacets[alpha] != 1) continue;
      NodeId beta = kNoNode;
      for (NodeId c : K.cofacets(alpha))
        if (alive[c]) beta = c;
      out.field.pair(alpha, beta);
      kill(beta);
      kill(alpha);
      continue;
    }
    for (int d = D; d >= 0; --d) {
      while (cursor[d] < K.endId(d) && !alive[cursor[d]]) ++cursor[d];
      if (cursor[d] < K.endId(d)) {
        kill(cursor[d]);
        break;
      }
    }
  }
  return out;
}

AlgorithmOutput runAlgorithm(AlgorithmKind kind, const SimplicialComplex& K,
                             AlgorithmOptions opts) {
  switch (kind) {
    case AlgorithmKind::Naive: return naiveAlgorithm(K);
    case AlgorithmKind::Frontier: return frontierEdges(K);
    case AlgorithmKind::Interface: return interfaceAlgorithm(K, opts);
    case AlgorithmKind::MinFacet: return minFacetAlgorithm(K, opts);
    case AlgorithmKind::Reduction: return reductionHeuristic(K);
    case AlgorithmKind::Coreduction: return coreductionHeuristic(K);
  }
  throw RangeError("unknown algorithm");
}

}  // namespace morseforge
