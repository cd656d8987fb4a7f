#include "morseforge/complex.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "morseforge/error.hpp"

namespace morseforge {

Simplex::Simplex(std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.empty()) throw MalformedInputError("empty simplex");
  std::sort(vertices_.begin(), vertices_.end());
  if (vertices_.front() < 0) throw MalformedInputError("negative vertex id");
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw MalformedInputError("duplicate vertex " +
                              std::to_string(*std::adjacent_find(vertices_.begin(),
                                                                 vertices_.end())) +
                              " in simplex");
}

std::string Simplex::toString() const {
  std::string s;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(vertices_[i]);
  }
  return s;
}

namespace {

// Sorts a flat array of fixed-width records lexicographically and drops repeats.
void sortUnique(std::vector<Vertex>& flat, std::size_t width) {
  const std::size_t n = flat.size() / width;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(flat.begin() + a * width, flat.begin() + (a + 1) * width,
                                        flat.begin() + b * width, flat.begin() + (b + 1) * width);
  };
  auto equal = [&](std::size_t a, std::size_t b) {
    return std::equal(flat.begin() + a * width, flat.begin() + (a + 1) * width,
                      flat.begin() + b * width);
  };
  std::sort(order.begin(), order.end(), less);
  order.erase(std::unique(order.begin(), order.end(), equal), order.end());
  std::vector<Vertex> out;
  out.reserve(order.size() * width);
  for (std::size_t i : order)
    out.insert(out.end(), flat.begin() + i * width, flat.begin() + (i + 1) * width);
  flat = std::move(out);
}

// Index of `key` within a sorted flat array, or -1.
std::int64_t lookup(const std::vector<Vertex>& flat, std::size_t width,
                    std::span<const Vertex> key) {
  std::size_t lo = 0, hi = flat.size() / width;
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto rec = flat.begin() + mid * width;
    if (std::lexicographical_compare(rec, rec + width, key.begin(), key.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < flat.size() / width &&
      std::equal(key.begin(), key.end(), flat.begin() + lo * width))
    return static_cast<std::int64_t>(lo);
  return -1;
}

}  // namespace

SimplicialComplex SimplicialComplex::fromMaximalSimplices(
    const std::vector<std::vector<Vertex>>& simplices) {
  if (simplices.empty()) throw EmptyComplexError("complex has no simplices");

  std::vector<std::vector<Vertex>> level;
  for (const auto& raw : simplices) {
    Simplex s{raw};
    const auto d = static_cast<std::size_t>(s.dim());
    if (level.size() <= d) level.resize(d + 1);
    level[d].insert(level[d].end(), s.vertices().begin(), s.vertices().end());
  }
  const int D = static_cast<int>(level.size()) - 1;

  for (int d = D; d >= 0; --d) {
    const std::size_t w = static_cast<std::size_t>(d) + 1;
    sortUnique(level[d], w);
    if (d == 0) break;
    auto& below = level[d - 1];
    const std::size_t n = level[d].size() / w;
    below.reserve(below.size() + n * w * d);
    for (std::size_t i = 0; i < n; ++i) {
      const Vertex* rec = level[d].data() + i * w;
      for (std::size_t skip = 0; skip < w; ++skip)
        for (std::size_t k = 0; k < w; ++k)
          if (k != skip) below.push_back(rec[k]);
    }
  }

  SimplicialComplex K;
  K.verts_ = std::move(level);
  K.offset_.assign(D + 2, 0);
  for (int d = 0; d <= D; ++d) K.offset_[d + 1] = K.offset_[d] + K.verts_[d].size() / (d + 1);
  const std::size_t N = K.offset_[D + 1];
  K.dim_.resize(N);
  for (int d = 0; d <= D; ++d)
    std::fill(K.dim_.begin() + K.offset_[d], K.dim_.begin() + K.offset_[d + 1],
              static_cast<std::int8_t>(d));

  K.facetStart_.assign(N + 1, 0);
  for (std::size_t v = 0; v < N; ++v)
    K.facetStart_[v + 1] = K.facetStart_[v] + (K.dim_[v] > 0 ? K.dim_[v] + 1 : 0);
  K.facetList_.resize(K.facetStart_[N]);

  std::vector<Vertex> key;
  for (int d = 1; d <= D; ++d) {
    const std::size_t w = d + 1;
    const std::size_t n = K.verts_[d].size() / w;
    for (std::size_t i = 0; i < n; ++i) {
      const Vertex* rec = K.verts_[d].data() + i * w;
      std::size_t pos = K.facetStart_[K.offset_[d] + i];
      // Dropping the last vertex yields the lexicographically smallest facet.
      for (std::size_t skip = w; skip-- > 0;) {
        key.clear();
        for (std::size_t k = 0; k < w; ++k)
          if (k != skip) key.push_back(rec[k]);
        const auto j = lookup(K.verts_[d - 1], w - 1, key);
        K.facetList_[pos++] = static_cast<NodeId>(K.offset_[d - 1] + j);
      }
    }
  }

  K.cofacetStart_.assign(N + 1, 0);
  for (NodeId f : K.facetList_) ++K.cofacetStart_[f + 1];
  for (std::size_t v = 0; v < N; ++v) K.cofacetStart_[v + 1] += K.cofacetStart_[v];
  K.cofacetList_.resize(K.facetList_.size());
  std::vector<std::size_t> fill(K.cofacetStart_.begin(), K.cofacetStart_.end() - 1);
  for (std::size_t v = 0; v < N; ++v)
    for (std::size_t p = K.facetStart_[v]; p < K.facetStart_[v + 1]; ++p)
      K.cofacetList_[fill[K.facetList_[p]]++] = static_cast<NodeId>(v);
  return K;
}

std::size_t SimplicialComplex::count(int d) const {
  if (d < 0 || d > dimension()) return 0;
  return offset_[d + 1] - offset_[d];
}

std::span<const Vertex> SimplicialComplex::vertices(NodeId v) const {
  const int d = dim_[v];
  const std::size_t w = d + 1;
  return {verts_[d].data() + (v - offset_[d]) * w, w};
}

Simplex SimplicialComplex::simplex(NodeId v) const {
  auto vs = vertices(v);
  return Simplex{std::vector<Vertex>(vs.begin(), vs.end())};
}

int SimplicialComplex::incidence(NodeId sigma, NodeId tau) const {
  auto f = facets(sigma);
  auto it = std::lower_bound(f.begin(), f.end(), tau);
  if (it == f.end() || *it != tau) return 0;
  // Position j in the ascending facet list removes vertex d - j.
  const int removed = dim_[sigma] - static_cast<int>(it - f.begin());
  return removed % 2 == 0 ? 1 : -1;
}

std::optional<NodeId> SimplicialComplex::find(std::span<const Vertex> sortedVertices) const {
  const int d = static_cast<int>(sortedVertices.size()) - 1;
  if (d < 0 || d > dimension()) return std::nullopt;
  const auto j = lookup(verts_[d], d + 1, sortedVertices);
  if (j < 0) return std::nullopt;
  return static_cast<NodeId>(offset_[d] + j);
}

std::vector<NodeId> SimplicialComplex::maximalSimplices() const {
  std::vector<NodeId> out;
  for (std::size_t v = 0; v < size(); ++v)
    if (cofacetStart_[v] == cofacetStart_[v + 1]) out.push_back(static_cast<NodeId>(v));
  return out;
}

std::vector<std::vector<Vertex>> readSimplexList(std::istream& in) {
  std::vector<std::vector<Vertex>> out;
  std::string line;
  std::size_t lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::vector<Vertex> s;
    std::string tok;
    while (ls >> tok) {
      std::size_t used = 0;
      long long v = 0;
      try {
        v = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size() || v < 0)
        throw MalformedInputError("line " + std::to_string(lineNo) + ": bad vertex id '" +
                                  tok + "'");
      s.push_back(v);
    }
    out.push_back(std::move(s));
  }
  return out;
}

SimplicialComplex readComplex(std::istream& in) {
  return SimplicialComplex::fromMaximalSimplices(readSimplexList(in));
}

SimplicialComplex loadComplex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInputError("cannot open " + path);
  return readComplex(in);
}

void writeComplex(std::ostream& out, const SimplicialComplex& K) {
  for (NodeId v : K.maximalSimplices()) {
    auto vs = K.vertices(v);
    for (std::size_t i = 0; i < vs.size(); ++i) out << (i ? " " : "") << vs[i];
    out << '\n';
  }
}

long long eulerCharacteristic(const SimplicialComplex& K) {
  long long chi = 0;
  for (int d = 0; d <= K.dimension(); ++d)
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(K.count(d));
  return chi;
}

std::int32_t InterfaceView::localLower(NodeId v) const {
  auto it = std::lower_bound(lower.begin(), lower.end(), v);
  return it != lower.end() && *it == v ? static_cast<std::int32_t>(it - lower.begin()) : -1;
}

std::int32_t InterfaceView::localUpper(NodeId v) const {
  auto it = std::lower_bound(upper.begin(), upper.end(), v);
  return it != upper.end() && *it == v ? static_cast<std::int32_t>(it - upper.begin()) : -1;
}

namespace {

InterfaceView assemble(const SimplicialComplex& K, int d, std::vector<NodeId> upper,
                       std::vector<NodeId> lower, const Liveness* alive) {
  InterfaceView g;
  g.d = d;
  g.upper = std::move(upper);
  g.lower = std::move(lower);
  g.upStart.assign(g.upper.size() + 1, 0);
  for (std::size_t u = 0; u < g.upper.size(); ++u) {
    for (NodeId f : K.facets(g.upper[u])) {
      if (alive && !(*alive)[f]) continue;
      const auto l = g.localLower(f);
      if (l >= 0) g.upAdj.push_back(l);
    }
    g.upStart[u + 1] = static_cast<std::int32_t>(g.upAdj.size());
  }
  g.lowStart.assign(g.lower.size() + 1, 0);
  for (auto l : g.upAdj) ++g.lowStart[l + 1];
  for (std::size_t l = 0; l < g.lower.size(); ++l) g.lowStart[l + 1] += g.lowStart[l];
  g.lowAdj.resize(g.upAdj.size());
  std::vector<std::int32_t> fill(g.lowStart.begin(), g.lowStart.end() - 1);
  for (std::size_t u = 0; u < g.upper.size(); ++u)
    for (auto p = g.upStart[u]; p < g.upStart[u + 1]; ++p)
      g.lowAdj[fill[g.upAdj[p]]++] = static_cast<std::int32_t>(u);
  return g;
}

}  // namespace

InterfaceView extractInterface(const SimplicialComplex& K, int d) {
  Liveness all(K.size(), 1);
  return extractInterface(K, d, all);
}

InterfaceView extractInterface(const SimplicialComplex& K, int d, const Liveness& alive) {
  if (d < 1 || d > K.dimension())
    throw RangeError("interface index " + std::to_string(d) + " outside [1, " +
                     std::to_string(K.dimension()) + "]");
  std::vector<NodeId> upper, lower;
  for (NodeId v = K.firstId(d); v < K.endId(d); ++v)
    if (alive[v]) upper.push_back(v);
  for (NodeId v = K.firstId(d - 1); v < K.endId(d - 1); ++v)
    if (alive[v]) lower.push_back(v);
  return assemble(K, d, std::move(upper), std::move(lower), &alive);
}

InterfaceView inducedInterface(const SimplicialComplex& K, int d, std::vector<NodeId> upper,
                               const Liveness& alive) {
  std::vector<NodeId> lower;
  for (NodeId u : upper)
    for (NodeId f : K.facets(u))
      if (alive[f]) lower.push_back(f);
  std::sort(lower.begin(), lower.end());
  lower.erase(std::unique(lower.begin(), lower.end()), lower.end());
  return assemble(K, d, std::move(upper), std::move(lower), &alive);
}

std::size_t DualGraph::componentCount() const {
  std::vector<std::int32_t> parent(nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::int32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t comps = nodes.size();
  for (const auto& e : edges) {
    auto a = root(e.a), b = root(e.b);
    if (a != b) {
      parent[a] = b;
      --comps;
    }
  }
  return comps;
}

DualGraph buildDualGraph(const SimplicialComplex& K) {
  Liveness all(K.size(), 1);
  return buildDualGraph(K, all);
}

DualGraph buildDualGraph(const SimplicialComplex& K, const Liveness& alive) {
  const int D = K.dimension();
  if (D < 1) throw RangeError("dual graph needs dimension >= 1");
  DualGraph g;
  for (NodeId v = K.firstId(D); v < K.endId(D); ++v) g.nodes.push_back(v);
  const NodeId base = K.firstId(D);
  for (NodeId f = K.firstId(D - 1); f < K.endId(D - 1); ++f) {
    if (!alive[f]) continue;
    auto cf = K.cofacets(f);
    if (cf.size() != 2) continue;
    g.edges.push_back({cf[0] - base, cf[1] - base, f});
  }
  g.start.assign(g.nodes.size() + 1, 0);
  for (const auto& e : g.edges) {
    ++g.start[e.a + 1];
    ++g.start[e.b + 1];
  }
  for (std::size_t i = 0; i < g.nodes.size(); ++i) g.start[i + 1] += g.start[i];
  g.incident.resize(g.edges.size() * 2);
  std::vector<std::int32_t> fill(g.start.begin(), g.start.end() - 1);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    g.incident[fill[g.edges[e].a]++] = static_cast<std::int32_t>(e);
    g.incident[fill[g.edges[e].b]++] = static_cast<std::int32_t>(e);
  }
  return g;
}

bool isClosedPseudomanifold(const SimplicialComplex& K) {
  const int D = K.dimension();
  if (D < 1) return false;
  for (NodeId f = K.firstId(D - 1); f < K.endId(D - 1); ++f)
    if (K.cofacets(f).size() != 2) return false;
  return buildDualGraph(K).componentCount() == 1;
}

}  // namespace morseforge
