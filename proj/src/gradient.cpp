#include "morseforge/gradient.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include "morseforge/error.hpp"

namespace morseforge {

void GradientField::pair(NodeId lower, NodeId upper) {
  if (partner_[lower] != kNoNode || partner_[upper] != kNoNode)
    throw IntegrityError("node paired twice");
  partner_[lower] = upper;
  partner_[upper] = lower;
}

void GradientField::unpair(NodeId v) {
  const NodeId p = partner_[v];
  if (p == kNoNode) return;
  partner_[p] = kNoNode;
  partner_[v] = kNoNode;
}

std::size_t GradientField::pairCount() const {
  std::size_t n = 0;
  for (std::size_t v = 0; v < partner_.size(); ++v)
    if (partner_[v] > static_cast<NodeId>(v)) ++n;
  return n;
}

std::vector<std::pair<NodeId, NodeId>> GradientField::pairs() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (std::size_t v = 0; v < partner_.size(); ++v)
    if (partner_[v] > static_cast<NodeId>(v)) out.emplace_back(static_cast<NodeId>(v), partner_[v]);
  return out;
}

namespace {

std::string describe(const SimplicialComplex& K, NodeId v) {
  return "[" + K.simplex(v).toString() + "]";
}

// Depth-first search for a directed cycle in the d-interface oriented by
// `partner`. Returns the cycle (closed) or an empty vector.
std::vector<NodeId> findCycle(const SimplicialComplex& K, const std::vector<NodeId>& partner,
                              int d) {
  const NodeId lo = K.firstId(d - 1), hi = K.endId(d);
  std::vector<std::uint8_t> color(hi - lo, 0);
  std::vector<NodeId> parent(hi - lo, kNoNode);
  struct Frame {
    NodeId v;
    std::size_t next;
  };
  std::vector<Frame> stack;

  // Out-neighbours within the interface.
  auto successors = [&](NodeId v, std::vector<NodeId>& out) {
    out.clear();
    if (K.dim(v) == d) {
      for (NodeId f : K.facets(v))
        if (partner[f] != v) out.push_back(f);
    } else if (partner[v] != kNoNode && partner[v] > v) {
      out.push_back(partner[v]);
    }
  };

  std::vector<NodeId> succ;
  for (NodeId root = lo; root < hi; ++root) {
    if (color[root - lo] != 0) continue;
    stack.push_back({root, 0});
    color[root - lo] = 1;
    while (!stack.empty()) {
      auto& fr = stack.back();
      successors(fr.v, succ);
      if (fr.next >= succ.size()) {
        color[fr.v - lo] = 2;
        stack.pop_back();
        continue;
      }
      const NodeId w = succ[fr.next++];
      if (color[w - lo] == 1) {
        std::vector<NodeId> cyc;
        for (NodeId x = fr.v; x != w; x = parent[x - lo]) cyc.push_back(x);
        cyc.push_back(w);
        std::reverse(cyc.begin(), cyc.end());
        cyc.push_back(w);
        return cyc;
      }
      if (color[w - lo] == 0) {
        color[w - lo] = 1;
        parent[w - lo] = fr.v;
        stack.push_back({w, 0});
      }
    }
  }
  return {};
}

}  // namespace

GvfVerdict verifyGVF(const SimplicialComplex& K,
                     std::span<const std::pair<NodeId, NodeId>> pairs) {
  GvfVerdict verdict;
  std::vector<NodeId> partner(K.size(), kNoNode);
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || static_cast<std::size_t>(a) >= K.size() ||
        static_cast<std::size_t>(b) >= K.size()) {
      verdict.ok = false;
      verdict.message = "pair references a node outside the complex";
      return verdict;
    }
    const NodeId lower = K.dim(a) < K.dim(b) ? a : b;
    const NodeId upper = lower == a ? b : a;
    if (K.dim(upper) != K.dim(lower) + 1 || K.incidence(upper, lower) == 0) {
      verdict.ok = false;
      verdict.message = "pair " + describe(K, lower) + " " + describe(K, upper) +
                        " is not a facet incidence";
      return verdict;
    }
    for (NodeId v : {lower, upper}) {
      if (partner[v] != kNoNode) {
        verdict.ok = false;
        verdict.message = "simplex " + describe(K, v) + " appears in more than one pair";
        return verdict;
      }
    }
    partner[lower] = upper;
    partner[upper] = lower;
  }
  for (int d = 1; d <= K.dimension(); ++d) {
    auto cyc = findCycle(K, partner, d);
    if (!cyc.empty()) {
      verdict.ok = false;
      verdict.message = "orientation cycle in interface " + std::to_string(d) + ":";
      for (NodeId v : cyc) verdict.message += " " + describe(K, v);
      verdict.cycle = std::move(cyc);
      return verdict;
    }
  }
  return verdict;
}

GvfVerdict verifyGVF(const SimplicialComplex& K, const GradientField& field) {
  if (field.nodeCount() != K.size()) return {false, "field size does not match complex", {}};
  const auto p = field.pairs();
  return verifyGVF(K, p);
}

std::vector<std::size_t> criticalPerDimension(const SimplicialComplex& K,
                                              const GradientField& field) {
  std::vector<std::size_t> out(K.dimension() + 1, 0);
  for (std::size_t v = 0; v < K.size(); ++v)
    if (field.isCritical(static_cast<NodeId>(v))) ++out[K.dim(static_cast<NodeId>(v))];
  return out;
}

void writeGradientField(std::ostream& out, const SimplicialComplex& K,
                        const GradientField& field) {
  auto emit = [&](NodeId v) {
    auto vs = K.vertices(v);
    for (std::size_t i = 0; i < vs.size(); ++i) out << (i ? "," : "") << vs[i];
  };
  for (auto [lower, upper] : field.pairs()) {
    emit(lower);
    out << ' ';
    emit(upper);
    out << '\n';
  }
}

std::vector<std::pair<NodeId, NodeId>> readGradientPairs(std::istream& in,
                                                         const SimplicialComplex& K) {
  std::vector<std::pair<NodeId, NodeId>> out;
  std::string line;
  std::size_t lineNo = 0;
  auto parseSimplex = [&](const std::string& tok) {
    std::vector<Vertex> vs;
    std::stringstream ss(tok);
    std::string part;
    while (std::getline(ss, part, ',')) {
      std::size_t used = 0;
      long long v = -1;
      try {
        v = std::stoll(part, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || used != part.size() || v < 0)
        throw MalformedInputError("line " + std::to_string(lineNo) + ": bad vertex '" + part + "'");
      vs.push_back(v);
    }
    Simplex s{std::move(vs)};
    auto id = K.find(s);
    if (!id)
      throw MalformedInputError("line " + std::to_string(lineNo) + ": simplex [" + s.toString() +
                                "] is not in the complex");
    return *id;
  };
  while (std::getline(in, line)) {
    ++lineNo;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string a, b, extra;
    if (!(ls >> a >> b) || (ls >> extra))
      throw MalformedInputError("line " + std::to_string(lineNo) + ": expected two simplices");
    out.emplace_back(parseSimplex(a), parseSimplex(b));
  }
  return out;
}

}  // namespace morseforge
