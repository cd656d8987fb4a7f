#include "morseforge/homology.hpp"

#include <algorithm>
#include <queue>
#include <sstream>
#include <unordered_map>

#include "morseforge/error.hpp"

namespace morseforge {

mpz_class IntegerMatrix::at(std::size_t r, std::size_t c) const {
  const auto& col = data_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const auto& e, std::size_t row) { return e.first < row; });
  return it != col.end() && it->first == r ? it->second : mpz_class(0);
}

void IntegerMatrix::set(std::size_t r, std::size_t c, const mpz_class& v) {
  if (r >= rows_ || c >= cols_) throw RangeError("matrix index out of range");
  auto& col = data_[c];
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const auto& e, std::size_t row) { return e.first < row; });
  const bool present = it != col.end() && it->first == r;
  if (v == 0) {
    if (present) col.erase(it);
  } else if (present) {
    it->second = v;
  } else {
    col.insert(it, {r, v});
  }
}

void IntegerMatrix::setColumn(std::size_t c, Column col) { data_[c] = std::move(col); }

std::size_t IntegerMatrix::nonZeros() const {
  std::size_t n = 0;
  for (const auto& col : data_) n += col.size();
  return n;
}

IntegerMatrix IntegerMatrix::fromDense(const std::vector<std::vector<long>>& rowsOfEntries) {
  const std::size_t r = rowsOfEntries.size();
  const std::size_t c = r ? rowsOfEntries[0].size() : 0;
  IntegerMatrix m(r, c);
  for (std::size_t j = 0; j < c; ++j)
    for (std::size_t i = 0; i < r; ++i)
      if (rowsOfEntries[i][j] != 0) m.data_[j].emplace_back(i, mpz_class(rowsOfEntries[i][j]));
  return m;
}

IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b) {
  if (a.cols_ != b.rows_) throw RangeError("matrix shapes do not compose");
  IntegerMatrix out(a.rows_, b.cols_);
  std::vector<mpz_class> acc(a.rows_);
  std::vector<std::uint8_t> touched(a.rows_, 0);
  std::vector<std::size_t> rows;
  for (std::size_t j = 0; j < b.cols_; ++j) {
    rows.clear();
    for (const auto& [k, bv] : b.data_[j]) {
      for (const auto& [i, av] : a.data_[k]) {
        if (!touched[i]) {
          touched[i] = 1;
          acc[i] = 0;
          rows.push_back(i);
        }
        acc[i] += av * bv;
      }
    }
    std::sort(rows.begin(), rows.end());
    for (auto i : rows) {
      if (acc[i] != 0) out.data_[j].emplace_back(i, acc[i]);
      touched[i] = 0;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Smith normal form

namespace {

using Column = IntegerMatrix::Column;

// dst -= f * src, both sorted by row.
Column axpy(const Column& dst, const mpz_class& f, const Column& src) {
  Column out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(dst[i++]);
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      out.emplace_back(src[j].first, -f * src[j].second);
      ++j;
    } else {
      mpz_class v = dst[i].second - f * src[j].second;
      if (v != 0) out.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

const mpz_class* entryAt(const Column& col, std::size_t r) {
  auto it = std::lower_bound(col.begin(), col.end(), r,
                             [](const auto& e, std::size_t row) { return e.first < row; });
  return it != col.end() && it->first == r ? &it->second : nullptr;
}

// Dense elimination of what the unit-pivot pass left behind.
std::vector<mpz_class> denseDiagonal(std::vector<std::vector<mpz_class>> a) {
  std::vector<mpz_class> diag;
  const std::size_t R = a.size();
  const std::size_t C = R ? a[0].size() : 0;
  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    auto pickMin = [&](bool restrictToCross) {
      std::size_t bi = R, bj = C;
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j) {
          if (restrictToCross && i != t && j != t) continue;
          if (a[i][j] == 0) continue;
          if (bi == R || abs(a[i][j]) < abs(a[bi][bj])) {
            bi = i;
            bj = j;
          }
        }
      return std::pair{bi, bj};
    };
    auto [pi, pj] = pickMin(false);
    if (pi == R) break;
    for (;;) {
      std::swap(a[t], a[pi]);
      for (auto& row : a) std::swap(row[t], row[pj]);
      const mpz_class p = a[t][t];
      mpz_class q;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (a[i][t] == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), p.get_mpz_t());
        for (std::size_t j = t; j < C; ++j)
          if (a[t][j] != 0) a[i][j] -= q * a[t][j];
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (a[t][j] == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), p.get_mpz_t());
        for (std::size_t i = t; i < R; ++i)
          if (a[i][t] != 0) a[i][j] -= q * a[i][t];
      }
      std::tie(pi, pj) = pickMin(true);
      if (pi == t && pj == t) break;
    }
    diag.push_back(abs(a[t][t]));
  }
  return diag;
}

}  // namespace

SmithNormalFormResult smithNormalForm(const IntegerMatrix& m) {
  const std::size_t R = m.rows(), C = m.cols();
  std::vector<Column> cols(C);
  std::vector<std::vector<std::uint32_t>> rowCols(R);  // may hold stale columns
  std::vector<std::size_t> rowCount(R, 0);              // exact, over live columns
  std::vector<std::uint8_t> colAlive(C, 1);
  for (std::size_t c = 0; c < C; ++c) {
    cols[c] = m.column(c);
    for (const auto& e : cols[c]) {
      rowCols[e.first].push_back(static_cast<std::uint32_t>(c));
      ++rowCount[e.first];
    }
    if (cols[c].empty()) colAlive[c] = 0;
  }
  std::vector<std::size_t> singleRows, singleCols;
  for (std::size_t r = 0; r < R; ++r)
    if (rowCount[r] == 1) singleRows.push_back(r);
  for (std::size_t c = 0; c < C; ++c)
    if (cols[c].size() == 1) singleCols.push_back(c);
  std::size_t units = 0;

  auto isUnit = [](const mpz_class& v) { return v == 1 || v == -1; };
  auto bestUnit = [&](std::size_t c) {
    std::pair<std::size_t, std::size_t> best{0, R};
    for (const auto& [r, v] : cols[c]) {
      if (!isUnit(v)) continue;
      const std::size_t cost = (cols[c].size() - 1) * (rowCount[r] - 1);
      if (best.second == R || cost < best.first) best = {cost, r};
    }
    return best;
  };
  using Key = std::pair<std::size_t, std::size_t>;  // (cost, column)
  std::priority_queue<Key, std::vector<Key>, std::greater<>> heap;
  for (std::size_t c = 0; c < C; ++c)
    if (colAlive[c])
      if (auto [cost, r] = bestUnit(c); r != R) heap.emplace(cost, c);

  // Unit pivot at (r, c): column operations clear row r, after which row
  // operations clear column c without touching anything else.
  auto pivot = [&](std::size_t r, std::size_t c) {
    const mpz_class p = *entryAt(cols[c], r);
    for (auto c2 : rowCols[r]) {
      if (c2 == c || !colAlive[c2]) continue;
      const mpz_class* a = entryAt(cols[c2], r);
      if (!a) continue;
      const mpz_class f = *a * p;
      const Column& dst = cols[c2];
      Column next = axpy(dst, f, cols[c]);
      // Row counts change where the merge created or cancelled an entry.
      std::size_t i = 0, j = 0;
      while (i < dst.size() || j < next.size()) {
        if (j == next.size() || (i < dst.size() && dst[i].first < next[j].first)) {
          const auto row = dst[i++].first;
          if (--rowCount[row] == 1) singleRows.push_back(row);
        } else if (i == dst.size() || next[j].first < dst[i].first) {
          const auto row = next[j++].first;
          ++rowCount[row];
          rowCols[row].push_back(c2);
        } else {
          ++i;
          ++j;
        }
      }
      cols[c2] = std::move(next);
      if (cols[c2].empty()) colAlive[c2] = 0;
      if (cols[c2].size() == 1) singleCols.push_back(c2);
      if (colAlive[c2])
        if (auto [cost, rr] = bestUnit(c2); rr != R) heap.emplace(cost, c2);
    }
    for (const auto& e : cols[c])
      if (e.first != r && --rowCount[e.first] == 1) singleRows.push_back(e.first);
    rowCount[r] = 0;
    rowCols[r].clear();
    cols[c].clear();
    colAlive[c] = 0;
    ++units;
  };

  for (;;) {
    // Pivots that cause no fill-in: rows or columns with a single entry.
    while (!singleRows.empty() || !singleCols.empty()) {
      if (!singleCols.empty()) {
        const auto c = singleCols.back();
        singleCols.pop_back();
        if (colAlive[c] && cols[c].size() == 1 && isUnit(cols[c][0].second))
          pivot(cols[c][0].first, c);
        continue;
      }
      const auto r = singleRows.back();
      singleRows.pop_back();
      if (rowCount[r] != 1) continue;
      for (auto c : rowCols[r]) {
        if (!colAlive[c]) continue;
        if (const mpz_class* v = entryAt(cols[c], r)) {
          if (isUnit(*v)) pivot(r, c);
          break;
        }
      }
    }
    // Otherwise the column whose cheapest unit entry has the least
    // Markowitz cost. Keys go stale as counts change; they are rechecked
    // on pop and entries whose cost rose are pushed back.
    bool pivoted = false;
    while (!heap.empty() && !pivoted) {
      const auto [key, c] = heap.top();
      heap.pop();
      if (!colAlive[c]) continue;
      const auto [cost, r] = bestUnit(c);
      if (r == R) continue;
      if (cost > key) {
        heap.emplace(cost, c);
        continue;
      }
      pivot(r, c);
      pivoted = true;
    }
    if (!pivoted) break;
  }

  std::vector<std::size_t> rowIndex(R, R), liveCols;
  std::size_t liveRows = 0;
  for (std::size_t c = 0; c < C; ++c) {
    if (!colAlive[c] || cols[c].empty()) continue;
    liveCols.push_back(c);
    for (const auto& e : cols[c])
      if (rowIndex[e.first] == R) rowIndex[e.first] = liveRows++;
  }
  std::vector<std::vector<mpz_class>> dense(liveRows, std::vector<mpz_class>(liveCols.size()));
  for (std::size_t j = 0; j < liveCols.size(); ++j)
    for (const auto& [r, v] : cols[liveCols[j]]) dense[rowIndex[r]][j] = v;

  SmithNormalFormResult res;
  res.diagonal.assign(units, mpz_class(1));
  std::vector<mpz_class> rest = denseDiagonal(std::move(dense));
  // Pairwise (gcd, lcm) turns any diagonal into the divisibility chain.
  for (std::size_t i = 0; i < rest.size(); ++i)
    for (std::size_t j = i + 1; j < rest.size(); ++j) {
      mpz_class g, l;
      mpz_gcd(g.get_mpz_t(), rest[i].get_mpz_t(), rest[j].get_mpz_t());
      mpz_lcm(l.get_mpz_t(), rest[i].get_mpz_t(), rest[j].get_mpz_t());
      rest[i] = g;
      rest[j] = l;
    }
  res.diagonal.insert(res.diagonal.end(), rest.begin(), rest.end());
  res.rank = res.diagonal.size();
  return res;
}

// ---------------------------------------------------------------------------
// Boundaries and homology

IntegerMatrix simplicialBoundary(const SimplicialComplex& K, int d) {
  if (d < 1 || d > K.dimension() + 1) throw RangeError("boundary dimension out of range");
  if (d == K.dimension() + 1) return IntegerMatrix(K.count(d - 1), 0);
  IntegerMatrix m(K.count(d - 1), K.count(d));
  const NodeId lo = K.firstId(d - 1);
  for (NodeId s = K.firstId(d); s < K.endId(d); ++s) {
    Column col;
    for (NodeId f : K.facets(s)) col.emplace_back(f - lo, mpz_class(K.incidence(s, f)));
    m.setColumn(K.indexInDim(s), std::move(col));
  }
  return m;
}

long long HomologyProfile::bettiSum() const {
  long long s = 0;
  for (auto b : betti) s += b;
  return s;
}

std::string HomologyProfile::toString() const {
  std::ostringstream os;
  os << "betti (";
  for (std::size_t d = 0; d < betti.size(); ++d) os << (d ? "," : "") << betti[d];
  os << ")";
  for (std::size_t d = 0; d < torsion.size(); ++d) {
    if (torsion[d].empty()) continue;
    os << " H" << d << " torsion";
    for (const auto& t : torsion[d]) os << " Z/" << t.get_str();
  }
  return os.str();
}

HomologyProfile homologyFromBoundaries(const std::vector<std::size_t>& cellCounts,
                                       const std::vector<IntegerMatrix>& boundaries) {
  const std::size_t n = cellCounts.size();
  std::vector<std::size_t> rank(n + 1, 0);
  HomologyProfile p;
  p.betti.assign(n, 0);
  p.torsion.assign(n, {});
  for (std::size_t d = 1; d < n; ++d) {
    const auto snf = smithNormalForm(boundaries[d]);
    rank[d] = snf.rank;
    for (const auto& x : snf.diagonal)
      if (x > 1) p.torsion[d - 1].push_back(x);
  }
  for (std::size_t d = 0; d < n; ++d)
    p.betti[d] = static_cast<long long>(cellCounts[d]) - static_cast<long long>(rank[d]) -
                 static_cast<long long>(rank[d + 1]);
  return p;
}

HomologyProfile bettiNumbers(const SimplicialComplex& K) {
  const int D = K.dimension();
  std::vector<std::size_t> counts(D + 1);
  std::vector<IntegerMatrix> bd(D + 1);
  for (int d = 0; d <= D; ++d) counts[d] = K.count(d);
  for (int d = 1; d <= D; ++d) bd[d] = simplicialBoundary(K, d);
  return homologyFromBoundaries(counts, bd);
}

IntegerMatrix morseBoundary(const SimplicialComplex& K, const GradientField& field, int d) {
  if (d < 1 || d > K.dimension() + 1) throw RangeError("boundary dimension out of range");
  if (d == K.dimension() + 1) return IntegerMatrix(criticalPerDimension(K, field)[d - 1], 0);
  const NodeId lo = K.firstId(d - 1), hi = K.endId(d - 1);
  const auto n = static_cast<std::size_t>(hi - lo);

  // Topological order of the flow alpha -> other facets of V(alpha).
  std::vector<int> indeg(n, 0);
  auto flowTarget = [&](NodeId a) {
    const NodeId b = field.partner(a);
    return b != kNoNode && K.dim(b) == d ? b : kNoNode;
  };
  for (NodeId a = lo; a < hi; ++a)
    if (NodeId b = flowTarget(a); b != kNoNode)
      for (NodeId y : K.facets(b))
        if (y != a) ++indeg[y - lo];
  std::vector<std::int32_t> pos(n, -1);
  std::vector<NodeId> queue;
  for (NodeId a = lo; a < hi; ++a)
    if (indeg[a - lo] == 0) queue.push_back(a);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const NodeId a = queue[head];
    pos[a - lo] = static_cast<std::int32_t>(head);
    if (NodeId b = flowTarget(a); b != kNoNode)
      for (NodeId y : K.facets(b))
        if (y != a && --indeg[y - lo] == 0) queue.push_back(y);
  }
  if (queue.size() != n)
    throw IntegrityError("gradient flow on level " + std::to_string(d - 1) + " has a cycle");

  std::vector<std::int32_t> rowOf(n, -1);
  std::size_t rows = 0;
  for (NodeId a = lo; a < hi; ++a)
    if (field.isCritical(a)) rowOf[a - lo] = static_cast<std::int32_t>(rows++);
  std::vector<NodeId> critTop;
  for (NodeId s = K.firstId(d); s < K.endId(d); ++s)
    if (field.isCritical(s)) critTop.push_back(s);

  IntegerMatrix m(rows, critTop.size());
  std::unordered_map<NodeId, mpz_class> x;
  std::priority_queue<std::int32_t, std::vector<std::int32_t>, std::greater<>> heap;
  auto add = [&](NodeId a, const mpz_class& v) {
    auto [it, fresh] = x.try_emplace(a, 0);
    if (fresh) heap.push(pos[a - lo]);
    it->second += v;
  };
  for (std::size_t j = 0; j < critTop.size(); ++j) {
    x.clear();
    for (NodeId f : K.facets(critTop[j])) add(f, K.incidence(critTop[j], f));
    Column col;
    while (!heap.empty()) {
      const NodeId a = queue[heap.top()];
      heap.pop();
      const mpz_class c = x[a];
      if (c == 0) continue;
      if (field.isCritical(a)) {
        col.emplace_back(rowOf[a - lo], c);
      } else if (NodeId b = flowTarget(a); b != kNoNode) {
        const mpz_class f = c * K.incidence(b, a);
        for (NodeId y : K.facets(b)) add(y, -f * K.incidence(b, y));
      }
    }
    std::sort(col.begin(), col.end(),
              [](const auto& p, const auto& q) { return p.first < q.first; });
    m.setColumn(j, std::move(col));
  }
  return m;
}

HomologyProfile morseHomology(const SimplicialComplex& K, const GradientField& field) {
  const int D = K.dimension();
  const auto counts = criticalPerDimension(K, field);
  std::vector<IntegerMatrix> bd(D + 1);
  for (int d = 1; d <= D; ++d) bd[d] = morseBoundary(K, field, d);
  return homologyFromBoundaries(counts, bd);
}

HomologyVerdict verifyHomology(const SimplicialComplex& K, const GradientField& field) {
  HomologyVerdict v;
  v.simplicial = bettiNumbers(K);
  try {
    v.morse = morseHomology(K, field);
  } catch (const IntegrityError& e) {
    v.message = e.what();
    return v;
  }
  v.ok = v.simplicial == v.morse;
  if (!v.ok)
    v.message = "Morse complex " + v.morse.toString() + " differs from simplicial " +
                v.simplicial.toString();
  return v;
}

}  // namespace morseforge
