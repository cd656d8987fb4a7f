#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "morseforge/complex.hpp"
#include "morseforge/gradient.hpp"

namespace morseforge {

/// Sparse integer matrix stored by columns; each column is sorted by row
/// and holds no explicit zeros.
class IntegerMatrix {
 public:
  using Column = std::vector<std::pair<std::size_t, mpz_class>>;

  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Column& column(std::size_t c) const { return data_[c]; }

  mpz_class at(std::size_t r, std::size_t c) const;
  void set(std::size_t r, std::size_t c, const mpz_class& v);
  /// Replaces column c; entries must be sorted by row and nonzero.
  void setColumn(std::size_t c, Column col);

  std::size_t nonZeros() const;
  bool isZero() const { return nonZeros() == 0; }

  static IntegerMatrix fromDense(const std::vector<std::vector<long>>& rowsOfEntries);

  friend IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);
  friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Column> data_;
};

struct SmithNormalFormResult {
  /// Nonzero invariant factors d1 | d2 | ... ; zeros are omitted.
  std::vector<mpz_class> diagonal;
  std::size_t rank = 0;
};

SmithNormalFormResult smithNormalForm(const IntegerMatrix& m);

/// Boundary operator from d-chains to (d-1)-chains: rows are (d-1)-simplices,
/// columns d-simplices, both in canonical order. d = D+1 gives the empty
/// map into the top level. Throws RangeError unless 1 <= d <= D+1.
IntegerMatrix simplicialBoundary(const SimplicialComplex& K, int d);

struct HomologyProfile {
  std::vector<long long> betti;
  /// torsion[d]: invariant factors > 1 of H_d.
  std::vector<std::vector<mpz_class>> torsion;

  long long bettiSum() const;
  std::string toString() const;
  friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

/// Homology of a chain complex given its cell counts per dimension and its
/// boundary matrices boundaries[d] : C_d -> C_{d-1} for d = 1..D
/// (boundaries[0] is unused).
HomologyProfile homologyFromBoundaries(const std::vector<std::size_t>& cellCounts,
                                       const std::vector<IntegerMatrix>& boundaries);

HomologyProfile bettiNumbers(const SimplicialComplex& K);

/// Boundary of the Morse complex in dimension d: rows are critical
/// (d-1)-simplices, columns critical d-simplices, both in canonical order.
/// Throws IntegrityError if the field has a cycle in the (d-1)-level flow.
IntegerMatrix morseBoundary(const SimplicialComplex& K, const GradientField& field, int d);

HomologyProfile morseHomology(const SimplicialComplex& K, const GradientField& field);

struct HomologyVerdict {
  bool ok = false;
  HomologyProfile simplicial;
  HomologyProfile morse;
  std::string message;

  explicit operator bool() const { return ok; }
};

HomologyVerdict verifyHomology(const SimplicialComplex& K, const GradientField& field);

}  // namespace morseforge
