#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "bkm/rational.hpp"

namespace bkm {

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;  // row major

bool is_zero(const Vec& v);

// Sparse row with strictly increasing column indices.
struct SparseRow {
  std::vector<std::uint32_t> idx;
  std::vector<Rational> val;

  const Rational* find(std::uint32_t col) const;
  Vec dense(std::size_t n) const;
  static SparseRow from_dense(const Vec& v);
};

// A subspace of Q^n kept in fully reduced row echelon form with pivot 1.
// Pivot of a row is its first nonzero column, so the basis is canonical.
class RowSpace {
 public:
  RowSpace() = default;
  explicit RowSpace(std::size_t ncols) : ncols_(ncols), pivot_row_(ncols, -1) {}

  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }

  // Returns true if the space grew.
  bool insert(Vec v);
  // Reduce v modulo the space (zero at every pivot column afterwards).
  void reduce(Vec& v) const;
  bool contains(Vec v) const;

  // Appends a row that is already reduced against every stored row and
  // whose pivot column is zero in every stored row.
  void append_reduced_unchecked(SparseRow row);

  const std::vector<SparseRow>& rows() const { return rows_; }
  long pivot_row(std::size_t col) const { return pivot_row_[col]; }
  std::size_t pivot_col(std::size_t row) const { return rows_[row].idx.front(); }
  std::vector<std::size_t> free_columns() const;

 private:
  std::size_t ncols_ = 0;
  std::vector<SparseRow> rows_;
  std::vector<long> pivot_row_;
};

// Basis of {x : M x = 0} for an m x ncols matrix, via fraction-free
// Gauss-Jordan over Z with first-nonzero pivoting. One primitive integral
// vector per free column, in column order.
std::vector<Vec> nullspace(const Mat& m, std::size_t ncols);
std::size_t rank_of(const Mat& m, std::size_t ncols);
Rational determinant(const Mat& m);

// Coordinates c with sum_k c_k basis[k] = v, or empty if v is not in the span.
std::vector<Rational> solve_in_span(const std::vector<Vec>& basis, const Vec& v);

}  // namespace bkm
