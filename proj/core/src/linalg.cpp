#include "bkm/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace bkm {

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

const Rational* SparseRow::find(std::uint32_t col) const {
  auto it = std::lower_bound(idx.begin(), idx.end(), col);
  if (it == idx.end() || *it != col) return nullptr;
  return &val[static_cast<std::size_t>(it - idx.begin())];
}

Vec SparseRow::dense(std::size_t n) const {
  Vec v(n);
  for (std::size_t k = 0; k < idx.size(); ++k) v[idx[k]] = val[k];
  return v;
}

SparseRow SparseRow::from_dense(const Vec& v) {
  SparseRow r;
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0) {
      r.idx.push_back(static_cast<std::uint32_t>(k));
      r.val.push_back(v[k]);
    }
  return r;
}

void RowSpace::reduce(Vec& v) const {
  // rows are fully reduced, so one left-to-right sweep over pivot columns suffices
  Rational c;
  for (std::size_t col = 0; col < v.size(); ++col) {
    if (v[col] == 0) continue;
    long r = pivot_row_[col];
    if (r < 0) continue;
    const SparseRow& row = rows_[static_cast<std::size_t>(r)];
    c = v[col];
    for (std::size_t k = 0; k < row.idx.size(); ++k) v[row.idx[k]] -= c * row.val[k];
  }
}

bool RowSpace::contains(Vec v) const {
  reduce(v);
  return is_zero(v);
}

bool RowSpace::insert(Vec v) {
  if (v.size() != ncols_) throw std::invalid_argument("RowSpace::insert: width mismatch");
  reduce(v);
  std::size_t p = 0;
  while (p < v.size() && v[p] == 0) ++p;
  if (p == v.size()) return false;
  Rational inv = 1 / v[p];
  for (std::size_t k = p; k < v.size(); ++k)
    if (v[k] != 0) v[k] *= inv;
  SparseRow nr = SparseRow::from_dense(v);

  // clear the new pivot column from existing rows
  for (auto& row : rows_) {
    const Rational* hit = row.find(static_cast<std::uint32_t>(p));
    if (!hit) continue;
    Rational c = *hit;
    SparseRow merged;
    merged.idx.reserve(row.idx.size() + nr.idx.size());
    merged.val.reserve(row.idx.size() + nr.idx.size());
    std::size_t a = 0, b = 0;
    while (a < row.idx.size() || b < nr.idx.size()) {
      if (b == nr.idx.size() || (a < row.idx.size() && row.idx[a] < nr.idx[b])) {
        merged.idx.push_back(row.idx[a]);
        merged.val.push_back(row.val[a]);
        ++a;
      } else if (a == row.idx.size() || nr.idx[b] < row.idx[a]) {
        merged.idx.push_back(nr.idx[b]);
        merged.val.push_back(-c * nr.val[b]);
        ++b;
      } else {
        Rational x = row.val[a] - c * nr.val[b];
        if (x != 0) {
          merged.idx.push_back(row.idx[a]);
          merged.val.push_back(std::move(x));
        }
        ++a;
        ++b;
      }
    }
    row = std::move(merged);
  }
  pivot_row_[p] = static_cast<long>(rows_.size());
  rows_.push_back(std::move(nr));
  return true;
}

void RowSpace::append_reduced_unchecked(SparseRow row) {
  pivot_row_[row.idx.front()] = static_cast<long>(rows_.size());
  rows_.push_back(std::move(row));
}

std::vector<std::size_t> RowSpace::free_columns() const {
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < ncols_; ++c)
    if (pivot_row_[c] < 0) out.push_back(c);
  return out;
}

namespace {

using IRow = std::vector<Integer>;

IRow integer_row(const Vec& v) {
  Integer l = lcm_of_denominators(v);
  IRow r(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) {
    Rational s = v[k] * l;
    r[k] = s.get_num();
  }
  return r;
}

void make_primitive(IRow& r) {
  Integer g = 0;
  for (const auto& x : r)
    if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : r)
      if (x != 0) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

// Fraction-free Gauss-Jordan. Returns pivot columns; rows[0..rank) hold the
// reduced pivot rows.
std::vector<std::size_t> integer_rref(std::vector<IRow>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t sel = rows.size();
    for (std::size_t i = r; i < rows.size(); ++i)
      if (rows[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    if (rows[r][c] < 0)
      for (auto& x : rows[r]) x = -x;
    make_primitive(rows[r]);
    const IRow& piv = rows[r];
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      Integer a = rows[i][c];
      IRow& row = rows[i];
      for (std::size_t k = 0; k < ncols; ++k) {
        if (piv[k] == 0) {
          if (row[k] != 0) row[k] *= piv[c];
        } else {
          row[k] = row[k] * piv[c] - a * piv[k];
        }
      }
      make_primitive(row);
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

}  // namespace

std::vector<Vec> nullspace(const Mat& m, std::size_t ncols) {
  std::vector<IRow> rows;
  rows.reserve(m.size());
  for (const auto& v : m) {
    if (v.size() != ncols) throw std::invalid_argument("nullspace: width mismatch");
    if (!is_zero(v)) rows.push_back(integer_row(v));
  }
  auto pivots = integer_rref(rows, ncols);
  std::vector<bool> is_pivot(ncols, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    Vec x(ncols);
    x[f] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) {
      if (rows[r][f] == 0) continue;
      x[pivots[r]] = Rational(-rows[r][f], rows[r][pivots[r]]);
      x[pivots[r]].canonicalize();
    }
    Integer l = lcm_of_denominators(x);
    for (auto& e : x) e *= l;
    basis.push_back(std::move(x));
  }
  return basis;
}

std::size_t rank_of(const Mat& m, std::size_t ncols) {
  std::vector<IRow> rows;
  for (const auto& v : m)
    if (!is_zero(v)) rows.push_back(integer_row(v));
  return integer_rref(rows, ncols).size();
}

Rational determinant(const Mat& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  std::vector<IRow> a;
  Rational scale = 1;
  for (const auto& v : m) {
    if (v.size() != n) throw std::invalid_argument("determinant: not square");
    Integer l = lcm_of_denominators(v);
    scale *= l;
    a.push_back(integer_row(v));
  }
  // Bareiss
  Integer sign = 1, prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t sel = n;
    for (std::size_t i = k; i < n; ++i)
      if (a[i][k] != 0) {
        sel = i;
        break;
      }
    if (sel == n) return 0;
    if (sel != k) {
      std::swap(a[sel], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer t = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  Rational det(sign * a[n - 1][n - 1]);
  det /= scale;
  return det;
}

std::vector<Rational> solve_in_span(const std::vector<Vec>& basis, const Vec& v) {
  // columns = basis vectors, augmented with v
  const std::size_t k = basis.size();
  const std::size_t n = v.size();
  Mat aug(n, Vec(k + 1));
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < n; ++i) aug[i][j] = basis[j][i];
  for (std::size_t i = 0; i < n; ++i) aug[i][k] = -v[i];
  auto ker = nullspace(aug, k + 1);
  for (auto& x : ker) {
    if (x[k] == 0) continue;
    Rational s = 1 / x[k];
    std::vector<Rational> c(k);
    for (std::size_t j = 0; j < k; ++j) c[j] = x[j] * s;
    return c;
  }
  return {};
}

}  // namespace bkm
