#pragma once

#include <algorithm>
#include <optional>
#include <queue>
#include <vector>

#include "scalar.hpp"

namespace fp {

template <class K>
using Vec = std::vector<K>;

template <class K>
bool vec_is_zero(const Vec<K>& v) {
  return std::all_of(v.begin(), v.end(), [](const K& x) { return k_is_zero(x); });
}

// y += a * x
template <class K>
void vec_acc(Vec<K>& y, const K& a, const Vec<K>& x) {
  for (std::size_t i = 0; i < y.size(); ++i)
    if (!k_is_zero(x[i])) y[i] += a * x[i];
}

// Dense matrix over an exact field, row major.
template <class K>
struct Mat {
  int rows = 0, cols = 0;
  std::vector<K> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  K& at(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const K& at(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = K(1);
    return m;
  }

  Mat transpose() const {
    Mat t(cols, rows);
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
  }

  Vec<K> apply(const Vec<K>& v) const {
    require_internal(static_cast<int>(v.size()) == cols, "Mat::apply: size mismatch");
    Vec<K> out(rows, K(0));
    for (int i = 0; i < rows; ++i)
      for (int j = 0; j < cols; ++j)
        if (!k_is_zero(at(i, j)) && !k_is_zero(v[j])) out[i] += at(i, j) * v[j];
    return out;
  }

  Vec<K> col(int j) const {
    Vec<K> out(rows);
    for (int i = 0; i < rows; ++i) out[i] = at(i, j);
    return out;
  }

  Vec<K> row(int i) const {
    return Vec<K>(a.begin() + static_cast<std::size_t>(i) * cols,
                  a.begin() + static_cast<std::size_t>(i + 1) * cols);
  }

  friend Mat operator*(const Mat& x, const Mat& y) {
    require_internal(x.cols == y.rows, "Mat::mul: shape mismatch");
    Mat out(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
      for (int k = 0; k < x.cols; ++k) {
        const K& xik = x.at(i, k);
        if (k_is_zero(xik)) continue;
        for (int j = 0; j < y.cols; ++j)
          if (!k_is_zero(y.at(k, j))) out.at(i, j) += xik * y.at(k, j);
      }
    return out;
  }

  friend Mat operator+(const Mat& x, const Mat& y) {
    require_internal(x.rows == y.rows && x.cols == y.cols, "Mat::add: shape mismatch");
    Mat out = x;
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] += y.a[i];
    return out;
  }

  friend Mat operator-(const Mat& x, const Mat& y) {
    require_internal(x.rows == y.rows && x.cols == y.cols, "Mat::sub: shape mismatch");
    Mat out = x;
    for (std::size_t i = 0; i < out.a.size(); ++i) out.a[i] -= y.a[i];
    return out;
  }

  Mat scaled(const K& c) const {
    Mat out = *this;
    for (auto& x : out.a) x = x * c;
    return out;
  }

  bool is_zero() const { return vec_is_zero(a); }

  friend bool operator==(const Mat& x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) return false;
    for (std::size_t i = 0; i < x.a.size(); ++i)
      if (!(x.a[i] == y.a[i])) return false;
    return true;
  }
};

// Incremental row-space builder. Rows are stored sparsely (sorted
// column/value pairs) in echelon form with leftmost pivots normalized to 1;
// reduction walks an agenda of candidate nonzero columns, so the work is
// proportional to the support actually touched, not the ambient dimension.
// finalize() back-substitutes to the unique RREF of the span, so downstream
// basis choices are deterministic and independent of insertion order.
template <class K>
class EchelonBasis {
 public:
  struct Row {
    int pivot = -1;
    std::vector<std::pair<int, K>> entries;  // sorted by column; front() is the pivot, value 1

    K value_at(int col) const {
      auto it = std::lower_bound(entries.begin(), entries.end(), col,
                                 [](const std::pair<int, K>& e, int c) { return e.first < c; });
      return it != entries.end() && it->first == col ? it->second : K(0);
    }
  };

  explicit EchelonBasis(int dim) : dim_(dim), pivot_row_(dim, -1) {}

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }
  const std::vector<Row>& rows() const { return rows_; }
  bool has_pivot(int col) const { return pivot_row_[col] >= 0; }

  // Residual of v after elimination against the stored rows.
  Vec<K> reduce(Vec<K> v) const {
    require_internal(static_cast<int>(v.size()) == dim_, "EchelonBasis::reduce: dim mismatch");
    std::vector<int> agenda;
    for (int c = 0; c < dim_; ++c)
      if (!k_is_zero(v[c])) agenda.push_back(c);
    reduce_in_place(v, std::move(agenda), nullptr);
    return v;
  }

  bool contains(const Vec<K>& v) const { return vec_is_zero(reduce(v)); }

  // Adds v to the span. Returns true if the rank grew.
  bool insert(Vec<K> v) {
    require_internal(static_cast<int>(v.size()) == dim_, "EchelonBasis: dim mismatch");
    v = reduce(std::move(v));
    std::vector<int> support;
    for (int c = 0; c < dim_; ++c)
      if (!k_is_zero(v[c])) support.push_back(c);
    if (support.empty()) return false;
    adopt_row(v, support);
    return true;
  }

  // Adds a vector given by its nonzero entries (repeats accumulate), without
  // materializing it densely unless it enlarges the span.
  bool insert_sparse(const std::vector<std::pair<int, K>>& entries) {
    if (static_cast<int>(scratch_.size()) != dim_) scratch_.assign(dim_, K(0));
    std::vector<int> agenda;
    for (const auto& [c, val] : entries) {
      if (k_is_zero(scratch_[c])) agenda.push_back(c);
      scratch_[c] += val;
    }
    std::sort(agenda.begin(), agenda.end());
    agenda.erase(std::unique(agenda.begin(), agenda.end()), agenda.end());
    std::vector<int> touched;
    reduce_in_place(scratch_, std::move(agenda), &touched);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    std::vector<int> support;
    for (int c : touched)
      if (!k_is_zero(scratch_[c])) support.push_back(c);
    bool grew = !support.empty();
    if (grew) adopt_row(scratch_, support);
    for (int c : touched) scratch_[c] = K(0);
    return grew;
  }

  // Full back-substitution; afterwards rows are the RREF of the span, sorted
  // by pivot column.
  void finalize() {
    if (finalized_) return;
    std::sort(rows_.begin(), rows_.end(), [](const Row& a, const Row& b) { return a.pivot < b.pivot; });
    for (int i = static_cast<int>(rows_.size()) - 1; i >= 0; --i) {
      const int p = rows_[i].pivot;
      for (int j = 0; j < i; ++j) {
        K f = rows_[j].value_at(p);
        if (!k_is_zero(f)) rows_[j].entries = axpy(rows_[j].entries, -f, rows_[i].entries);
      }
    }
    for (int i = 0; i < static_cast<int>(rows_.size()); ++i) pivot_row_[rows_[i].pivot] = i;
    finalized_ = true;
  }

  std::vector<int> pivots() const {
    std::vector<int> out;
    for (int c = 0; c < dim_; ++c)
      if (pivot_row_[c] >= 0) out.push_back(c);
    return out;
  }

  std::vector<int> free_cols() const {
    std::vector<int> out;
    for (int c = 0; c < dim_; ++c)
      if (pivot_row_[c] < 0) out.push_back(c);
    return out;
  }

 private:
  static std::vector<std::pair<int, K>> axpy(const std::vector<std::pair<int, K>>& a, const K& f,
                                             const std::vector<std::pair<int, K>>& b) {  // a + f*b
    std::vector<std::pair<int, K>> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j >= b.size() || (i < a.size() && a[i].first < b[j].first)) {
        out.push_back(a[i++]);
      } else if (i >= a.size() || b[j].first < a[i].first) {
        out.emplace_back(b[j].first, f * b[j].second);
        ++j;
      } else {
        K v = a[i].second + f * b[j].second;
        if (!k_is_zero(v)) out.emplace_back(a[i].first, std::move(v));
        ++i, ++j;
      }
    }
    return out;
  }

  // Eliminates pivots in ascending column order, visiting only an agenda of
  // candidate columns (initially the support of v, extended by the nonzero
  // columns of every pivot row applied; those all lie to the right). When
  // `touched` is given it collects every column that may have been written.
  void reduce_in_place(Vec<K>& v, std::vector<int> agenda, std::vector<int>* touched) const {
    std::priority_queue<int, std::vector<int>, std::greater<int>> heap(std::greater<int>(),
                                                                       std::move(agenda));
    if (touched) {
      touched->clear();
      std::priority_queue<int, std::vector<int>, std::greater<int>> copy = heap;
      while (!copy.empty()) {
        touched->push_back(copy.top());
        copy.pop();
      }
    }
    int last = -1;
    while (!heap.empty()) {
      int c = heap.top();
      heap.pop();
      if (c == last) continue;
      last = c;
      if (k_is_zero(v[c])) continue;
      int r = pivot_row_[c];
      if (r < 0) continue;
      K f = std::move(v[c]);
      v[c] = K(0);
      for (const auto& [j, val] : rows_[r].entries) {
        if (j == c) continue;
        bool was_zero = k_is_zero(v[j]);
        v[j] -= f * val;
        if (was_zero) {
          heap.push(j);
          if (touched) touched->push_back(j);
        }
      }
    }
  }

  // Normalizes v (restricted to `support`, ascending) into a new pivot row;
  // v itself is left untouched.
  void adopt_row(const Vec<K>& v, const std::vector<int>& support) {
    const int pivot = support.front();
    K inv_lead = K(1) / v[pivot];
    Row row;
    row.pivot = pivot;
    row.entries.reserve(support.size());
    for (int c : support) row.entries.emplace_back(c, v[c] * inv_lead);
    pivot_row_[pivot] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(row));
    finalized_ = false;
  }

  int dim_;
  std::vector<Row> rows_;
  std::vector<int> pivot_row_;
  Vec<K> scratch_;
  bool finalized_ = false;
};

// Row rank, computed exactly.
template <class K>
int rank(const Mat<K>& m) {
  EchelonBasis<K> e(m.cols);
  for (int i = 0; i < m.rows; ++i) e.insert(m.row(i));
  return e.rank();
}

// Exact basis of the right null space { v : M v = 0 }. Basis vectors carry a
// unit entry at their free column, free columns in ascending order.
template <class K>
std::vector<Vec<K>> kernel_basis(const Mat<K>& m) {
  EchelonBasis<K> e(m.cols);
  for (int i = 0; i < m.rows; ++i) e.insert(m.row(i));
  e.finalize();
  std::vector<Vec<K>> out;
  for (int fcol : e.free_cols()) {
    Vec<K> v(m.cols, K(0));
    v[fcol] = K(1);
    for (const auto& row : e.rows()) {
      // row: x_pivot + sum_{c>pivot} row[c] x_c = 0
      K coef = row.value_at(fcol);
      if (!k_is_zero(coef)) v[row.pivot] = -coef;
    }
    out.push_back(std::move(v));
  }
  return out;
}

// Some x with A x = b, or nullopt when inconsistent. Free variables are set
// to zero (minimal pivot solution).
template <class K>
std::optional<Vec<K>> solve(const Mat<K>& a, const Vec<K>& b) {
  require_internal(static_cast<int>(b.size()) == a.rows, "solve: rhs size mismatch");
  // Eliminate on the augmented matrix.
  EchelonBasis<K> e(a.cols + 1);
  for (int i = 0; i < a.rows; ++i) {
    Vec<K> row = a.row(i);
    row.push_back(b[i]);
    e.insert(std::move(row));
  }
  e.finalize();
  if (e.has_pivot(a.cols)) return std::nullopt;  // a row 0 = 1
  Vec<K> x(a.cols, K(0));
  for (const auto& row : e.rows()) x[row.pivot] = row.value_at(a.cols);
  return x;
}

// Inverse of a square matrix, or nullopt when singular.
template <class K>
std::optional<Mat<K>> inverse(const Mat<K>& m) {
  require_internal(m.rows == m.cols, "inverse: not square");
  const int n = m.rows;
  EchelonBasis<K> e(2 * n);
  for (int i = 0; i < n; ++i) {
    Vec<K> row(2 * n, K(0));
    for (int j = 0; j < n; ++j) row[j] = m.at(i, j);
    row[n + i] = K(1);
    e.insert(std::move(row));
  }
  e.finalize();
  for (int j = 0; j < n; ++j)
    if (!e.has_pivot(j)) return std::nullopt;
  Mat<K> inv(n, n);
  for (const auto& row : e.rows())
    for (const auto& [col, val] : row.entries)
      if (col >= n) inv.at(row.pivot, col - n) = val;
  return inv;
}

}  // namespace fp
