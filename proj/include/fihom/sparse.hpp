#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fihom/matrix.hpp"

namespace fihom {

// Column-major sparse matrix. Koszul differentials at large evaluation
// degrees are far too big to hold densely but have only a few entries per
// column, so rank queries go through this representation.
template <FieldContext F>
class SparseMatrix {
 public:
  using Elt = typename F::Elt;
  using Entry = std::pair<int, Elt>;  // (row, value)

  SparseMatrix() : fld_(), rows_(0), cols_(0) {}
  SparseMatrix(const F& f, int rows, int cols)
      : fld_(f), rows_(rows), cols_(cols),
        cols_data_(static_cast<size_t>(cols)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const F& field() const { return fld_; }

  const std::vector<Entry>& column(int j) const {
    return cols_data_[static_cast<size_t>(j)];
  }

  void add(int i, int j, const Elt& v) {
    if (v.is_zero()) return;
    cols_data_[static_cast<size_t>(j)].emplace_back(i, v);
    finalized_ = false;
  }

  // Adds c * b at offset (i0, j0).
  void add_block(int i0, int j0, const Matrix<F>& b, const Elt& c) {
    for (int j = 0; j < b.cols(); ++j)
      for (int i = 0; i < b.rows(); ++i) {
        if (b.at(i, j).is_zero()) continue;
        add(i0 + i, j0 + j, c * b.at(i, j));
      }
  }

  void add_block(int i0, int j0, const SparseMatrix& b, const Elt& c) {
    for (int j = 0; j < b.cols(); ++j)
      for (const auto& [i, v] : b.column(j)) add(i0 + i, j0 + j, c * v);
  }

  // Sorts columns and merges duplicate positions.
  void finalize() {
    for (auto& col : cols_data_) {
      std::sort(col.begin(), col.end(),
                [](const Entry& a, const Entry& b) { return a.first < b.first; });
      std::vector<Entry> merged;
      for (auto& e : col) {
        if (!merged.empty() && merged.back().first == e.first) {
          merged.back().second += e.second;
        } else {
          merged.push_back(e);
        }
      }
      std::erase_if(merged, [](const Entry& e) { return e.second.is_zero(); });
      col = std::move(merged);
    }
    finalized_ = true;
  }

  bool is_zero() const {
    for (const auto& col : cols_data_)
      for (const auto& e : col)
        if (!e.second.is_zero()) return false;
    return true;
  }

  long nnz() const {
    long n = 0;
    for (const auto& col : cols_data_) n += static_cast<long>(col.size());
    return n;
  }

  SparseMatrix operator*(const SparseMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("sparse product mismatch");
    SparseMatrix r(fld_, rows_, o.cols_);
    std::vector<Elt> acc(static_cast<size_t>(rows_), fld_.zero());
    std::vector<int> touched;
    for (int j = 0; j < o.cols_; ++j) {
      touched.clear();
      for (const auto& [k, v] : o.column(j)) {
        for (const auto& [i, w] : column(k)) {
          if (acc[static_cast<size_t>(i)].is_zero()) touched.push_back(i);
          acc[static_cast<size_t>(i)] += w * v;
        }
      }
      std::sort(touched.begin(), touched.end());
      for (int i : touched) {
        if (!acc[static_cast<size_t>(i)].is_zero())
          r.cols_data_[static_cast<size_t>(j)].emplace_back(i, acc[static_cast<size_t>(i)]);
        acc[static_cast<size_t>(i)] = fld_.zero();
      }
    }
    r.finalized_ = true;
    return r;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    SparseMatrix x = a, y = b;
    x.finalize();
    y.finalize();
    for (int j = 0; j < a.cols_; ++j) {
      const auto& ca = x.column(j);
      const auto& cb = y.column(j);
      if (ca.size() != cb.size()) return false;
      for (size_t k = 0; k < ca.size(); ++k)
        if (ca[k].first != cb[k].first || !(ca[k].second == cb[k].second))
          return false;
    }
    return true;
  }

  Matrix<F> to_dense() const {
    Matrix<F> d(fld_, rows_, cols_);
    for (int j = 0; j < cols_; ++j)
      for (const auto& [i, v] : column(j)) d.at(i, j) += v;
    return d;
  }

  static SparseMatrix from_dense(const Matrix<F>& d) {
    SparseMatrix s(d.field(), d.rows(), d.cols());
    for (int j = 0; j < d.cols(); ++j)
      for (int i = 0; i < d.rows(); ++i)
        if (!d.at(i, j).is_zero()) s.add(i, j, d.at(i, j));
    s.finalized_ = true;
    return s;
  }

 private:
  F fld_;
  int rows_;
  int cols_;
  std::vector<std::vector<Entry>> cols_data_;
  bool finalized_ = false;
};

// ---------------------------------------------------------------------------
// Exact rank. Two independent elimination backends share only the structural
// preprocessing (connected components of the support graph, then peeling of
// singleton rows/columns, which is arithmetic-free and rank-exact).

enum class Backend { Gauss, Bareiss };

inline const char* backend_name(Backend b) {
  return b == Backend::Gauss ? "gauss" : "bareiss";
}

struct oracle_mismatch_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Rank policy threaded through every rank query. In paired mode both
// backends run on every core and must agree.
struct RankPolicy {
  Backend backend = Backend::Gauss;
  bool paired = false;
  mutable long calls = 0;
  mutable long paired_checks = 0;
};

namespace detail {

// Dense fraction-free elimination (two-term cross-multiplication update with
// division by the previous pivot). Over a field each step rescales the active
// rows by pivot/prev, so rank is preserved; on integer input the intermediates
// are the classical minors.
template <FieldContext F>
long rank_dense_bareiss(Matrix<F> m) {
  const F& f = m.field();
  typename F::Elt prev = f.one();
  long rank = 0;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int pr = -1;
    for (int i = row; i < m.rows(); ++i) {
      if (!m.at(i, col).is_zero()) {
        pr = i;
        break;
      }
    }
    if (pr < 0) continue;
    if (pr != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pr, j), m.at(row, j));
    typename F::Elt pivot = m.at(row, col);
    for (int i = row + 1; i < m.rows(); ++i) {
      typename F::Elt head = m.at(i, col);
      for (int j = col + 1; j < m.cols(); ++j) {
        m.at(i, j) = (pivot * m.at(i, j) - head * m.at(row, j)) / prev;
      }
      m.at(i, col) = f.zero();
    }
    prev = pivot;
    ++rank;
    ++row;
  }
  return rank;
}

// Sparse forward row reduction with division, pivot at the leading column.
template <FieldContext F>
long rank_sparse_gauss(const F& f,
                       std::vector<std::vector<std::pair<int, typename F::Elt>>> rows,
                       int ncols) {
  using Row = std::vector<std::pair<int, typename F::Elt>>;
  std::vector<Row> pivot_rows(static_cast<size_t>(ncols));
  std::vector<char> has_pivot(static_cast<size_t>(ncols), 0);
  long rank = 0;
  for (auto& r : rows) {
    Row cur = std::move(r);
    while (!cur.empty()) {
      int lead = cur.front().first;
      if (!has_pivot[static_cast<size_t>(lead)]) {
        // normalize so the leading value is 1
        typename F::Elt inv = f.one() / cur.front().second;
        for (auto& e : cur) e.second *= inv;
        pivot_rows[static_cast<size_t>(lead)] = std::move(cur);
        has_pivot[static_cast<size_t>(lead)] = 1;
        ++rank;
        break;
      }
      // cur -= cur.lead * pivot_row   (merge of sorted sparse rows)
      const Row& p = pivot_rows[static_cast<size_t>(lead)];
      typename F::Elt c = cur.front().second;
      Row next;
      next.reserve(cur.size() + p.size());
      size_t a = 0, b = 0;
      while (a < cur.size() || b < p.size()) {
        if (b == p.size() || (a < cur.size() && cur[a].first < p[b].first)) {
          next.push_back(cur[a++]);
        } else if (a == cur.size() || p[b].first < cur[a].first) {
          next.emplace_back(p[b].first, -(c * p[b].second));
          ++b;
        } else {
          typename F::Elt v = cur[a].second - c * p[b].second;
          if (!v.is_zero()) next.emplace_back(cur[a].first, v);
          ++a;
          ++b;
        }
      }
      cur = std::move(next);
    }
  }
  return rank;
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] =
          parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

}  // namespace detail

template <FieldContext F>
long rank(const SparseMatrix<F>& m_in, const RankPolicy& policy) {
  using Elt = typename F::Elt;
  // Peeling assumes one entry per position, so merge duplicates first.
  SparseMatrix<F> m = m_in;
  m.finalize();
  const F& f = m.field();
  ++policy.calls;

  // Component split: nodes are rows (0..r-1) and columns (r..r+c-1).
  detail::UnionFind uf(m.rows() + m.cols());
  for (int j = 0; j < m.cols(); ++j)
    for (const auto& [i, v] : m.column(j)) uf.unite(i, m.rows() + j);

  // Group nonempty columns by component root.
  std::vector<std::vector<int>> comp_cols;
  std::vector<int> root_slot(static_cast<size_t>(m.rows() + m.cols()), -1);
  for (int j = 0; j < m.cols(); ++j) {
    if (m.column(j).empty()) continue;
    int r = uf.find(m.rows() + j);
    if (root_slot[static_cast<size_t>(r)] < 0) {
      root_slot[static_cast<size_t>(r)] = static_cast<int>(comp_cols.size());
      comp_cols.emplace_back();
    }
    comp_cols[static_cast<size_t>(root_slot[static_cast<size_t>(r)])].push_back(j);
  }

  long total = 0;
  for (const auto& cols : comp_cols) {
    // Compact the component.
    std::vector<int> row_ids;
    std::vector<int> row_map(static_cast<size_t>(m.rows()), -1);
    std::vector<std::vector<std::pair<int, Elt>>> comp(cols.size());
    for (size_t cj = 0; cj < cols.size(); ++cj) {
      for (const auto& [i, v] : m.column(cols[cj])) {
        if (row_map[static_cast<size_t>(i)] < 0) {
          row_map[static_cast<size_t>(i)] = static_cast<int>(row_ids.size());
          row_ids.push_back(i);
        }
        comp[cj].emplace_back(row_map[static_cast<size_t>(i)], v);
      }
    }
    int nr = static_cast<int>(row_ids.size());
    int nc = static_cast<int>(cols.size());

    // Peel singleton rows/columns; each peeled pivot adds one to the rank and
    // removes its row and column with no arithmetic.
    std::vector<int> row_cnt(static_cast<size_t>(nr), 0);
    std::vector<int> col_cnt(static_cast<size_t>(nc), 0);
    std::vector<std::vector<int>> row_to_cols(static_cast<size_t>(nr));
    for (int j = 0; j < nc; ++j) {
      col_cnt[static_cast<size_t>(j)] = static_cast<int>(comp[static_cast<size_t>(j)].size());
      for (const auto& [i, v] : comp[static_cast<size_t>(j)]) {
        ++row_cnt[static_cast<size_t>(i)];
        row_to_cols[static_cast<size_t>(i)].push_back(j);
      }
    }
    std::vector<char> row_dead(static_cast<size_t>(nr), 0);
    std::vector<char> col_dead(static_cast<size_t>(nc), 0);
    long peeled = 0;
    bool progress = true;
    auto kill_row = [&](int i) {
      row_dead[static_cast<size_t>(i)] = 1;
      for (int j : row_to_cols[static_cast<size_t>(i)])
        if (!col_dead[static_cast<size_t>(j)]) --col_cnt[static_cast<size_t>(j)];
    };
    auto kill_col = [&](int j) {
      col_dead[static_cast<size_t>(j)] = 1;
      for (const auto& [i, v] : comp[static_cast<size_t>(j)])
        if (!row_dead[static_cast<size_t>(i)]) --row_cnt[static_cast<size_t>(i)];
    };
    while (progress) {
      progress = false;
      for (int j = 0; j < nc; ++j) {
        if (col_dead[static_cast<size_t>(j)] || col_cnt[static_cast<size_t>(j)] != 1)
          continue;
        int pr = -1;
        for (const auto& [i, v] : comp[static_cast<size_t>(j)])
          if (!row_dead[static_cast<size_t>(i)]) pr = i;
        col_dead[static_cast<size_t>(j)] = 1;
        kill_row(pr);
        ++peeled;
        progress = true;
      }
      for (int i = 0; i < nr; ++i) {
        if (row_dead[static_cast<size_t>(i)] || row_cnt[static_cast<size_t>(i)] != 1)
          continue;
        int pc = -1;
        for (int j : row_to_cols[static_cast<size_t>(i)]) {
          if (col_dead[static_cast<size_t>(j)]) continue;
          for (const auto& [ri, v] : comp[static_cast<size_t>(j)])
            if (ri == i) pc = j;
        }
        if (pc < 0) continue;  // count went stale through earlier kills
        row_dead[static_cast<size_t>(i)] = 1;
        kill_col(pc);
        ++peeled;
        progress = true;
      }
    }

    // Compact the live core.
    std::vector<int> live_rows;
    std::vector<int> live_row_map(static_cast<size_t>(nr), -1);
    for (int i = 0; i < nr; ++i) {
      if (!row_dead[static_cast<size_t>(i)] && row_cnt[static_cast<size_t>(i)] > 0) {
        live_row_map[static_cast<size_t>(i)] = static_cast<int>(live_rows.size());
        live_rows.push_back(i);
      }
    }
    std::vector<std::vector<std::pair<int, Elt>>> core_rows(live_rows.size());
    int live_cols = 0;
    for (int j = 0; j < nc; ++j) {
      if (col_dead[static_cast<size_t>(j)]) continue;
      bool any = false;
      for (const auto& [i, v] : comp[static_cast<size_t>(j)]) {
        if (row_dead[static_cast<size_t>(i)]) continue;
        core_rows[static_cast<size_t>(live_row_map[static_cast<size_t>(i)])]
            .emplace_back(live_cols, v);
        any = true;
      }
      if (any) ++live_cols;
    }

    auto core_rank = [&](Backend backend) -> long {
      if (live_rows.empty() || live_cols == 0) return 0;
      if (backend == Backend::Gauss) {
        auto rows_copy = core_rows;
        for (auto& r : rows_copy)
          std::sort(r.begin(), r.end(),
                    [](const auto& a, const auto& b) { return a.first < b.first; });
        return detail::rank_sparse_gauss<F>(f, std::move(rows_copy), live_cols);
      }
      Matrix<F> dense(f, static_cast<int>(live_rows.size()), live_cols);
      for (size_t i = 0; i < core_rows.size(); ++i)
        for (const auto& [j, v] : core_rows[i])
          dense.at(static_cast<int>(i), j) += v;
      return detail::rank_dense_bareiss(std::move(dense));
    };

    long r = core_rank(policy.backend);
    if (policy.paired) {
      Backend other =
          policy.backend == Backend::Gauss ? Backend::Bareiss : Backend::Gauss;
      long r2 = core_rank(other);
      ++policy.paired_checks;
      if (r2 != r)
        throw oracle_mismatch_error(
            "rank mismatch between gauss and bareiss backends: " +
            std::to_string(policy.backend == Backend::Gauss ? r : r2) + " vs " +
            std::to_string(policy.backend == Backend::Gauss ? r2 : r));
    }
    total += peeled + r;
  }
  return total;
}

template <FieldContext F>
long rank(const Matrix<F>& m, const RankPolicy& policy) {
  return rank(SparseMatrix<F>::from_dense(m), policy);
}

template <FieldContext F>
long rank(const Matrix<F>& m, Backend backend) {
  RankPolicy p;
  p.backend = backend;
  return rank(m, p);
}

template <FieldContext F>
long rank(const SparseMatrix<F>& m, Backend backend) {
  RankPolicy p;
  p.backend = backend;
  return rank(m, p);
}

}  // namespace fihom
