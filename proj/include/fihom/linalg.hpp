#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fihom/matrix.hpp"
#include "fihom/sparse.hpp"

namespace fihom {

struct not_a_complex_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct not_a_chain_map_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Incremental reduced row echelon form over an exact field. Rows are kept
// fully reduced with unit pivots, so reduce() returns a canonical normal form
// modulo the span. Pivoting is first-nonzero in column order, which keeps all
// derived bases reproducible.
template <FieldContext F>
class SpanBuilder {
 public:
  using Elt = typename F::Elt;

  SpanBuilder(const F& f, int dim) : fld_(f), dim_(dim) {}

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(rows_.size()); }

  // Normal form of v modulo the current span.
  std::vector<Elt> reduce(std::vector<Elt> v) const {
    for (size_t r = 0; r < rows_.size(); ++r) {
      const Elt& c = v[static_cast<size_t>(pivots_[r])];
      if (c.is_zero()) continue;
      Elt coef = c;  // pivot entries are 1
      const auto& row = rows_[r];
      for (int j = 0; j < dim_; ++j) {
        if (row[static_cast<size_t>(j)].is_zero()) continue;
        v[static_cast<size_t>(j)] -= coef * row[static_cast<size_t>(j)];
      }
    }
    return v;
  }

  bool contains(const std::vector<Elt>& v) const {
    auto nf = reduce(v);
    for (const auto& x : nf)
      if (!x.is_zero()) return false;
    return true;
  }

  // Inserts v if independent; returns true when the span grew.
  bool insert(std::vector<Elt> v) {
    v = reduce(std::move(v));
    int lead = -1;
    for (int j = 0; j < dim_; ++j) {
      if (!v[static_cast<size_t>(j)].is_zero()) {
        lead = j;
        break;
      }
    }
    if (lead < 0) return false;
    Elt inv = fld_.one() / v[static_cast<size_t>(lead)];
    for (auto& x : v) x *= inv;
    // eliminate the new pivot from existing rows
    for (size_t r = 0; r < rows_.size(); ++r) {
      Elt c = rows_[r][static_cast<size_t>(lead)];
      if (c.is_zero()) continue;
      for (int j = 0; j < dim_; ++j) {
        if (v[static_cast<size_t>(j)].is_zero()) continue;
        rows_[r][static_cast<size_t>(j)] -= c * v[static_cast<size_t>(j)];
      }
    }
    // keep rows sorted by pivot column
    size_t pos = 0;
    while (pos < pivots_.size() && pivots_[pos] < lead) ++pos;
    rows_.insert(rows_.begin() + static_cast<long>(pos), std::move(v));
    pivots_.insert(pivots_.begin() + static_cast<long>(pos), lead);
    return true;
  }

  const std::vector<int>& pivots() const { return pivots_; }
  const std::vector<Elt>& row(size_t k) const { return rows_[k]; }

  // The span as a matrix whose columns are the canonical reduced rows.
  Matrix<F> basis_matrix() const {
    Matrix<F> b(fld_, dim_, rank());
    for (size_t k = 0; k < rows_.size(); ++k)
      b.set_col(static_cast<int>(k), rows_[k]);
    return b;
  }

  std::vector<int> non_pivots() const {
    std::vector<int> out;
    size_t r = 0;
    for (int j = 0; j < dim_; ++j) {
      if (r < pivots_.size() && pivots_[r] == j) {
        ++r;
      } else {
        out.push_back(j);
      }
    }
    return out;
  }

  // Coordinates of the normal form on the non-pivot slots; this is the
  // canonical projection onto the quotient by the span.
  std::vector<Elt> quotient_coords(const std::vector<Elt>& v) const {
    auto nf = reduce(v);
    std::vector<Elt> out;
    for (int j : non_pivots()) out.push_back(nf[static_cast<size_t>(j)]);
    return out;
  }

 private:
  F fld_;
  int dim_;
  std::vector<std::vector<Elt>> rows_;
  std::vector<int> pivots_;
};

// Basis of the null space as columns; column count = cols - rank. Free
// coordinates are taken in increasing order.
template <FieldContext F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
  using Elt = typename F::Elt;
  const F& f = m.field();
  Matrix<F> r = m;
  std::vector<std::pair<int, int>> piv;  // (row, col)
  int row = 0;
  for (int col = 0; col < r.cols() && row < r.rows(); ++col) {
    int pr = -1;
    for (int i = row; i < r.rows(); ++i) {
      if (!r.at(i, col).is_zero()) {
        pr = i;
        break;
      }
    }
    if (pr < 0) continue;
    if (pr != row)
      for (int j = 0; j < r.cols(); ++j) std::swap(r.at(pr, j), r.at(row, j));
    Elt inv = f.one() / r.at(row, col);
    for (int j = 0; j < r.cols(); ++j) r.at(row, j) *= inv;
    for (int i = 0; i < r.rows(); ++i) {
      if (i == row || r.at(i, col).is_zero()) continue;
      Elt c = r.at(i, col);
      for (int j = 0; j < r.cols(); ++j) r.at(i, j) -= c * r.at(row, j);
    }
    piv.emplace_back(row, col);
    ++row;
  }
  std::vector<char> is_pivot(static_cast<size_t>(m.cols()), 0);
  for (auto [pr, pc] : piv) is_pivot[static_cast<size_t>(pc)] = 1;
  Matrix<F> k(f, m.cols(), m.cols() - static_cast<int>(piv.size()));
  int out = 0;
  for (int fc = 0; fc < m.cols(); ++fc) {
    if (is_pivot[static_cast<size_t>(fc)]) continue;
    k.at(fc, out) = f.one();
    for (auto [pr, pc] : piv) k.at(pc, out) = -r.at(pr, fc);
    ++out;
  }
  return k;
}

// Basis of the column space, formed of original columns at the pivot
// positions of a row echelon pass.
template <FieldContext F>
Matrix<F> column_space_basis(const Matrix<F>& m) {
  SpanBuilder<F> span(m.field(), m.rows());
  std::vector<int> picked;
  for (int j = 0; j < m.cols(); ++j) {
    if (span.insert(m.col(j))) picked.push_back(j);
  }
  Matrix<F> b(m.field(), m.rows(), static_cast<int>(picked.size()));
  for (size_t k = 0; k < picked.size(); ++k)
    b.set_col(static_cast<int>(k), m.col(picked[k]));
  return b;
}

// Solves A X = B for A of full column rank; throws if inconsistent.
template <FieldContext F>
Matrix<F> solve_columns(const Matrix<F>& a, const Matrix<F>& b) {
  using Elt = typename F::Elt;
  if (a.rows() != b.rows()) throw std::invalid_argument("solve shape mismatch");
  const F& f = a.field();
  Matrix<F> r = Matrix<F>::hstack(a, b);
  std::vector<std::pair<int, int>> piv;
  int row = 0;
  for (int col = 0; col < a.cols() && row < r.rows(); ++col) {
    int pr = -1;
    for (int i = row; i < r.rows(); ++i) {
      if (!r.at(i, col).is_zero()) {
        pr = i;
        break;
      }
    }
    if (pr < 0) continue;
    if (pr != row)
      for (int j = 0; j < r.cols(); ++j) std::swap(r.at(pr, j), r.at(row, j));
    Elt inv = f.one() / r.at(row, col);
    for (int j = 0; j < r.cols(); ++j) r.at(row, j) *= inv;
    for (int i = 0; i < r.rows(); ++i) {
      if (i == row || r.at(i, col).is_zero()) continue;
      Elt c = r.at(i, col);
      for (int j = 0; j < r.cols(); ++j) r.at(i, j) -= c * r.at(row, j);
    }
    piv.emplace_back(row, col);
    ++row;
  }
  if (static_cast<int>(piv.size()) != a.cols())
    throw std::invalid_argument("solve_columns: matrix does not have full column rank");
  Matrix<F> x(f, a.cols(), b.cols());
  for (auto [pr, pc] : piv)
    for (int j = 0; j < b.cols(); ++j) x.at(pc, j) = r.at(pr, a.cols() + j);
  if (!(a * x == b))
    throw std::invalid_argument("solve_columns: inconsistent system");
  return x;
}

// ---------------------------------------------------------------------------
// Subquotients ker(D_out)/im(D_in) with explicit representative bases; this is
// how homology groups are materialized.

template <FieldContext F>
struct SubquotientBasis {
  int ambient = 0;
  Matrix<F> cycle_basis;       // columns span ker(D_out)
  Matrix<F> boundary_basis;    // columns span im(D_in)
  Matrix<F> representatives;   // cycle columns completing the boundaries

  int dim() const { return representatives.cols(); }

  // Coordinates of cycle columns in the representative basis, modulo
  // boundaries. Columns of z must be cycles.
  Matrix<F> project(const Matrix<F>& z) const {
    if (dim() == 0) return Matrix<F>(z.field(), 0, z.cols());
    Matrix<F> br = Matrix<F>::hstack(boundary_basis, representatives);
    Matrix<F> x = solve_columns(br, z);
    Matrix<F> out(z.field(), dim(), z.cols());
    for (int i = 0; i < dim(); ++i)
      for (int j = 0; j < z.cols(); ++j)
        out.at(i, j) = x.at(boundary_basis.cols() + i, j);
    return out;
  }
};

// D_out maps the ambient space forward, D_in maps into it; D_out * D_in must
// vanish exactly.
template <FieldContext F>
SubquotientBasis<F> subquotient(const Matrix<F>& d_out, const Matrix<F>& d_in) {
  if (d_out.cols() != d_in.rows())
    throw std::invalid_argument("subquotient: shape mismatch");
  if (!(d_out * d_in).is_zero())
    throw not_a_complex_error("composite differential is nonzero");
  SubquotientBasis<F> s;
  s.ambient = d_out.cols();
  s.cycle_basis = kernel_basis(d_out);
  s.boundary_basis = column_space_basis(d_in);
  SpanBuilder<F> span(d_out.field(), s.ambient);
  for (int j = 0; j < s.boundary_basis.cols(); ++j)
    span.insert(s.boundary_basis.col(j));
  std::vector<int> reps;
  for (int j = 0; j < s.cycle_basis.cols(); ++j) {
    if (span.insert(s.cycle_basis.col(j))) reps.push_back(j);
  }
  s.representatives =
      Matrix<F>(d_out.field(), s.ambient, static_cast<int>(reps.size()));
  for (size_t k = 0; k < reps.size(); ++k)
    s.representatives.set_col(static_cast<int>(k), s.cycle_basis.col(reps[k]));
  int expect = s.cycle_basis.cols() - s.boundary_basis.cols();
  if (s.dim() != expect)
    throw std::logic_error("subquotient dimension bookkeeping failed");
  return s;
}

// Matrix of the map induced on subquotients by a chain map, in representative
// coordinates. Verifies that cycles land in cycles and boundaries in
// boundaries before projecting.
template <FieldContext F>
Matrix<F> induced_on_subquotient(const SubquotientBasis<F>& src,
                                 const SubquotientBasis<F>& dst,
                                 const Matrix<F>& chainmap) {
  if (chainmap.cols() != src.ambient || chainmap.rows() != dst.ambient)
    throw std::invalid_argument("induced_on_subquotient: shape mismatch");
  const F& f = chainmap.field();
  SpanBuilder<F> cycles(f, dst.ambient);
  for (int j = 0; j < dst.cycle_basis.cols(); ++j)
    cycles.insert(dst.cycle_basis.col(j));
  Matrix<F> img_cycles = chainmap * src.cycle_basis;
  for (int j = 0; j < img_cycles.cols(); ++j)
    if (!cycles.contains(img_cycles.col(j)))
      throw not_a_chain_map_error("cycle image is not a cycle");
  SpanBuilder<F> boundaries(f, dst.ambient);
  for (int j = 0; j < dst.boundary_basis.cols(); ++j)
    boundaries.insert(dst.boundary_basis.col(j));
  Matrix<F> img_bd = chainmap * src.boundary_basis;
  for (int j = 0; j < img_bd.cols(); ++j)
    if (!boundaries.contains(img_bd.col(j)))
      throw not_a_chain_map_error("boundary image is not a boundary");
  return dst.project(chainmap * src.representatives);
}

}  // namespace fihom
