#pragma once

#include <cassert>
#include <stdexcept>
#include <string>
#include <vector>

#include "fihom/fields.hpp"

namespace fihom {

// Dense matrix over an exact field. Row-major, 0-based. Shapes with zero
// rows or columns are legal and behave as the corresponding zero maps.
template <FieldContext F>
class Matrix {
 public:
  using Elt = typename F::Elt;

  Matrix() : fld_(), rows_(0), cols_(0) {}
  Matrix(const F& f, int rows, int cols)
      : fld_(f), rows_(rows), cols_(cols),
        a_(static_cast<size_t>(rows) * static_cast<size_t>(cols), f.zero()) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative shape");
  }

  static Matrix identity(const F& f, int n) {
    Matrix m(f, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = f.one();
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const F& field() const { return fld_; }

  Elt& at(int i, int j) {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[static_cast<size_t>(i) * static_cast<size_t>(cols_) +
              static_cast<size_t>(j)];
  }
  const Elt& at(int i, int j) const {
    assert(i >= 0 && i < rows_ && j >= 0 && j < cols_);
    return a_[static_cast<size_t>(i) * static_cast<size_t>(cols_) +
              static_cast<size_t>(j)];
  }

  bool is_zero() const {
    for (const auto& x : a_)
      if (!x.is_zero()) return false;
    return true;
  }

  bool is_identity() const {
    if (rows_ != cols_) return false;
    Elt one = fld_.one();
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) {
        if (i == j ? !(at(i, j) == one) : !at(i, j).is_zero()) return false;
      }
    return true;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) return false;
    for (size_t k = 0; k < x.a_.size(); ++k)
      if (!(x.a_[k] == y.a_[k])) return false;
    return true;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_)
      throw std::invalid_argument("matrix product shape mismatch: " +
                                  shape_str() + " * " + o.shape_str());
    Matrix r(fld_, rows_, o.cols_);
    for (int i = 0; i < rows_; ++i) {
      for (int k = 0; k < cols_; ++k) {
        const Elt& x = at(i, k);
        if (x.is_zero()) continue;
        for (int j = 0; j < o.cols_; ++j) {
          const Elt& y = o.at(k, j);
          if (y.is_zero()) continue;
          r.at(i, j) += x * y;
        }
      }
    }
    return r;
  }

  Matrix operator+(const Matrix& o) const {
    check_same_shape(o);
    Matrix r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] += o.a_[k];
    return r;
  }
  Matrix operator-(const Matrix& o) const {
    check_same_shape(o);
    Matrix r = *this;
    for (size_t k = 0; k < a_.size(); ++k) r.a_[k] -= o.a_[k];
    return r;
  }
  Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.a_) x = -x;
    return r;
  }
  Matrix scaled(const Elt& c) const {
    Matrix r = *this;
    for (auto& x : r.a_) x *= c;
    return r;
  }

  std::vector<Elt> apply(const std::vector<Elt>& v) const {
    assert(static_cast<int>(v.size()) == cols_);
    std::vector<Elt> out(static_cast<size_t>(rows_), fld_.zero());
    for (int j = 0; j < cols_; ++j) {
      if (v[static_cast<size_t>(j)].is_zero()) continue;
      for (int i = 0; i < rows_; ++i) {
        if (at(i, j).is_zero()) continue;
        out[static_cast<size_t>(i)] += at(i, j) * v[static_cast<size_t>(j)];
      }
    }
    return out;
  }

  std::vector<Elt> col(int j) const {
    std::vector<Elt> out;
    out.reserve(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i) out.push_back(at(i, j));
    return out;
  }

  void set_col(int j, const std::vector<Elt>& v) {
    assert(static_cast<int>(v.size()) == rows_);
    for (int i = 0; i < rows_; ++i) at(i, j) = v[static_cast<size_t>(i)];
  }

  void set_block(int i0, int j0, const Matrix& b) {
    assert(i0 + b.rows_ <= rows_ && j0 + b.cols_ <= cols_);
    for (int i = 0; i < b.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) at(i0 + i, j0 + j) = b.at(i, j);
  }

  // Add c * b into the block at (i0, j0).
  void add_block(int i0, int j0, const Matrix& b, const Elt& c) {
    assert(i0 + b.rows_ <= rows_ && j0 + b.cols_ <= cols_);
    for (int i = 0; i < b.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) {
        if (b.at(i, j).is_zero()) continue;
        at(i0 + i, j0 + j) += c * b.at(i, j);
      }
  }

  static Matrix hstack(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) throw std::invalid_argument("hstack shape mismatch");
    Matrix r(a.fld_, a.rows_, a.cols_ + b.cols_);
    r.set_block(0, 0, a);
    r.set_block(0, a.cols_, b);
    return r;
  }

  static Matrix from_columns(const F& f, int rows,
                             const std::vector<std::vector<Elt>>& cols) {
    Matrix r(f, rows, static_cast<int>(cols.size()));
    for (size_t j = 0; j < cols.size(); ++j)
      r.set_col(static_cast<int>(j), cols[j]);
    return r;
  }

  std::string shape_str() const {
    return std::to_string(rows_) + "x" + std::to_string(cols_);
  }

  std::string str() const {
    std::string s;
    for (int i = 0; i < rows_; ++i) {
      s += i == 0 ? "[" : " ";
      for (int j = 0; j < cols_; ++j) {
        if (j) s += " ";
        s += at(i, j).str();
      }
      s += i + 1 == rows_ ? "]" : "\n";
    }
    if (rows_ == 0) s = "[" + shape_str() + "]";
    return s;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("shape mismatch: " + shape_str() + " vs " +
                                  o.shape_str());
  }

  F fld_;
  int rows_;
  int cols_;
  std::vector<Elt> a_;
};

}  // namespace fihom
