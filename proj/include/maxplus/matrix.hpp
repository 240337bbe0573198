#pragma once

// Dense max-plus matrices and vectors over exact extended rationals.
//
// Matrix and Vec never hold +inf. Residuation results live in ResVec,
// which may hold +inf (only where the residuated column is identically
// -inf); converting a ResVec back to a Vec checks that no +inf is left.
// Row and column supports are cached at construction and drive all the
// inner loops.

#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "maxplus/rational.hpp"

namespace maxplus {

class dimension_error : public std::invalid_argument {
 public:
  explicit dimension_error(const std::string& what) : std::invalid_argument(what) {}
};

class Vec {
 public:
  Vec() = default;
  explicit Vec(int dim, const ExtRational& fill = ExtRational::neg_inf()) : e_(dim, fill) {
    check();
  }
  explicit Vec(std::vector<ExtRational> entries) : e_(std::move(entries)) { check(); }
  Vec(std::initializer_list<ExtRational> entries) : e_(entries) { check(); }

  static Vec zeros(int dim) { return Vec(dim, ExtRational(0)); }

  int dim() const { return static_cast<int>(e_.size()); }
  const ExtRational& operator[](int i) const { return e_[i]; }
  ExtRational& operator[](int i) { return e_[i]; }
  const std::vector<ExtRational>& entries() const { return e_; }

  std::vector<int> support() const {
    std::vector<int> s;
    for (int i = 0; i < dim(); ++i)
      if (!e_[i].is_neg_inf()) s.push_back(i);
    return s;
  }
  bool is_bottom() const {
    for (const auto& v : e_)
      if (!v.is_neg_inf()) return false;
    return true;
  }

  friend bool operator==(const Vec& a, const Vec& b) { return a.e_ == b.e_; }
  friend bool operator!=(const Vec& a, const Vec& b) { return !(a == b); }

  // Componentwise partial order.
  friend bool leq(const Vec& a, const Vec& b) {
    if (a.dim() != b.dim()) throw dimension_error("leq: dimension mismatch");
    for (int i = 0; i < a.dim(); ++i)
      if (!(a[i] <= b[i])) return false;
    return true;
  }

  friend Vec operator+(const ExtRational& c, const Vec& v) {
    Vec r = v;
    for (auto& x : r.e_) x = add_lower(c, x);
    return r;
  }

  std::string to_string() const {
    std::string s = "(";
    for (int i = 0; i < dim(); ++i) {
      if (i) s += ", ";
      s += e_[i].to_string();
    }
    return s + ")";
  }

 private:
  void check() const {
    for (const auto& v : e_)
      if (v.is_pos_inf()) throw std::invalid_argument("+inf entry in max-plus vector");
  }
  std::vector<ExtRational> e_;
};

// A vector on the residuated side; +inf entries allowed.
class ResVec {
 public:
  ResVec() = default;
  explicit ResVec(int dim, const ExtRational& fill = ExtRational::pos_inf()) : e_(dim, fill) {}
  explicit ResVec(std::vector<ExtRational> entries) : e_(std::move(entries)) {}
  ResVec(const Vec& v) : e_(v.entries()) {}  // NOLINT: plain vectors embed

  int dim() const { return static_cast<int>(e_.size()); }
  const ExtRational& operator[](int i) const { return e_[i]; }
  ExtRational& operator[](int i) { return e_[i]; }
  const std::vector<ExtRational>& entries() const { return e_; }

  bool has_pos_inf() const {
    for (const auto& v : e_)
      if (v.is_pos_inf()) return true;
    return false;
  }
  // Checked conversion back to the max-plus side.
  Vec to_vec() const { return Vec(e_); }

  friend bool operator==(const ResVec& a, const ResVec& b) { return a.e_ == b.e_; }
  friend bool operator!=(const ResVec& a, const ResVec& b) { return !(a == b); }

 private:
  std::vector<ExtRational> e_;
};

class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), e_(static_cast<size_t>(rows) * cols, ExtRational::neg_inf()) {
    if (rows <= 0 || cols <= 0) throw dimension_error("matrix dimensions must be positive");
    rebuild_supports();
  }
  Matrix(std::initializer_list<std::initializer_list<ExtRational>> rows) {
    rows_ = static_cast<int>(rows.size());
    if (rows_ == 0) throw dimension_error("matrix dimensions must be positive");
    cols_ = static_cast<int>(rows.begin()->size());
    for (const auto& r : rows) {
      if (static_cast<int>(r.size()) != cols_) throw dimension_error("ragged matrix literal");
      for (const auto& v : r) {
        if (v.is_pos_inf()) throw std::invalid_argument("+inf entry in max-plus matrix");
        e_.push_back(v);
      }
    }
    rebuild_supports();
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, ExtRational(0));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  const ExtRational& at(int i, int j) const { return e_[static_cast<size_t>(i) * cols_ + j]; }
  void set(int i, int j, const ExtRational& v) {
    if (v.is_pos_inf()) throw std::invalid_argument("+inf entry in max-plus matrix");
    ExtRational& slot = e_[static_cast<size_t>(i) * cols_ + j];
    bool was = !slot.is_neg_inf(), now = !v.is_neg_inf();
    slot = v;
    if (was != now) rebuild_supports();  // keeps reads thread-safe once built
  }

  // Finite positions, by row and by column.
  const std::vector<int>& row_support(int i) const { return row_supp_[i]; }
  const std::vector<int>& col_support(int j) const { return col_supp_[j]; }
  bool row_is_bottom(int i) const { return row_support(i).empty(); }
  bool col_is_bottom(int j) const { return col_support(j).empty(); }
  bool has_bottom_row() const {
    for (int i = 0; i < rows_; ++i)
      if (row_is_bottom(i)) return true;
    return false;
  }
  bool has_bottom_col() const {
    for (int j = 0; j < cols_; ++j)
      if (col_is_bottom(j)) return true;
    return false;
  }
  bool all_finite() const {
    for (const auto& v : e_)
      if (!v.is_finite()) return false;
    return true;
  }

  Vec col(int j) const {
    std::vector<ExtRational> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = at(i, j);
    return Vec(std::move(c));
  }
  Vec row(int i) const {
    std::vector<ExtRational> r(cols_);
    for (int j = 0; j < cols_; ++j) r[j] = at(i, j);
    return Vec(std::move(r));
  }

  // Entrywise real multiplication by a positive rational (used to clear
  // denominators before handing an instance to the integer game oracle).
  Matrix scaled_by(const Rational& q) const {
    Matrix m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (at(i, j).is_finite()) m.set(i, j, ExtRational(at(i, j).value() * q));
    return m;
  }

  // Entrywise max-plus scaling: adds c to every finite entry.
  Matrix shifted_by(const Rational& c) const {
    Matrix m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (at(i, j).is_finite()) m.set(i, j, ExtRational(at(i, j).value() + c));
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }
  friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

 private:
  void rebuild_supports() {
    row_supp_.assign(rows_, {});
    col_supp_.assign(cols_, {});
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j)
        if (!e_[static_cast<size_t>(i) * cols_ + j].is_neg_inf()) {
          row_supp_[i].push_back(j);
          col_supp_[j].push_back(i);
        }
  }

  int rows_;
  int cols_;
  std::vector<ExtRational> e_;
  std::vector<std::vector<int>> row_supp_;
  std::vector<std::vector<int>> col_supp_;
};

}  // namespace maxplus
