#pragma once

// Exact max-plus linear algebra: matrix action, residuation, nonlinear
// projectors, span membership, the two distances, and the -inf row
// preprocessing that every pencil solver in this library runs first.

#include <optional>
#include <vector>

#include "maxplus/matrix.hpp"

namespace maxplus {

// (Ax)_i = max_j (a_ij + x_j), with -inf absorbing.
Vec matvec(const Matrix& a, const Vec& x);

// Same action extended to the residuated side. Entries of x equal to
// +inf propagate only through finite matrix entries.
ResVec matvec(const Matrix& a, const ResVec& x);

// (A# y)_j = min_i (-a_ij + y_i); +inf exactly on identically -inf columns.
ResVec residual_apply(const Matrix& a, const ResVec& y);

// P_A(z) = A(A# z). Result is <= z and never +inf.
Vec projector_apply(const Matrix& a, const Vec& z);

struct MembershipResult {
  bool member = false;
  ResVec witness;               // A# z; scales the columns of A back onto z when member
  std::vector<int> uncovered;   // supp(z) minus the union of the argmin sets
};

// Decides z in span(A) by the covering criterion; z must not be identically -inf.
MembershipResult membership_check(const Matrix& a, const Vec& z);

// d_inf(u, v): +inf when supports differ, else max |u_i - v_i| over the support.
ExtRational cheb_distance(const Vec& u, const Vec& v);

// d_H(u, v): +inf when supports differ, else max_{i,j} (u_i - v_i + v_j - u_j).
ExtRational hilbert_distance(const Vec& u, const Vec& v);

struct PreprocessResult {
  enum class Status { Reduced, Unsolvable };
  Status status = Status::Reduced;
  Matrix a, b;                  // the reduced pair; empty (rows()==0 marker below) when nothing is left
  bool empty = false;           // no equations remain; the surviving variables are free
  std::vector<int> forced;      // original column indices forced to -inf
  std::vector<int> kept_rows;   // original row indices of the reduced system
  std::vector<int> kept_cols;   // original column indices of the reduced system
};

// Iteratively removes rows where one side is identically -inf, forcing the
// variables hit by the other side's finite entries to -inf. Unsolvable means
// every variable was forced, so no finite-lambda eigenvector can exist.
PreprocessResult preprocess_rows(const Matrix& a, const Matrix& b);

}  // namespace maxplus
