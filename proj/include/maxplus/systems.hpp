#pragma once

// Two-sided max-plus systems: the alternating method for Ax = By, the
// min-max functions f, g, h attached to Ax = Bx, and the cone distances
// realized as spectral radii of projector compositions.

#include <optional>

#include "maxplus/core.hpp"
#include "maxplus/game_engine.hpp"

namespace maxplus::systems {

struct TwoSidedSolution {
  enum class Status { Solved, NoFiniteSolution };
  Status status = Status::NoFiniteSolution;
  Vec x, y;            // valid when Solved; y only for the separated form
  long long iterations = 0;
  bool cap_hit = false;
};

// Alternating method x <- A#(B(B#(Ax))) for Ax = By. Stops on a fixed point
// (Solved, with y = B#(Ax)) or when every coordinate has dropped strictly
// below x0. A and B need equal row counts and no -inf columns; x0 finite.
TwoSidedSolution alternating_separated(const Matrix& a, const Matrix& b, const Vec& x0,
                                       long long iteration_cap = -1);

// f(x) = x /\ A#Bx /\ B#Ax; fixed points solve Ax = Bx exactly.
Vec minmax_f(const Matrix& a, const Matrix& b, const Vec& x);
// g(x) = A#Ax /\ B#Bx /\ A#Bx /\ B#Ax; the alternating operator of (C, D).
Vec minmax_g(const Matrix& a, const Matrix& b, const Vec& x);
// h(x) = A#Bx /\ B#Ax.
Vec minmax_h(const Matrix& a, const Matrix& b, const Vec& x);

// Hilbert distance between span(A) and span(B): -r(P_A P_B), computed as the
// exact value of the alternating operator's game; +inf when the cones hold
// no vectors of common support.
ExtRational cone_hilbert_distance(const Matrix& a, const Matrix& b);

// min_x d_inf(Ax, Bx) = -r(h), through the pencil game at lambda = 0.
ExtRational min_cheb_distance(const Matrix& a, const Matrix& b);

// The degenerate all--inf solutions of Ax = By (resp. Ax = Bx), which exist
// exactly when one matrix (resp. both at a common column) has -inf columns.
struct DegenerateSolutions {
  std::vector<int> x_support;  // columns of A identically -inf
  std::vector<int> y_support;  // columns of B identically -inf (separated form)
  bool exists_separated() const { return !x_support.empty() && !y_support.empty(); }
};
DegenerateSolutions classify_degenerate(const Matrix& a, const Matrix& b);

}  // namespace maxplus::systems
