#pragma once

// The level-set engine. s(lambda) is reconstructed exactly as a
// piecewise-affine function from oracle evaluations at every rational in
// the reconstruction window whose denominator can occur as a crossing
// point, and the spectrum is the zero-level set, assembled from the
// cheaper sign oracle alone.

#include <functional>
#include <optional>
#include <variant>

#include "maxplus/games.hpp"

namespace maxplus::spectral {

using games::precondition_error;

struct Piece {
  Rational slope, offset;  // value at lambda is slope*lambda + offset
  friend bool operator==(const Piece&, const Piece&) = default;
};

// Pieces tile the real line: piece k lives on [breakpoints[k-1], breakpoints[k]]
// (unbounded at the ends), adjacent pieces agree at the shared breakpoint and
// are never collinear after canonicalize().
struct PiecewiseAffine {
  std::vector<Piece> pieces;
  std::vector<Rational> breakpoints;

  Rational eval(const Rational& lambda) const;
  int piece_index(const Rational& lambda) const;
  void canonicalize();
  void validate() const;  // continuity + tiling invariants

  friend bool operator==(const PiecewiseAffine&, const PiecewiseAffine&) = default;
};

struct Interval {
  ExtRational lo, hi;  // lo may be -inf, hi may be +inf; closed where finite
  bool is_point() const { return lo == hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

struct SpectrumSet {
  std::vector<Interval> components;  // sorted, disjoint, maximal
  bool contains_neg_inf = false;

  bool contains(const Rational& lambda) const;
  void normalize();  // sort + merge touching components
  std::string to_string() const;
  friend bool operator==(const SpectrumSet&, const SpectrumSet&) = default;
};

struct BoundsReport {
  ExtRational butkovic_lo, butkovic_hi;
  std::optional<ExtRational> cw_lo, cw_hi;  // absent when a -inf column blocks them
  std::vector<Interval> per_column;         // possibly-empty intervals, one per column
  ExtRational delta;
  ExtRational c_lo, c_hi;
  int kappa = 0;
};

std::pair<ExtRational, ExtRational> butkovic_bounds(const Matrix& a, const Matrix& b);
std::pair<ExtRational, ExtRational> cw_bounds(const Matrix& a, const Matrix& b);
// The n candidate intervals [-(A#B0)_i, (B#A0)_i]; callers union/normalize.
std::vector<Interval> per_column_bounds(const Matrix& a, const Matrix& b);
struct DeltaC {
  ExtRational delta, c_lo, c_hi;
};
DeltaC delta_and_c(const Matrix& a, const Matrix& b);
BoundsReport bounds_report(const Matrix& a, const Matrix& b);

// Asymptotic slope magnitudes (k1/l1, k2/l2) of s, read off the boolean
// instance: left piece is +left*lambda + alpha1, right piece is
// -right*lambda + alpha2.
std::pair<Rational, Rational> boolean_asymptotics(const Matrix& a, const Matrix& b,
                                                  games::OracleStats* stats = nullptr);

enum class WindowCase : uint8_t { General = 1, NoBottomColumns = 2, Finite = 3 };

struct ReconstructionStats {
  WindowCase window_case = WindowCase::General;
  Rational window_lo, window_hi;
  long long oracle_calls = 0;
  long long candidates = 0;
};

// Exact reconstruction of s over all of R. Requires no common -inf columns
// and no -inf rows (run preprocess_rows first). jobs > 1 fans the candidate
// evaluations out over that many worker threads.
PiecewiseAffine reconstruct_spectral_function(const Matrix& a, const Matrix& b,
                                              ReconstructionStats* stats = nullptr,
                                              int jobs = 1);

// Zero-level set via the sign oracle only; same preconditions. The
// contains_neg_inf flag reflects the -inf columns of this a.
SpectrumSet compute_spectrum(const Matrix& a, const Matrix& b,
                             ReconstructionStats* stats = nullptr, int jobs = 1);

struct NotAnEigenvalue {};
using EigenvectorResult = std::variant<Vec, NotAnEigenvalue>;

// Power iteration x <- x /\ h_lambda(x) from 0, verified exactly against
// A x = lambda + B x; a negative outcome is cross-checked against the game
// oracle before being reported.
EigenvectorResult eigenvector_at(const Matrix& a, const Matrix& b, const Rational& lambda,
                                 long long sweep_cap = -1, long long* sweeps_used = nullptr);

// Zero-level set of a reconstructed function (real components only).
SpectrumSet zero_level_set(const PiecewiseAffine& f);

}  // namespace maxplus::spectral
