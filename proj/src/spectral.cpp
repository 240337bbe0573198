#include "maxplus/spectral.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <thread>

namespace maxplus::spectral {

namespace {

int64_t lcm64(int64_t a, int64_t b) {
  return detail::narrow128((__int128)(a / std::gcd(a, b)) * b, "lcm");
}

int64_t denominator_lcm(const Matrix& m, int64_t acc) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j : m.row_support(i)) acc = lcm64(acc, m.at(i, j).value().den());
  return acc;
}

// Row residuation z /. y = min over supp(y) of (z_j - y_j); +inf on empty y.
ExtRational row_residual(const Matrix& z, const Matrix& y, int i) {
  ExtRational acc = ExtRational::pos_inf();
  for (int j : y.row_support(i)) {
    ExtRational t = add_lower(z.at(i, j), -y.at(i, j).value());
    if (t < acc) acc = t;
  }
  return acc;
}

bool row_all_finite(const Matrix& m, int i) {
  return static_cast<int>(m.row_support(i).size()) == m.cols();
}

Matrix booleanize(const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j : m.row_support(i)) out.set(i, j, ExtRational(0));
  return out;
}

void require_preprocessed(const Matrix& a, const Matrix& b, const char* who) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_error(std::string(who) + ": shape mismatch");
  for (int j = 0; j < a.cols(); ++j)
    if (a.col_is_bottom(j) && b.col_is_bottom(j))
      throw precondition_error(std::string(who) + ": common -inf column");
  for (int i = 0; i < a.rows(); ++i)
    if (a.row_is_bottom(i) || b.row_is_bottom(i))
      throw precondition_error(std::string(who) + ": -inf row (run preprocess_rows first)");
}

std::vector<Rational> rationals_in_window(const Rational& lo, const Rational& hi,
                                          int64_t max_den) {
  std::vector<Rational> out;
  for (int64_t d = 1; d <= max_den; ++d) {
    int64_t p0 = (lo * Rational(d)).ceil();
    int64_t p1 = (hi * Rational(d)).floor();
    for (int64_t p = p0; p <= p1; ++p)
      if (std::gcd(std::llabs(p), d) == 1) out.push_back(Rational(p, d));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Runs fn(begin, end) over `total` items split into contiguous chunks on
// up to `jobs` threads; candidate evaluations are independent and the
// results land in preallocated slots, so the merge is deterministic.
template <typename Fn>
void parallel_chunks(long long total, int jobs, Fn&& fn) {
  if (total <= 0) return;
  jobs = std::max(1, std::min<int>(jobs, (int)std::min<long long>(total, 1 << 10)));
  if (jobs <= 1 || total <= 1) {
    fn(0LL, total);
    return;
  }
  std::vector<std::thread> workers;
  std::exception_ptr first_error;
  std::mutex err_mu;
  long long per = (total + jobs - 1) / jobs;
  for (int t = 0; t < jobs; ++t) {
    long long b = t * per, e = std::min(total, b + per);
    if (b >= e) break;
    workers.emplace_back([&, b, e]() {
      try {
        fn(b, e);
      } catch (...) {
        std::lock_guard<std::mutex> lk(err_mu);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (first_error) std::rethrow_exception(first_error);
}

struct ScaledInstance {
  Matrix a, b;      // integer entries
  int64_t q = 1;    // original = scaled / q
  int kappa = 1;
  WindowCase wcase = WindowCase::General;
};

ScaledInstance scale_instance(const Matrix& a, const Matrix& b) {
  ScaledInstance s;
  s.q = denominator_lcm(a, denominator_lcm(b, 1));
  s.a = a.scaled_by(Rational(s.q));
  s.b = b.scaled_by(Rational(s.q));
  s.kappa = std::min(2 * a.rows(), a.cols());
  if (s.a.all_finite() && s.b.all_finite())
    s.wcase = WindowCase::Finite;
  else if (!s.a.has_bottom_col() && !s.b.has_bottom_col())
    s.wcase = WindowCase::NoBottomColumns;
  else
    s.wcase = WindowCase::General;
  return s;
}

int64_t max_abs_entry(const Matrix& m, int64_t acc) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j : m.row_support(i)) acc = std::max<int64_t>(acc, std::llabs(m.at(i, j).value().num()));
  return acc;
}

}  // namespace

// ---------------------------------------------------------------- pieces

Rational PiecewiseAffine::eval(const Rational& lambda) const {
  const Piece& p = pieces[piece_index(lambda)];
  return p.slope * lambda + p.offset;
}

int PiecewiseAffine::piece_index(const Rational& lambda) const {
  int k = 0;
  while (k < static_cast<int>(breakpoints.size()) && breakpoints[k] < lambda) ++k;
  return k;
}

void PiecewiseAffine::canonicalize() {
  validate();
  std::vector<Piece> ps{pieces.front()};
  std::vector<Rational> bps;
  for (size_t i = 1; i < pieces.size(); ++i) {
    if (pieces[i] == ps.back()) continue;  // collinear: continuity makes offsets equal too
    bps.push_back(breakpoints[i - 1]);
    ps.push_back(pieces[i]);
  }
  pieces = std::move(ps);
  breakpoints = std::move(bps);
}

void PiecewiseAffine::validate() const {
  if (pieces.empty() || pieces.size() != breakpoints.size() + 1)
    throw std::logic_error("piecewise-affine: malformed piece list");
  for (size_t i = 1; i < breakpoints.size(); ++i)
    if (!(breakpoints[i - 1] < breakpoints[i]))
      throw std::logic_error("piecewise-affine: breakpoints not increasing");
  for (size_t i = 0; i < breakpoints.size(); ++i) {
    const Rational& bp = breakpoints[i];
    if (pieces[i].slope * bp + pieces[i].offset != pieces[i + 1].slope * bp + pieces[i + 1].offset)
      throw std::logic_error("piecewise-affine: discontinuity at a breakpoint");
  }
}

// ---------------------------------------------------------------- spectrum set

bool SpectrumSet::contains(const Rational& lambda) const {
  ExtRational l(lambda);
  for (const auto& c : components)
    if (c.lo <= l && l <= c.hi) return true;
  return false;
}

void SpectrumSet::normalize() {
  std::sort(components.begin(), components.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  std::vector<Interval> merged;
  for (const auto& c : components) {
    if (c.hi < c.lo) continue;
    if (!merged.empty() && c.lo <= merged.back().hi) {
      if (merged.back().hi < c.hi) merged.back().hi = c.hi;
    } else {
      merged.push_back(c);
    }
  }
  components = std::move(merged);
}

std::string SpectrumSet::to_string() const {
  if (components.empty()) return "∅";
  std::string s;
  for (size_t i = 0; i < components.size(); ++i) {
    if (i) s += " ∪ ";
    s += "[" + components[i].lo.to_string() + "," + components[i].hi.to_string() + "]";
  }
  return s;
}

// ---------------------------------------------------------------- bounds

std::pair<ExtRational, ExtRational> butkovic_bounds(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_error("butkovic_bounds: shape mismatch");
  ExtRational lo = ExtRational::neg_inf();  // sup over empty set
  for (int i = 0; i < a.rows(); ++i) {
    if (!row_all_finite(a, i)) continue;
    ExtRational r = row_residual(a, b, i);
    if (lo < r) lo = r;
  }
  ExtRational hi_inner = ExtRational::neg_inf();
  for (int i = 0; i < b.rows(); ++i) {
    if (!row_all_finite(b, i)) continue;
    ExtRational r = row_residual(b, a, i);
    if (hi_inner < r) hi_inner = r;
  }
  return {lo, -hi_inner};
}

namespace {

// r(A#B) as the exact value of the one-turn game: columns of A play -a_ij
// into row i, row i answers b_ik into column k.
ExtRational residual_pair_radius(const Matrix& a, const Matrix& b, games::OracleStats* stats) {
  mpg::Game g;
  int64_t scale = denominator_lcm(a, denominator_lcm(b, 1));
  g.scale = scale;
  g.n_min = a.cols();
  g.n_max = a.rows();
  g.min_out.resize(g.n_min);
  g.max_out.resize(g.n_max);
  auto w_int = [&](const Rational& r) {
    return detail::narrow128((__int128)r.num() * (scale / r.den()), "cw weight");
  };
  for (int j = 0; j < a.cols(); ++j)
    for (int i : a.col_support(j)) g.min_out[j].push_back({i, w_int(-a.at(i, j).value())});
  for (int i = 0; i < a.rows(); ++i)
    for (int k : b.row_support(i)) g.max_out[i].push_back({k, w_int(b.at(i, k).value())});
  g.validate();
  return mpg::exact_value(g, stats);
}

}  // namespace

std::pair<ExtRational, ExtRational> cw_bounds(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_error("cw_bounds: shape mismatch");
  if (a.has_bottom_col() || b.has_bottom_col()) throw precondition_error("cw_bounds: -inf column");
  ExtRational rab = residual_pair_radius(a, b, nullptr);
  ExtRational rba = residual_pair_radius(b, a, nullptr);
  return {-rab, rba};
}

std::vector<Interval> per_column_bounds(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_error("per_column_bounds: shape mismatch");
  if (a.has_bottom_col() || b.has_bottom_col())
    throw precondition_error("per_column_bounds: -inf column");
  Vec zero = Vec::zeros(a.cols());
  ResVec ab0 = residual_apply(a, ResVec(matvec(b, zero)));
  ResVec ba0 = residual_apply(b, ResVec(matvec(a, zero)));
  std::vector<Interval> out;
  for (int i = 0; i < a.cols(); ++i) out.push_back({-ab0[i], ba0[i]});
  return out;
}

DeltaC delta_and_c(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_error("delta_and_c: shape mismatch");
  ExtRational delta = ExtRational::neg_inf();
  ExtRational c_hi = ExtRational::neg_inf();
  ExtRational c_lo = ExtRational::pos_inf();
  for (int i = 0; i < a.rows(); ++i) {
    if (a.row_support(i).empty() || b.row_support(i).empty()) continue;
    ExtRational amax = ExtRational::neg_inf(), amin = ExtRational::pos_inf();
    for (int j : a.row_support(i)) {
      if (amax < a.at(i, j)) amax = a.at(i, j);
      if (a.at(i, j) < amin) amin = a.at(i, j);
    }
    ExtRational bmax = ExtRational::neg_inf(), bmin = ExtRational::pos_inf();
    for (int j : b.row_support(i)) {
      if (bmax < b.at(i, j)) bmax = b.at(i, j);
      if (b.at(i, j) < bmin) bmin = b.at(i, j);
    }
    ExtRational ab = ExtRational(amax.value() - bmin.value());
    ExtRational ba = ExtRational(bmax.value() - amin.value());
    if (delta < ab) delta = ab;
    if (delta < ba) delta = ba;
    if (c_hi < ab) c_hi = ab;
    ExtRational lo_i = ExtRational(amin.value() - bmax.value());
    if (lo_i < c_lo) c_lo = lo_i;
  }
  return {delta, c_lo, c_hi};
}

BoundsReport bounds_report(const Matrix& a, const Matrix& b) {
  BoundsReport r;
  auto [blo, bhi] = butkovic_bounds(a, b);
  r.butkovic_lo = blo;
  r.butkovic_hi = bhi;
  if (!a.has_bottom_col() && !b.has_bottom_col()) {
    auto [clo, chi] = cw_bounds(a, b);
    r.cw_lo = clo;
    r.cw_hi = chi;
    r.per_column = per_column_bounds(a, b);
  }
  DeltaC dc = delta_and_c(a, b);
  r.delta = dc.delta;
  r.c_lo = dc.c_lo;
  r.c_hi = dc.c_hi;
  r.kappa = std::min(2 * a.rows(), a.cols());
  return r;
}

std::pair<Rational, Rational> boolean_asymptotics(const Matrix& a, const Matrix& b,
                                                  games::OracleStats* stats) {
  require_preprocessed(a, b, "boolean_asymptotics");
  Matrix ab = booleanize(a), bb = booleanize(b);
  Rational left = -games::spectral_radius(games::build_game(ab, bb, Rational(-1)), stats);
  Rational right = -games::spectral_radius(games::build_game(ab, bb, Rational(1)), stats);
  if (left < Rational(0) || right < Rational(0))
    throw std::logic_error("boolean_asymptotics: negative slope magnitude");
  return {left, right};
}

// ---------------------------------------------------------------- reconstruction

PiecewiseAffine reconstruct_spectral_function(const Matrix& a, const Matrix& b,
                                              ReconstructionStats* stats, int jobs) {
  require_preprocessed(a, b, "reconstruct_spectral_function");
  ScaledInstance si = scale_instance(a, b);
  const int64_t kappa = si.kappa;

  // Reconstruction window on the scaled instance, by the tightest case
  // whose hypotheses hold.
  Rational lo, hi;
  DeltaC dc = delta_and_c(si.a, si.b);
  if (si.wcase == WindowCase::Finite) {
    lo = dc.c_lo.value();
    hi = dc.c_hi.value();
  } else {
    Rational delta = dc.delta.value();  // finite: preprocessed rows carry both sides
    Rational radius = (si.wcase == WindowCase::NoBottomColumns)
                          ? Rational(2 * kappa) * delta
                          : Rational(2 * kappa * kappa) * delta;
    lo = -radius;
    hi = radius;
  }

  auto [slope_l, slope_r] = boolean_asymptotics(si.a, si.b, nullptr);

  std::vector<Rational> xs = rationals_in_window(lo, hi, kappa * kappa);
  if (xs.empty()) throw std::logic_error("reconstruction window holds no candidates");
  const long long budget = (long long)xs.size() + ((long long)xs.size() - 1) + 2;

  std::vector<Rational> vals(xs.size());
  parallel_chunks((long long)xs.size(), jobs, [&](long long b0, long long e0) {
    games::Policy hint;
    bool have_hint = false;
    for (long long i = b0; i < e0; ++i) {
      games::GameGraph gg = games::build_game(si.a, si.b, xs[i]);
      games::Policy pol;
      vals[i] = games::spectral_radius(gg, nullptr, have_hint ? &hint : nullptr, &pol);
      hint = std::move(pol);
      have_hint = true;
    }
  });

  // One midpoint per gap confirms the single-piece claim between candidates.
  if (xs.size() >= 2) {
    parallel_chunks((long long)xs.size() - 1, jobs, [&](long long b0, long long e0) {
      games::Policy hint;
      bool have_hint = false;
      for (long long i = b0; i < e0; ++i) {
        Rational mid = (xs[i] + xs[i + 1]) / Rational(2);
        Rational slope = (vals[i + 1] - vals[i]) / (xs[i + 1] - xs[i]);
        Rational want = vals[i] + slope * (mid - xs[i]);
        games::GameGraph gg = games::build_game(si.a, si.b, mid);
        games::Policy pol;
        Rational got = games::spectral_radius(gg, nullptr, have_hint ? &hint : nullptr, &pol);
        hint = std::move(pol);
        have_hint = true;
        if (got != want)
          throw std::logic_error("reconstruction: midpoint breaks the affine fit");
      }
    });
  }

  PiecewiseAffine f;
  f.pieces.push_back({slope_l, vals.front() - slope_l * xs.front()});
  for (size_t i = 0; i + 1 < xs.size(); ++i) {
    Rational slope = (vals[i + 1] - vals[i]) / (xs[i + 1] - xs[i]);
    f.breakpoints.push_back(xs[i]);
    f.pieces.push_back({slope, vals[i] - slope * xs[i]});
  }
  f.breakpoints.push_back(xs.back());
  f.pieces.push_back({-slope_r, vals.back() + slope_r * xs.back()});
  f.canonicalize();

  // Undo the denominator clearing: s(lambda) = s_scaled(q*lambda)/q keeps
  // slopes and divides offsets and breakpoints by q.
  if (si.q != 1) {
    Rational q(si.q);
    for (auto& p : f.pieces) p.offset = p.offset / q;
    for (auto& bp : f.breakpoints) bp = bp / q;
  }
  f.validate();

  // Invariants from the slope bound: |k| <= l <= kappa per piece, value <= 0.
  for (const auto& p : f.pieces) {
    if (p.slope.den() > kappa || p.slope.num() > p.slope.den() || -p.slope.num() > p.slope.den())
      throw std::logic_error("reconstruction: piece slope violates the cycle bound");
  }
  for (size_t i = 0; i < vals.size(); ++i)
    if (vals[i] > Rational(0)) throw std::logic_error("reconstruction: positive sample");

  if (stats) {
    stats->window_case = si.wcase;
    stats->window_lo = lo / Rational(si.q);
    stats->window_hi = hi / Rational(si.q);
    stats->candidates = (long long)xs.size();
    stats->oracle_calls = budget;
  }
  return f;
}

SpectrumSet compute_spectrum(const Matrix& a, const Matrix& b, ReconstructionStats* stats,
                             int jobs) {
  require_preprocessed(a, b, "compute_spectrum");
  ScaledInstance si = scale_instance(a, b);
  const int64_t kappa = si.kappa;

  SpectrumSet spec;
  spec.contains_neg_inf = a.has_bottom_col();

  Rational lo, hi;
  bool general = si.wcase == WindowCase::General;
  if (!general) {
    Vec zero = Vec::zeros(si.a.cols());
    ResVec ab0 = residual_apply(si.a, ResVec(matvec(si.b, zero)));
    ResVec ba0 = residual_apply(si.b, ResVec(matvec(si.a, zero)));
    ExtRational l = ExtRational::neg_inf(), r = ExtRational::neg_inf();
    for (int i = 0; i < si.a.cols(); ++i) {
      if (l < ab0[i]) l = ab0[i];
      if (r < ba0[i]) r = ba0[i];
    }
    lo = -l.value();
    hi = r.value();
  } else {
    int64_t m_abs = max_abs_entry(si.a, max_abs_entry(si.b, 0));
    lo = Rational(-2 * m_abs * kappa);
    hi = Rational(2 * m_abs * kappa);
  }

  long long calls = 0;
  std::vector<Rational> xs =
      lo <= hi ? rationals_in_window(lo, hi, kappa) : std::vector<Rational>{};
  std::vector<char> zero_at(xs.size(), 0);
  parallel_chunks((long long)xs.size(), jobs, [&](long long b0, long long e0) {
    for (long long i = b0; i < e0; ++i) {
      games::GameGraph gg = games::build_game(si.a, si.b, xs[i]);
      zero_at[i] = games::decide_at_least(gg, Rational(0)) ? 1 : 0;
    }
  });
  calls += (long long)xs.size();

  // Bridge adjacent zero candidates through a mediant test: s is affine
  // between candidates, so one interior sign settles the whole gap.
  std::vector<char> bridge(xs.empty() ? 0 : xs.size() - 1, 0);
  std::vector<long long> bridge_idx;
  for (size_t i = 0; i + 1 < xs.size(); ++i)
    if (zero_at[i] && zero_at[i + 1]) bridge_idx.push_back((long long)i);
  parallel_chunks((long long)bridge_idx.size(), jobs, [&](long long b0, long long e0) {
    for (long long t = b0; t < e0; ++t) {
      long long i = bridge_idx[t];
      Rational mediant(xs[i].num() + xs[i + 1].num(), xs[i].den() + xs[i + 1].den());
      games::GameGraph gg = games::build_game(si.a, si.b, mediant);
      bridge[i] = games::decide_at_least(gg, Rational(0)) ? 1 : 0;
    }
  });
  calls += (long long)bridge_idx.size();

  // Assemble maximal components.
  for (size_t i = 0; i < xs.size();) {
    if (!zero_at[i]) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j + 1 < xs.size() && zero_at[j + 1] && bridge[j]) ++j;
    spec.components.push_back({ExtRational(xs[i]), ExtRational(xs[j])});
    i = j + 1;
  }

  // In the general case a zero asymptotic slope can carry the zero set past
  // the window; the boolean instance decides each side with one call.
  if (general && !xs.empty()) {
    auto [slope_l, slope_r] = boolean_asymptotics(si.a, si.b, nullptr);
    calls += 2;
    if (slope_l.is_zero() && !spec.components.empty() &&
        spec.components.front().lo == ExtRational(xs.front()))
      spec.components.front().lo = ExtRational::neg_inf();
    if (slope_r.is_zero() && !spec.components.empty() &&
        spec.components.back().hi == ExtRational(xs.back()))
      spec.components.back().hi = ExtRational::pos_inf();
  }

  // Undo denominator clearing.
  if (si.q != 1) {
    Rational q(si.q);
    for (auto& c : spec.components) {
      if (c.lo.is_finite()) c.lo = ExtRational(c.lo.value() / q);
      if (c.hi.is_finite()) c.hi = ExtRational(c.hi.value() / q);
    }
  }
  spec.normalize();

  if (stats) {
    stats->window_case = si.wcase;
    stats->window_lo = lo / Rational(si.q);
    stats->window_hi = hi / Rational(si.q);
    stats->candidates = (long long)xs.size();
    stats->oracle_calls = calls;
  }
  return spec;
}

// ---------------------------------------------------------------- eigenvectors

EigenvectorResult eigenvector_at(const Matrix& a, const Matrix& b, const Rational& lambda,
                                 long long sweep_cap, long long* sweeps_used) {
  require_preprocessed(a, b, "eigenvector_at");
  const int m = a.rows(), n = a.cols();

  int64_t q = denominator_lcm(a, denominator_lcm(b, lambda.den()));
  int64_t w_int = max_abs_entry(a.scaled_by(Rational(q)),
                                max_abs_entry(b.scaled_by(Rational(q)),
                                              std::llabs((lambda * Rational(q)).num())));
  if (sweep_cap < 0)
    sweep_cap = detail::narrow128(
        (__int128)(n + 2 * m) * (4 * std::max<int64_t>(w_int, 1) + 1) *
            std::min<int64_t>(2 * m, n),
        "sweep cap");

  // Coordinates below the credit bound can never rejoin a sub-eigenvector;
  // clamping them to -inf makes the descent terminate.
  ExtRational max_abs = ExtRational(0);
  for (int i = 0; i < m; ++i) {
    for (int j : a.row_support(i)) max_abs = max(max_abs, a.at(i, j).abs());
    for (int j : b.row_support(i)) max_abs = max(max_abs, b.at(i, j).abs());
  }
  Rational bound =
      Rational(n + 2 * m + 1) * (Rational(2) * max_abs.value() + lambda.abs() + Rational(1));

  ExtRational lam(lambda);
  Vec x = Vec::zeros(n);
  long long sweeps = 0;
  bool fixed = false;
  while (sweeps < sweep_cap) {
    ResVec left = residual_apply(a, matvec(b, ResVec(x)));
    ResVec right = residual_apply(b, matvec(a, ResVec(x)));
    std::vector<ExtRational> nx(n);
    for (int j = 0; j < n; ++j) {
      ExtRational v = min(ExtRational(x[j]), min(lam + left[j], -lam + right[j]));
      if (v.is_finite() && v.value() < -bound) v = ExtRational::neg_inf();
      nx[j] = v;
    }
    Vec next = ResVec(std::move(nx)).to_vec();
    ++sweeps;
    if (next == x) {
      fixed = true;
      break;
    }
    x = next;
  }
  if (sweeps_used) *sweeps_used = sweeps;

  bool found = fixed && !x.is_bottom();
  // Cross-check a negative verdict against the game oracle before reporting.
  if (!found) {
    games::GameGraph gg = games::build_game(a, b, lambda);
    if (games::decide_at_least(gg, Rational(0)))
      throw std::logic_error("eigenvector_at: iteration missed an eigenvector the oracle certifies");
    return NotAnEigenvalue{};
  }
  Vec ax = matvec(a, x);
  Vec bx = matvec(b, x);
  Vec lbx = Vec(std::vector<ExtRational>([&] {
    std::vector<ExtRational> v(m);
    for (int i = 0; i < m; ++i) v[i] = add_lower(lam, bx[i]);
    return v;
  }()));
  if (ax != lbx) throw std::logic_error("eigenvector_at: fixed point fails exact verification");
  return x;
}

SpectrumSet zero_level_set(const PiecewiseAffine& f) {
  SpectrumSet s;
  const auto& ps = f.pieces;
  const auto& bps = f.breakpoints;
  for (size_t k = 0; k < ps.size(); ++k) {
    bool has_lo = k > 0, has_hi = k < bps.size();
    if (ps[k].slope.is_zero()) {
      if (ps[k].offset.is_zero())
        s.components.push_back({has_lo ? ExtRational(bps[k - 1]) : ExtRational::neg_inf(),
                                has_hi ? ExtRational(bps[k]) : ExtRational::pos_inf()});
      continue;
    }
    Rational root = -ps[k].offset / ps[k].slope;
    bool inside = (!has_lo || bps[k - 1] <= root) && (!has_hi || root <= bps[k]);
    if (inside) s.components.push_back({ExtRational(root), ExtRational(root)});
  }
  s.normalize();
  return s;
}

}  // namespace maxplus::spectral
