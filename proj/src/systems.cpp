#include "maxplus/systems.hpp"

#include <algorithm>
#include <numeric>

namespace maxplus::systems {

namespace {

int64_t lcm64(int64_t a, int64_t b) {
  return detail::narrow128((__int128)(a / std::gcd(a, b)) * b, "lcm");
}

int64_t denominator_lcm(const Matrix& m, int64_t acc) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j : m.row_support(i)) acc = lcm64(acc, m.at(i, j).value().den());
  return acc;
}

int64_t max_abs_int(const Matrix& m, int64_t scale, int64_t acc) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j : m.row_support(i)) {
      Rational v = m.at(i, j).value() * Rational(scale);
      acc = std::max<int64_t>(acc, std::llabs(v.num()));
    }
  return acc;
}

void require_no_bottom_cols(const Matrix& m, const char* who) {
  if (m.has_bottom_col())
    throw std::invalid_argument(std::string(who) + ": -inf column");
}

Vec componentwise_min(std::initializer_list<const ResVec*> vs, int dim) {
  std::vector<ExtRational> out(dim, ExtRational::pos_inf());
  for (const ResVec* v : vs)
    for (int i = 0; i < dim; ++i)
      if ((*v)[i] < out[i]) out[i] = (*v)[i];
  return ResVec(std::move(out)).to_vec();
}

}  // namespace

TwoSidedSolution alternating_separated(const Matrix& a, const Matrix& b, const Vec& x0,
                                       long long iteration_cap) {
  if (a.rows() != b.rows()) throw dimension_error("alternating_separated: row count mismatch");
  if (x0.dim() != a.cols()) throw dimension_error("alternating_separated: x0 dimension");
  require_no_bottom_cols(a, "alternating_separated");
  require_no_bottom_cols(b, "alternating_separated");
  for (int i = 0; i < x0.dim(); ++i)
    if (!x0[i].is_finite())
      throw std::invalid_argument("alternating_separated: x0 must be finite");

  if (iteration_cap < 0) {
    // Default cap (n + 2m)(4W + 1)kappa on the cleared-denominator weights.
    int64_t scale = denominator_lcm(a, denominator_lcm(b, 1));
    int64_t w = max_abs_int(a, scale, max_abs_int(b, scale, 0));
    int64_t n = a.cols() + b.cols(), m2 = 2 * a.rows();
    int64_t kappa = std::min<int64_t>(m2, n);
    iteration_cap = detail::narrow128((__int128)(n + m2) * (4 * w + 1) * std::max<int64_t>(kappa, 1),
                                      "iteration cap");
  }

  TwoSidedSolution res;
  Vec x = x0;
  for (long long k = 0; k <= iteration_cap; ++k) {
    Vec ax = matvec(a, x);
    ResVec y = residual_apply(b, ResVec(ax));
    ResVec by = matvec(b, y);
    // (x, B#(Ax)) solves the system as soon as Ax lands in span(B).
    if (!x.is_bottom() && !ax.is_bottom() && ResVec(ax) == by) {
      res.status = TwoSidedSolution::Status::Solved;
      res.x = x;
      res.y = y.to_vec();
      Vec lhs = matvec(a, res.x), rhs = matvec(b, res.y);
      if (lhs != rhs || lhs.is_bottom())
        throw std::logic_error("alternating_separated: candidate fails verification");
      return res;
    }
    if (k == iteration_cap) break;
    Vec xn = residual_apply(a, by).to_vec();
    ++res.iterations;
    if (xn == x) break;  // fixed point that solves nothing: degenerate corner
    bool all_below = true;
    for (int i = 0; i < x0.dim(); ++i)
      if (!(xn[i] < x0[i])) {
        all_below = false;
        break;
      }
    x = xn;
    if (all_below) return res;  // no finite solution exists
  }
  res.cap_hit = res.iterations >= iteration_cap;
  return res;
}

Vec minmax_f(const Matrix& a, const Matrix& b, const Vec& x) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw dimension_error("minmax_f: shape");
  ResVec ab = residual_apply(a, matvec(b, ResVec(x)));
  ResVec ba = residual_apply(b, matvec(a, ResVec(x)));
  ResVec id(x);
  return componentwise_min({&id, &ab, &ba}, x.dim());
}

Vec minmax_g(const Matrix& a, const Matrix& b, const Vec& x) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw dimension_error("minmax_g: shape");
  ResVec ax = matvec(a, ResVec(x)), bx = matvec(b, ResVec(x));
  ResVec aa = residual_apply(a, ax);
  ResVec bb = residual_apply(b, bx);
  ResVec ab = residual_apply(a, bx);
  ResVec ba = residual_apply(b, ax);
  return componentwise_min({&aa, &bb, &ab, &ba}, x.dim());
}

Vec minmax_h(const Matrix& a, const Matrix& b, const Vec& x) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw dimension_error("minmax_h: shape");
  ResVec ab = residual_apply(a, matvec(b, ResVec(x)));
  ResVec ba = residual_apply(b, matvec(a, ResVec(x)));
  return componentwise_min({&ab, &ba}, x.dim());
}

ExtRational cone_hilbert_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw dimension_error("cone_hilbert_distance: row count mismatch");
  require_no_bottom_cols(a, "cone_hilbert_distance");
  require_no_bottom_cols(b, "cone_hilbert_distance");
  const int m = a.rows(), n1 = a.cols(), n2 = b.cols();

  // Game of the alternating operator phi(x) = A#(B(B#(Ax))), whose spectral
  // radius equals r(P_A P_B). Min nodes: columns of A then columns of B.
  // Max nodes: rows reached through A then rows reached through B. One phi
  // application is two turns, so r = 2 * per-turn value.
  int64_t scale = denominator_lcm(a, denominator_lcm(b, 1));
  mpg::Game g;
  g.scale = scale;
  g.n_min = n1 + n2;
  g.n_max = 2 * m;
  g.min_out.resize(g.n_min);
  g.max_out.resize(g.n_max);
  auto w_int = [&](const Rational& r) {
    return detail::narrow128((__int128)r.num() * (scale / r.den()), "cone weight");
  };
  // Column j of A plays -a_ij into row i (the "after A" layer).
  for (int j = 0; j < n1; ++j)
    for (int i : a.col_support(j)) g.min_out[j].push_back({i, w_int(-a.at(i, j).value())});
  // Row i answers with b_il into column l of B.
  for (int i = 0; i < m; ++i)
    for (int l : b.row_support(i)) g.max_out[i].push_back({n1 + l, w_int(b.at(i, l).value())});
  // Column l of B plays -b_pl into row p (the "after B" layer).
  for (int l = 0; l < n2; ++l)
    for (int p : b.col_support(l)) g.min_out[n1 + l].push_back({m + p, w_int(-b.at(p, l).value())});
  // Row p answers with a_pq into column q of A.
  for (int p = 0; p < m; ++p)
    for (int q : a.row_support(p)) g.max_out[m + p].push_back({q, w_int(a.at(p, q).value())});
  g.validate();

  ExtRational per_turn = mpg::exact_value(g);
  if (per_turn.is_neg_inf()) return ExtRational::pos_inf();
  return ExtRational(-(per_turn.value() * Rational(2)));
}

ExtRational min_cheb_distance(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_error("min_cheb_distance: shape mismatch");
  for (int j = 0; j < a.cols(); ++j)
    if (a.col_is_bottom(j) && b.col_is_bottom(j))
      throw std::invalid_argument("min_cheb_distance: common -inf column");

  // The pencil game at lambda = 0, built directly so that -inf rows (dead
  // Max nodes, value -inf branches) stay admissible here.
  const int m = a.rows(), n = a.cols();
  int64_t scale = denominator_lcm(a, denominator_lcm(b, 1));
  mpg::Game g;
  g.scale = scale;
  g.n_min = n;
  g.n_max = 2 * m;
  g.min_out.resize(n);
  g.max_out.resize(2 * m);
  auto w_int = [&](const Rational& r) {
    return detail::narrow128((__int128)r.num() * (scale / r.den()), "cheb weight");
  };
  for (int j = 0; j < n; ++j) {
    for (int i : a.col_support(j)) g.min_out[j].push_back({i, w_int(-a.at(i, j).value())});
    for (int i : b.col_support(j)) g.min_out[j].push_back({m + i, w_int(-b.at(i, j).value())});
  }
  for (int i = 0; i < m; ++i) {
    for (int k : b.row_support(i)) g.max_out[i].push_back({k, w_int(b.at(i, k).value())});
    for (int k : a.row_support(i)) g.max_out[m + i].push_back({k, w_int(a.at(i, k).value())});
  }
  g.validate();
  ExtRational r = mpg::exact_value(g);
  if (r.is_neg_inf()) return ExtRational::pos_inf();
  return ExtRational(-r.value());
}

DegenerateSolutions classify_degenerate(const Matrix& a, const Matrix& b) {
  DegenerateSolutions d;
  for (int j = 0; j < a.cols(); ++j)
    if (a.col_is_bottom(j)) d.x_support.push_back(j);
  for (int j = 0; j < b.cols(); ++j)
    if (b.col_is_bottom(j)) d.y_support.push_back(j);
  return d;
}

}  // namespace maxplus::systems
