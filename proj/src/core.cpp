#include "maxplus/core.hpp"

#include <algorithm>

namespace maxplus {

Rational best_approx(const Rational& x, int64_t max_den) {
  if (max_den < 1) throw std::invalid_argument("best_approx: max_den < 1");
  if (x.den() <= max_den) return x;
  // Continued-fraction descent. p/q track the current convergent,
  // pp/qq the previous one.
  int64_t a = x.num(), b = x.den();
  int64_t p = 1, q = 0, pp = 0, qq = 1;
  while (true) {
    int64_t quot = a / b;
    if (a % b != 0 && a < 0) --quot;  // floor division
    int64_t rem = a - quot * b;
    __int128 np = (__int128)quot * p + pp;
    __int128 nq = (__int128)quot * q + qq;
    if (nq > max_den) {
      // Best semiconvergent: largest t with qq + t*q <= max_den.
      int64_t t = (max_den - qq) / std::max<int64_t>(q, 1);
      Rational semi = Rational::from_int128((__int128)t * p + pp, (__int128)t * q + qq, "best_approx");
      Rational conv(detail::narrow128((__int128)p, "best_approx"), q == 0 ? 1 : q);
      if (q == 0) return semi;
      return (x - semi).abs() < (x - conv).abs() ? semi : conv;
    }
    pp = p;
    qq = q;
    p = detail::narrow128(np, "best_approx");
    q = detail::narrow128(nq, "best_approx");
    if (rem == 0) return Rational(p, q);
    a = b;
    b = rem;
  }
}

Vec matvec(const Matrix& a, const Vec& x) {
  if (a.cols() != x.dim()) throw dimension_error("matvec: dimension mismatch");
  std::vector<ExtRational> out(a.rows(), ExtRational::neg_inf());
  for (int i = 0; i < a.rows(); ++i) {
    ExtRational acc = ExtRational::neg_inf();
    for (int j : a.row_support(i)) {
      ExtRational term = add_lower(a.at(i, j), x[j]);
      if (acc < term) acc = term;
    }
    out[i] = acc;
  }
  return Vec(std::move(out));
}

ResVec matvec(const Matrix& a, const ResVec& x) {
  if (a.cols() != x.dim()) throw dimension_error("matvec: dimension mismatch");
  ResVec out(a.rows(), ExtRational::neg_inf());
  for (int i = 0; i < a.rows(); ++i) {
    ExtRational acc = ExtRational::neg_inf();
    // Only finite entries contribute, so the ambiguous (-inf)+(+inf)
    // never forms here; a +inf coordinate of x propagates through any
    // finite entry, which is the correct supremum.
    for (int j : a.row_support(i)) {
      ExtRational term = a.at(i, j) + x[j];
      if (acc < term) acc = term;
    }
    out[i] = acc;
  }
  return out;
}

ResVec residual_apply(const Matrix& a, const ResVec& y) {
  if (a.rows() != y.dim()) throw dimension_error("residual_apply: dimension mismatch");
  ResVec out(a.cols(), ExtRational::pos_inf());
  for (int j = 0; j < a.cols(); ++j) {
    ExtRational acc = ExtRational::pos_inf();  // min over an empty column stays +inf
    for (int i : a.col_support(j)) {
      ExtRational term = -a.at(i, j) + y[i];
      if (term < acc) acc = term;
    }
    out[j] = acc;
  }
  return out;
}

Vec projector_apply(const Matrix& a, const Vec& z) {
  if (a.rows() != z.dim()) throw dimension_error("projector_apply: dimension mismatch");
  ResVec coeff = residual_apply(a, ResVec(z));
  ResVec img = matvec(a, coeff);
  // +inf coefficients sit on identically -inf columns, which contribute
  // nothing, so the image is a genuine max-plus vector.
  return img.to_vec();
}

MembershipResult membership_check(const Matrix& a, const Vec& z) {
  if (a.rows() != z.dim()) throw dimension_error("membership_check: dimension mismatch");
  if (z.is_bottom()) throw std::invalid_argument("membership_check: z is identically -inf");
  MembershipResult res;
  res.witness = residual_apply(a, ResVec(z));
  std::vector<bool> covered(z.dim(), false);
  for (int c = 0; c < a.cols(); ++c) {
    const ExtRational& lam = res.witness[c];
    if (lam.is_pos_inf()) continue;  // empty column, no argmin set
    for (int i : a.col_support(c)) {
      if (-a.at(i, c) + ExtRational(z[i]) == lam) covered[i] = true;
    }
  }
  for (int i : z.support())
    if (!covered[i]) res.uncovered.push_back(i);
  res.member = res.uncovered.empty();
  return res;
}

ExtRational cheb_distance(const Vec& u, const Vec& v) {
  if (u.dim() != v.dim()) throw dimension_error("cheb_distance: dimension mismatch");
  ExtRational acc = ExtRational(0);
  for (int i = 0; i < u.dim(); ++i) {
    bool su = !u[i].is_neg_inf(), sv = !v[i].is_neg_inf();
    if (su != sv) return ExtRational::pos_inf();
    if (!su) continue;
    ExtRational d = (ExtRational(u[i].value() - v[i].value())).abs();
    if (acc < d) acc = d;
  }
  return acc;
}

ExtRational hilbert_distance(const Vec& u, const Vec& v) {
  if (u.dim() != v.dim()) throw dimension_error("hilbert_distance: dimension mismatch");
  // max_{i,j in supp}(u_i - v_i + v_j - u_j) = max_i (u_i - v_i) - min_j (u_j - v_j).
  bool any = false;
  Rational hi, lo;
  for (int i = 0; i < u.dim(); ++i) {
    bool su = !u[i].is_neg_inf(), sv = !v[i].is_neg_inf();
    if (su != sv) return ExtRational::pos_inf();
    if (!su) continue;
    Rational d = u[i].value() - v[i].value();
    if (!any) {
      hi = lo = d;
      any = true;
    } else {
      if (hi < d) hi = d;
      if (d < lo) lo = d;
    }
  }
  if (!any) return ExtRational(0);
  return ExtRational(hi - lo);
}

PreprocessResult preprocess_rows(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_error("preprocess_rows: shape mismatch");
  const int m = a.rows(), n = a.cols();
  std::vector<bool> row_alive(m, true), col_alive(n, true);
  PreprocessResult res;

  auto side_bottom = [&](const Matrix& mat, int i) {
    for (int j : mat.row_support(i))
      if (col_alive[j]) return false;
    return true;
  };

  bool progress = true;
  while (progress) {
    progress = false;
    for (int i = 0; i < m && !progress; ++i) {
      if (!row_alive[i]) continue;
      bool a_bot = side_bottom(a, i), b_bot = side_bottom(b, i);
      if (!a_bot && !b_bot) continue;
      // One side of equation i is -inf: the finite entries of the other
      // side force their variables to -inf, then the row goes away.
      const Matrix& other = a_bot ? b : a;
      for (int j : other.row_support(i)) {
        if (col_alive[j]) {
          col_alive[j] = false;
          res.forced.push_back(j);
        }
      }
      row_alive[i] = false;
      progress = true;
    }
  }

  for (int j = 0; j < n; ++j)
    if (col_alive[j]) res.kept_cols.push_back(j);
  for (int i = 0; i < m; ++i)
    if (row_alive[i]) res.kept_rows.push_back(i);
  std::sort(res.forced.begin(), res.forced.end());

  if (res.kept_cols.empty()) {
    res.status = PreprocessResult::Status::Unsolvable;
    return res;
  }
  if (res.kept_rows.empty()) {
    res.empty = true;
    return res;
  }
  Matrix ra(static_cast<int>(res.kept_rows.size()), static_cast<int>(res.kept_cols.size()));
  Matrix rb(static_cast<int>(res.kept_rows.size()), static_cast<int>(res.kept_cols.size()));
  for (size_t i = 0; i < res.kept_rows.size(); ++i)
    for (size_t j = 0; j < res.kept_cols.size(); ++j) {
      ra.set(static_cast<int>(i), static_cast<int>(j), a.at(res.kept_rows[i], res.kept_cols[j]));
      rb.set(static_cast<int>(i), static_cast<int>(j), b.at(res.kept_rows[i], res.kept_cols[j]));
    }
  res.a = ra;
  res.b = rb;
  return res;
}

}  // namespace maxplus
