#pragma once

// Brute-force oracles, independent of the library's oracle path: the cycle
// mean comes from enumerating closed walks (a direct transcription of the
// defining maximum, not Karp's recurrence), and the spectral radius comes
// from enumerating every representing matrix rather than playing the game.

#include <functional>
#include <optional>
#include <vector>

#include "maxplus/core.hpp"

namespace oracle {

using maxplus::ExtRational;
using maxplus::Matrix;
using maxplus::Rational;
using maxplus::Vec;

// max over k <= n and closed walks of length k of (walk weight)/k.
inline ExtRational walk_mcm(const Matrix& m) {
  const int n = m.rows();
  Matrix power = m;
  ExtRational best = ExtRational::neg_inf();
  for (int k = 1; k <= n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (!power.at(i, i).is_neg_inf()) {
        ExtRational mean(power.at(i, i).value() / Rational(k));
        if (best < mean) best = mean;
      }
    }
    if (k == n) break;
    Matrix next(n, n);
    for (int i = 0; i < n; ++i)
      for (int u : power.row_support(i))
        for (int j : m.row_support(u)) {
          ExtRational cand = power.at(i, u) + m.at(u, j);
          if (next.at(i, j) < cand) next.set(i, j, cand);
        }
    power = next;
  }
  return best;
}

struct Choice {
  bool from_a;  // row source of the selected max-plus linear form
  int row;
};

// All (side, row) choices admissible at column j of the pencil game.
inline std::vector<Choice> h_choices(const Matrix& a, const Matrix& b, int j) {
  std::vector<Choice> cs;
  for (int i : a.col_support(j)) cs.push_back({true, i});
  for (int i : b.col_support(j)) cs.push_back({false, i});
  return cs;
}

inline Matrix h_policy_matrix(const Matrix& a, const Matrix& b, const Rational& lambda,
                              const std::vector<Choice>& pol) {
  const int n = a.cols();
  Matrix h(n, n);
  for (int i = 0; i < n; ++i) {
    const Choice& c = pol[i];
    if (c.from_a) {
      Rational base = lambda - a.at(c.row, i).value();
      for (int k : b.row_support(c.row)) h.set(i, k, ExtRational(base + b.at(c.row, k).value()));
    } else {
      Rational base = -lambda - b.at(c.row, i).value();
      for (int k : a.row_support(c.row)) h.set(i, k, ExtRational(base + a.at(c.row, k).value()));
    }
  }
  return h;
}

// Enumerates policies of any per-coordinate choice table and folds fn over them.
inline void for_each_policy(const std::vector<std::vector<Choice>>& table,
                            const std::function<void(const std::vector<Choice>&)>& fn) {
  std::vector<Choice> pol(table.size());
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == table.size()) {
      fn(pol);
      return;
    }
    for (const Choice& c : table[i]) {
      pol[i] = c;
      rec(i + 1);
    }
  };
  rec(0);
}

// s(lambda) by exhaustive policy enumeration over the representing matrices.
inline ExtRational brute_spectral_value(const Matrix& a, const Matrix& b,
                                        const Rational& lambda) {
  std::vector<std::vector<Choice>> table;
  for (int j = 0; j < a.cols(); ++j) table.push_back(h_choices(a, b, j));
  ExtRational best = ExtRational::pos_inf();
  for_each_policy(table, [&](const std::vector<Choice>& pol) {
    ExtRational v = walk_mcm(h_policy_matrix(a, b, lambda, pol));
    if (v < best) best = v;
  });
  return best;
}

enum class MinMaxKind { F, G, H };

// r(f), r(g), r(h) by enumerating the representing matrices of each map.
inline ExtRational brute_minmax_radius(const Matrix& a, const Matrix& b, MinMaxKind kind) {
  const int n = a.cols();
  // Encode identity rows as from_a with row = -1 - i.
  std::vector<std::vector<std::vector<ExtRational>>> rows_per_coord(n);
  auto residual_row = [&](const Matrix& num, const Matrix& den, int i, int k) {
    // Row -den_ki + num_k. of the residuated form.
    std::vector<ExtRational> row(n, ExtRational::neg_inf());
    Rational base = -den.at(k, i).value();
    for (int j : num.row_support(k)) row[j] = ExtRational(base + num.at(k, j).value());
    return row;
  };
  for (int i = 0; i < n; ++i) {
    auto& rows = rows_per_coord[i];
    if (kind == MinMaxKind::F) {
      std::vector<ExtRational> id(n, ExtRational::neg_inf());
      id[i] = ExtRational(0);
      rows.push_back(id);
    }
    if (kind == MinMaxKind::G) {
      for (int k : a.col_support(i)) rows.push_back(residual_row(a, a, i, k));
      for (int k : b.col_support(i)) rows.push_back(residual_row(b, b, i, k));
    }
    for (int k : a.col_support(i)) rows.push_back(residual_row(b, a, i, k));
    for (int k : b.col_support(i)) rows.push_back(residual_row(a, b, i, k));
  }
  std::vector<size_t> idx(n, 0);
  ExtRational best = ExtRational::pos_inf();
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      Matrix q(n, n);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) q.set(r, c, rows_per_coord[r][idx[r]][c]);
      ExtRational v = walk_mcm(q);
      if (v < best) best = v;
      return;
    }
    for (idx[i] = 0; idx[i] < rows_per_coord[i].size(); ++idx[i]) rec(i + 1);
  };
  rec(0);
  return best;
}

// Lattice minimum of d_inf(Ax, lambda + Bx) with the last coordinate pinned
// to zero (the distance is invariant under shifting x).
inline ExtRational grid_min_cheb(const Matrix& a, const Matrix& b, const Rational& lambda,
                                 const Rational& radius, const Rational& pitch) {
  const int n = a.cols();
  int64_t steps = (radius / pitch).floor();
  ExtRational best = ExtRational::pos_inf();
  std::vector<ExtRational> x(n, ExtRational(0));
  std::function<void(int)> rec = [&](int j) {
    if (j == n - 1) {
      Vec xv{std::vector<ExtRational>(x)};
      Vec av = maxplus::matvec(a, xv);
      Vec bv = maxplus::matvec(b, xv);
      std::vector<ExtRational> lb(bv.dim());
      for (int i = 0; i < bv.dim(); ++i) lb[i] = add_lower(ExtRational(lambda), bv[i]);
      ExtRational d = maxplus::cheb_distance(av, Vec(std::move(lb)));
      if (d < best) best = d;
      return;
    }
    for (int64_t t = -steps; t <= steps; ++t) {
      x[j] = ExtRational(pitch * Rational(t));
      rec(j + 1);
    }
  };
  rec(0);
  return best;
}

}  // namespace oracle
