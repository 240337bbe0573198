#include "maxplus/game_engine.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace maxplus::mpg {

namespace {

inline int64_t add_ni(int64_t a, int64_t b) {
  if (a <= kNegInf || b <= kNegInf) return kNegInf;
  return a + b;
}

int64_t max_abs_weight(const std::vector<std::vector<Edge>>& out) {
  int64_t w = 0;
  for (const auto& es : out)
    for (const auto& e : es) w = std::max<int64_t>(w, std::llabs(e.w));
  return w;
}

// lcm helper with overflow narrowing.
int64_t lcm64(int64_t a, int64_t b) {
  return detail::narrow128((__int128)(a / std::gcd(a, b)) * b, "lcm");
}

// Shifted integer copy of g: every min-edge weight becomes w*d - num, which
// subtracts mu = num/(d*scale) in true units from every turn.
Game shift_by(const Game& g, const Rational& mu_true) {
  Rational mu_scaled = mu_true * Rational(g.scale);
  int64_t d = mu_scaled.den();
  Game s;
  s.n_min = g.n_min;
  s.n_max = g.n_max;
  s.scale = detail::narrow128((__int128)g.scale * d, "shift scale");
  s.min_out.resize(g.n_min);
  s.max_out.resize(g.n_max);
  for (int j = 0; j < g.n_min; ++j) {
    s.min_out[j].reserve(g.min_out[j].size());
    for (const auto& e : g.min_out[j])
      s.min_out[j].push_back(
          {e.to, detail::narrow128((__int128)e.w * d - mu_scaled.num(), "shift w")});
  }
  for (int q = 0; q < g.n_max; ++q) {
    s.max_out[q].reserve(g.max_out[q].size());
    for (const auto& e : g.max_out[q])
      s.max_out[q].push_back({e.to, detail::narrow128((__int128)e.w * d, "shift w")});
  }
  return s;
}

struct ReverseMaps {
  std::vector<std::vector<int>> max_preds_of_min;  // max nodes with an edge into this min node
  std::vector<std::vector<int>> min_preds_of_max;  // min nodes with an edge into this max node
};

ReverseMaps reverse_maps(const Game& g) {
  ReverseMaps r;
  r.max_preds_of_min.resize(g.n_min);
  r.min_preds_of_max.resize(g.n_max);
  for (int q = 0; q < g.n_max; ++q)
    for (const auto& e : g.max_out[q]) r.max_preds_of_min[e.to].push_back(q);
  for (int j = 0; j < g.n_min; ++j)
    for (const auto& e : g.min_out[j]) r.min_preds_of_max[e.to].push_back(j);
  for (auto& v : r.max_preds_of_min) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  for (auto& v : r.min_preds_of_max) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return r;
}

}  // namespace

void Game::validate() const {
  for (int j = 0; j < n_min; ++j)
    if (min_out[j].empty())
      throw std::invalid_argument("game has a Min node without moves");
  for (const auto& es : min_out)
    for (const auto& e : es)
      if (e.to < 0 || e.to >= n_max) throw std::invalid_argument("bad min edge target");
  for (const auto& es : max_out)
    for (const auto& e : es)
      if (e.to < 0 || e.to >= n_min) throw std::invalid_argument("bad max edge target");
}

void sweep(const Game& g, std::vector<int64_t>& x) {
  std::vector<int64_t> y(g.n_max, kNegInf);
  for (int q = 0; q < g.n_max; ++q) {
    int64_t best = kNegInf;
    for (const auto& e : g.max_out[q]) best = std::max(best, add_ni(e.w, x[e.to]));
    y[q] = best;
  }
  for (int j = 0; j < g.n_min; ++j) {
    int64_t best = INT64_MAX;
    for (const auto& e : g.min_out[j]) best = std::min(best, add_ni(e.w, y[e.to]));
    x[j] = best;
  }
}

std::vector<int> greedy_policy(const Game& g, const std::vector<int64_t>& x) {
  std::vector<int64_t> y(g.n_max, kNegInf);
  for (int q = 0; q < g.n_max; ++q) {
    int64_t best = kNegInf;
    for (const auto& e : g.max_out[q]) best = std::max(best, add_ni(e.w, x[e.to]));
    y[q] = best;
  }
  std::vector<int> pol(g.n_min, 0);
  for (int j = 0; j < g.n_min; ++j) {
    int64_t best = INT64_MAX;
    int arg = 0;
    for (size_t idx = 0; idx < g.min_out[j].size(); ++idx) {
      const auto& e = g.min_out[j][idx];
      int64_t v = add_ni(e.w, y[e.to]);
      if (v < best) {
        best = v;
        arg = static_cast<int>(idx);
      }
    }
    pol[j] = arg;
  }
  return pol;
}

ExtRational karp_max_cycle_mean(int n, const std::vector<std::vector<Edge>>& adj,
                                int64_t unit_scale) {
  if (n == 0) return ExtRational::neg_inf();
  // Multi-source Karp: D[k][v] = best walk of length exactly k ending at v,
  // starting anywhere (D[0] = 0 everywhere covers every cycle).
  std::vector<std::vector<int64_t>> d(n + 1, std::vector<int64_t>(n, kNegInf));
  for (int v = 0; v < n; ++v) d[0][v] = 0;
  for (int k = 1; k <= n; ++k)
    for (int u = 0; u < n; ++u) {
      if (d[k - 1][u] <= kNegInf) continue;
      for (const auto& e : adj[u]) {
        int64_t cand = d[k - 1][u] + e.w;
        if (cand > d[k][e.to]) d[k][e.to] = cand;
      }
    }
  bool found = false;
  Rational best;
  for (int v = 0; v < n; ++v) {
    if (d[n][v] <= kNegInf) continue;
    bool have = false;
    Rational inner;
    for (int k = 0; k < n; ++k) {
      if (d[k][v] <= kNegInf) continue;
      Rational mean(d[n][v] - d[k][v], static_cast<int64_t>(n - k));
      if (!have || mean < inner) {
        inner = mean;
        have = true;
      }
    }
    if (!have) continue;
    if (!found || best < inner) {
      best = inner;
      found = true;
    }
  }
  if (!found) return ExtRational::neg_inf();
  return ExtRational(best / Rational(unit_scale));
}

ExtRational policy_value(const Game& g, const std::vector<int>& policy) {
  std::vector<std::vector<Edge>> adj(g.n_min);
  for (int j = 0; j < g.n_min; ++j) {
    const Edge& me = g.min_out[j][policy[j]];
    for (const auto& xe : g.max_out[me.to]) adj[j].push_back({xe.to, me.w + xe.w});
  }
  return karp_max_cycle_mean(g.n_min, adj, g.scale);
}

DecideResult decide_at_least(const Game& g, const Rational& mu, bool want_witness,
                             OracleStats* stats) {
  if (stats) ++stats->decide_calls;
  Game s = shift_by(g, mu);
  ReverseMaps rev = reverse_maps(s);
  int64_t wturn = max_abs_weight(s.min_out) + max_abs_weight(s.max_out);
  int64_t cutoff = -((int64_t)(s.n_min + s.n_max + 1) * std::max<int64_t>(wturn, 1) + 1);

  // Descending energy iteration: greatest x <= 0 with x <= h(x); a node that
  // sinks past the sufficient-credit cutoff can never rejoin a sub-eigenvector
  // and drops to -inf.
  std::vector<int64_t> x(s.n_min, 0), y(s.n_max, kNegInf);
  auto recompute_y = [&](int q) {
    int64_t best = kNegInf;
    for (const auto& e : s.max_out[q]) best = std::max(best, add_ni(e.w, x[e.to]));
    return best;
  };
  for (int q = 0; q < s.n_max; ++q) y[q] = recompute_y(q);

  std::deque<int> work;
  std::vector<bool> queued(s.n_min, false);
  for (int j = 0; j < s.n_min; ++j) {
    work.push_back(j);
    queued[j] = true;
  }
  while (!work.empty()) {
    int j = work.front();
    work.pop_front();
    queued[j] = false;
    if (x[j] <= kNegInf) continue;
    int64_t hv = INT64_MAX;
    for (const auto& e : s.min_out[j]) hv = std::min(hv, add_ni(e.w, y[e.to]));
    int64_t nv = std::min(x[j], hv);
    if (nv < cutoff) nv = kNegInf;
    if (nv >= x[j]) continue;
    x[j] = nv;
    for (int q : rev.max_preds_of_min[j]) {
      int64_t ny = recompute_y(q);
      if (ny < y[q]) {
        y[q] = ny;
        for (int p : rev.min_preds_of_max[q])
          if (!queued[p]) {
            work.push_back(p);
            queued[p] = true;
          }
      }
    }
  }

  DecideResult res;
  for (int j = 0; j < s.n_min; ++j)
    if (x[j] > kNegInf) res.yes = true;
  if (res.yes && want_witness) {
    res.witness.assign(s.n_min, ExtRational::neg_inf());
    for (int j = 0; j < s.n_min; ++j)
      if (x[j] > kNegInf) res.witness[j] = ExtRational(Rational(x[j]) / Rational(s.scale));
  }
  return res;
}

DualDecideResult decide_at_most(const Game& g, const Rational& mu, bool want_witness,
                                OracleStats* stats) {
  if (stats) ++stats->decide_calls;
  Game s = shift_by(g, mu);
  ReverseMaps rev = reverse_maps(s);
  int64_t wturn = max_abs_weight(s.min_out) + max_abs_weight(s.max_out);
  int64_t cutoff = (int64_t)(s.n_min + s.n_max + 1) * std::max<int64_t>(wturn, 1) + 1;

  // Ascending iteration toward the least y >= 0 with h(y) <= y; if a
  // solution exists, the iterates never pass the credit cutoff.
  std::vector<int64_t> x(s.n_min, 0), y(s.n_max, kNegInf);
  auto recompute_y = [&](int q) {
    int64_t best = kNegInf;
    for (const auto& e : s.max_out[q]) best = std::max(best, add_ni(e.w, x[e.to]));
    return best;
  };
  for (int q = 0; q < s.n_max; ++q) y[q] = recompute_y(q);

  std::deque<int> work;
  std::vector<bool> queued(s.n_min, false);
  for (int j = 0; j < s.n_min; ++j) {
    work.push_back(j);
    queued[j] = true;
  }
  while (!work.empty()) {
    int j = work.front();
    work.pop_front();
    queued[j] = false;
    int64_t hv = INT64_MAX;
    for (const auto& e : s.min_out[j]) hv = std::min(hv, add_ni(e.w, y[e.to]));
    if (hv == INT64_MAX || hv <= x[j]) continue;  // constraint already satisfied
    int64_t nv = hv;
    if (nv > cutoff) return {};                    // no finite super-eigenvector
    x[j] = nv;
    for (int q : rev.max_preds_of_min[j]) {
      int64_t ny = recompute_y(q);
      if (ny > y[q]) {
        y[q] = ny;
        for (int p : rev.min_preds_of_max[q])
          if (!queued[p]) {
            work.push_back(p);
            queued[p] = true;
          }
      }
    }
  }
  DualDecideResult res;
  res.yes = true;
  if (want_witness) {
    res.witness = std::move(x);
    res.witness_den = s.scale / g.scale;
  }
  return res;
}

std::vector<int> greedy_policy_scaled(const Game& g, const std::vector<int64_t>& x,
                                      int64_t xden) {
  std::vector<int64_t> y(g.n_max, kNegInf);
  for (int q = 0; q < g.n_max; ++q)
    for (const auto& e : g.max_out[q]) {
      int64_t v = detail::narrow128((__int128)e.w * xden + x[e.to], "greedy scaled");
      y[q] = std::max<int64_t>(y[q], v);
    }
  std::vector<int> pol(g.n_min, 0);
  for (int j = 0; j < g.n_min; ++j) {
    int64_t best = INT64_MAX;
    int arg = 0;
    for (size_t idx = 0; idx < g.min_out[j].size(); ++idx) {
      const auto& e = g.min_out[j][idx];
      if (y[e.to] <= kNegInf) continue;
      int64_t v = detail::narrow128((__int128)e.w * xden + y[e.to], "greedy scaled");
      if (v < best) {
        best = v;
        arg = static_cast<int>(idx);
      }
    }
    pol[j] = arg;
  }
  return pol;
}

ExtRational exact_value(const Game& g, OracleStats* stats, const std::vector<int>* policy_hint,
                        std::vector<int>* policy_out) {
  if (stats) ++stats->value_calls;
  g.validate();
  const int64_t kappa = std::max(1, std::min(g.n_min, g.n_max));

  auto certify = [&](const std::vector<int>& pol) -> std::optional<ExtRational> {
    if (stats) ++stats->policy_evals;
    ExtRational ub = policy_value(g, pol);
    if (ub.is_neg_inf()) {
      // Some policy concedes every cycle; nothing beats -inf from below.
      if (policy_out) *policy_out = pol;
      return ExtRational::neg_inf();
    }
    if (decide_at_least(g, ub.value(), false, stats).yes) {
      if (policy_out) *policy_out = pol;
      return ub;
    }
    return std::nullopt;
  };

  if (policy_hint && static_cast<int>(policy_hint->size()) == g.n_min) {
    bool valid = true;
    for (int j = 0; j < g.n_min && valid; ++j)
      valid = (*policy_hint)[j] >= 0 &&
              (*policy_hint)[j] < static_cast<int>(g.min_out[j].size());
    if (valid) {
      if (auto v = certify(*policy_hint)) return *v;
    }
  }

  int64_t wturn = max_abs_weight(g.min_out) + max_abs_weight(g.max_out);
  std::vector<int64_t> x(g.n_min, 0);
  long long total = 0;
  long long chunk = std::max(16, 2 * (g.n_min + g.n_max));
  for (int round = 0; round < 62; ++round) {
    for (long long t = 0; t < chunk; ++t) sweep(g, x);
    total += chunk;
    if (stats) stats->sweeps += chunk;

    // Route 1: the greedy policy's maximum cycle mean, certified from below.
    std::vector<int> pol = greedy_policy(g, x);
    if (auto v = certify(pol)) return *v;

    // Route 2: round the best per-node mean to the denominator bound and
    // sandwich it between the two energy decisions. The Farey gap below
    // kappa is 1/kappa^2, so both passing pins the value exactly. This is
    // guaranteed to fire once the horizon passes the value-iteration bound.
    int64_t best = kNegInf;
    for (int j = 0; j < g.n_min; ++j) best = std::max(best, x[j]);
    if (best <= kNegInf) {
      // Every node sank to -inf. Any finite value would be at least
      // -wturn per turn, so one decision settles it.
      Rational floor_mu = Rational(-(std::max<int64_t>(wturn, 1) + 1)) / Rational(g.scale);
      if (!decide_at_least(g, floor_mu, false, stats).yes) return ExtRational::neg_inf();
    }
    if (best > kNegInf) {
      Rational mean = Rational(best) / Rational(total) / Rational(g.scale);
      Rational cand = best_approx(mean * Rational(g.scale), kappa) / Rational(g.scale);
      Rational gap = Rational(1, kappa * kappa) / Rational(g.scale);
      if (decide_at_least(g, cand, false, stats).yes &&
          !decide_at_least(g, cand + gap, false, stats).yes) {
        if (policy_out) {
          // Recover an optimal policy from the dual side: greedy against a
          // super-eigenvector of the certified value selects a representing
          // matrix whose cycle means all equal it.
          auto dual = decide_at_most(g, cand, true, stats);
          if (!dual.yes) throw unverifiable_value("sandwich certified an uncoverable value");
          *policy_out = greedy_policy_scaled(g, dual.witness, dual.witness_den);
        }
        return ExtRational(cand);
      }
    }

    chunk *= 2;
    // Keep iterate magnitudes far from the int64 sentinel.
    if ((total + chunk) > (INT64_MAX / 8) / std::max<int64_t>(wturn, 1))
      throw unverifiable_value("value iteration horizon exhausted without certification");
  }
  throw unverifiable_value("value iteration horizon exhausted without certification");
}

}  // namespace maxplus::mpg
