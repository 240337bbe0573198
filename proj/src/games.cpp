#include "maxplus/games.hpp"

#include <algorithm>
#include <numeric>

namespace maxplus::games {

namespace {

int64_t lcm64(int64_t a, int64_t b) {
  return detail::narrow128((__int128)(a / std::gcd(a, b)) * b, "lcm");
}

int64_t denominator_lcm(const Matrix& m, int64_t acc) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j : m.row_support(i)) acc = lcm64(acc, m.at(i, j).value().den());
  return acc;
}

int64_t scaled_int(const Rational& r, int64_t scale, const char* ctx) {
  return detail::narrow128((__int128)r.num() * (scale / r.den()), ctx);
}

}  // namespace

int GameGraph::edge_index(int min_node, const PolicyChoice& c) const {
  const auto& cs = choices[min_node];
  for (size_t i = 0; i < cs.size(); ++i)
    if (cs[i] == c) return static_cast<int>(i);
  return -1;
}

GameGraph build_game(const Matrix& a, const Matrix& b, const Rational& lambda) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw dimension_error("build_game: shape mismatch");
  const int m = a.rows(), n = a.cols();
  for (int j = 0; j < n; ++j)
    if (a.col_is_bottom(j) && b.col_is_bottom(j))
      throw precondition_error("common -inf column");
  for (int i = 0; i < m; ++i)
    if (a.row_is_bottom(i) || b.row_is_bottom(i))
      throw precondition_error("-inf row (run preprocess_rows first)");

  GameGraph g;
  g.a = a;
  g.b = b;
  g.lambda = lambda;
  g.m = m;
  g.n = n;

  int64_t scale = lambda.den();
  scale = denominator_lcm(a, scale);
  scale = denominator_lcm(b, scale);
  g.game.scale = scale;
  g.game.n_min = n;
  g.game.n_max = 2 * m;
  g.game.min_out.resize(n);
  g.game.max_out.resize(2 * m);
  g.choices.resize(n);

  const int64_t lam = scaled_int(lambda, scale, "lambda");
  for (int j = 0; j < n; ++j) {
    for (int i : a.col_support(j)) {
      g.game.min_out[j].push_back({i, lam - scaled_int(a.at(i, j).value(), scale, "weight")});
      g.choices[j].push_back({Side::A, i});
    }
    for (int i : b.col_support(j)) {
      g.game.min_out[j].push_back(
          {m + i, -lam - scaled_int(b.at(i, j).value(), scale, "weight")});
      g.choices[j].push_back({Side::B, i});
    }
  }
  for (int i = 0; i < m; ++i) {
    for (int k : b.row_support(i))
      g.game.max_out[i].push_back({k, scaled_int(b.at(i, k).value(), scale, "weight")});
    for (int k : a.row_support(i))
      g.game.max_out[m + i].push_back({k, scaled_int(a.at(i, k).value(), scale, "weight")});
  }
  g.game.validate();
  return g;
}

Vec apply_h(const GameGraph& g, const Vec& x) {
  if (x.dim() != g.n) throw dimension_error("apply_h: dimension mismatch");
  ExtRational lam(g.lambda);
  ResVec left = residual_apply(g.a, matvec(g.b, ResVec(x)));
  ResVec right = residual_apply(g.b, matvec(g.a, ResVec(x)));
  std::vector<ExtRational> out(g.n);
  for (int j = 0; j < g.n; ++j) out[j] = min(lam + left[j], -lam + right[j]);
  return ResVec(std::move(out)).to_vec();
}

ExtRational max_cycle_mean(const Matrix& m) {
  if (m.rows() != m.cols()) throw dimension_error("max_cycle_mean: matrix not square");
  int64_t scale = denominator_lcm(m, 1);
  std::vector<std::vector<mpg::Edge>> adj(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j : m.row_support(i))
      adj[i].push_back({j, scaled_int(m.at(i, j).value(), scale, "mcm weight")});
  return mpg::karp_max_cycle_mean(m.rows(), adj, scale);
}

Matrix policy_matrix(const GameGraph& g, const Policy& pi) {
  if (static_cast<int>(pi.size()) != g.n)
    throw dimension_error("policy_matrix: policy size mismatch");
  Matrix h(g.n, g.n);
  for (int i = 0; i < g.n; ++i) {
    const PolicyChoice& c = pi[i];
    if (c.row < 0 || c.row >= g.m) throw std::invalid_argument("policy_matrix: bad row");
    if (c.side == Side::A) {
      if (!g.a.at(c.row, i).is_finite())
        throw std::invalid_argument("policy_matrix: chosen A entry is -inf");
      Rational base = g.lambda - g.a.at(c.row, i).value();
      for (int j : g.b.row_support(c.row))
        h.set(i, j, ExtRational(base + g.b.at(c.row, j).value()));
    } else {
      if (!g.b.at(c.row, i).is_finite())
        throw std::invalid_argument("policy_matrix: chosen B entry is -inf");
      Rational base = -g.lambda - g.b.at(c.row, i).value();
      for (int j : g.a.row_support(c.row))
        h.set(i, j, ExtRational(base + g.a.at(c.row, j).value()));
    }
  }
  return h;
}

Rational spectral_radius(const GameGraph& g, OracleStats* stats, const Policy* hint,
                         Policy* policy_out) {
  std::vector<int> hint_idx;
  const std::vector<int>* hint_ptr = nullptr;
  if (hint && static_cast<int>(hint->size()) == g.n) {
    hint_idx.resize(g.n);
    bool ok = true;
    for (int j = 0; j < g.n && ok; ++j) {
      int idx = g.edge_index(j, (*hint)[j]);
      if (idx < 0)
        ok = false;
      else
        hint_idx[j] = idx;
    }
    if (ok) hint_ptr = &hint_idx;
  }
  std::vector<int> pol_idx;
  ExtRational v = mpg::exact_value(g.game, stats, hint_ptr, policy_out ? &pol_idx : nullptr);
  if (!v.is_finite())
    throw std::logic_error("spectral_radius: infinite value on a preprocessed game");
  if (policy_out) {
    policy_out->resize(g.n);
    for (int j = 0; j < g.n; ++j) (*policy_out)[j] = g.choices[j][pol_idx[j]];
  }
  return v.value();
}

bool decide_at_least(const GameGraph& g, const Rational& mu, OracleStats* stats) {
  return mpg::decide_at_least(g.game, mu, false, stats).yes;
}

std::optional<Vec> decide_at_least_witness(const GameGraph& g, const Rational& mu,
                                           OracleStats* stats) {
  auto res = mpg::decide_at_least(g.game, mu, true, stats);
  if (!res.yes) return std::nullopt;
  return Vec(std::move(res.witness));
}

namespace {

// --- critical-subgraph machinery for Proposition-13-style verification ---

struct IntDigraph {
  int n = 0;
  std::vector<std::vector<mpg::Edge>> adj;
};

// Kosaraju strongly connected components.
std::vector<int> scc_ids(const IntDigraph& g) {
  std::vector<std::vector<int>> fwd(g.n), bwd(g.n);
  for (int u = 0; u < g.n; ++u)
    for (const auto& e : g.adj[u]) {
      fwd[u].push_back(e.to);
      bwd[e.to].push_back(u);
    }
  std::vector<int> order;
  std::vector<bool> seen(g.n, false);
  for (int s = 0; s < g.n; ++s) {
    if (seen[s]) continue;
    std::vector<std::pair<int, size_t>> stack{{s, 0}};
    seen[s] = true;
    while (!stack.empty()) {
      auto& [u, i] = stack.back();
      if (i < fwd[u].size()) {
        int v = fwd[u][i++];
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back({v, 0});
        }
      } else {
        order.push_back(u);
        stack.pop_back();
      }
    }
  }
  std::vector<int> id(g.n, -1);
  int comp = 0;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (id[*it] >= 0) continue;
    std::vector<int> stack{*it};
    id[*it] = comp;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : bwd[u])
        if (id[v] < 0) {
          id[v] = comp;
          stack.push_back(v);
        }
    }
    ++comp;
  }
  return id;
}

// Any elementary cycle of a nonempty digraph where every node has the
// property that it lies on some cycle is found by one DFS.
std::vector<int> find_cycle(const IntDigraph& g) {
  std::vector<int> state(g.n, 0), parent(g.n, -1);
  for (int s = 0; s < g.n; ++s) {
    if (state[s] != 0 || g.adj[s].empty()) continue;
    std::vector<std::pair<int, size_t>> stack{{s, 0}};
    state[s] = 1;
    while (!stack.empty()) {
      auto& [u, i] = stack.back();
      if (i < g.adj[u].size()) {
        int v = g.adj[u][i++].to;
        if (state[v] == 1) {
          std::vector<int> cyc{v};
          for (int w = u; w != v; w = parent[w]) cyc.push_back(w);
          std::reverse(cyc.begin() + 1, cyc.end());
          return cyc;
        }
        if (state[v] == 0) {
          state[v] = 1;
          parent[v] = u;
          stack.push_back({v, 0});
        }
      } else {
        state[u] = 2;
        stack.pop_back();
      }
    }
  }
  return {};
}

Rational h_entry(const GameGraph& g, const Policy& pi, int i, int j) {
  const PolicyChoice& c = pi[i];
  if (c.side == Side::A)
    return g.lambda - g.a.at(c.row, i).value() + g.b.at(c.row, j).value();
  return -g.lambda - g.b.at(c.row, i).value() + g.a.at(c.row, j).value();
}

Rational cycle_mean_of(const GameGraph& g, const Policy& pi, const std::vector<int>& cyc) {
  Rational sum;
  for (size_t r = 0; r < cyc.size(); ++r)
    sum += h_entry(g, pi, cyc[r], cyc[(r + 1) % cyc.size()]);
  return sum / Rational(static_cast<int64_t>(cyc.size()));
}

// Splits a zero-mean cycle at a repeated Max choice until every (side, row)
// appears at most once, so the certificate length obeys l <= min(2m, n).
std::vector<int> shorten_cycle(const GameGraph& g, const Policy& pi, std::vector<int> cyc) {
  for (;;) {
    int l = static_cast<int>(cyc.size());
    int p = -1, q = -1;
    for (int i = 0; i < l && p < 0; ++i)
      for (int j = i + 1; j < l; ++j)
        if (pi[cyc[i]] == pi[cyc[j]]) {
          p = i;
          q = j;
          break;
        }
    if (p < 0) return cyc;
    // Segment [p+1..q] closes through position q's choice (same Max node as
    // position p's), the complement closes through position p's choice.
    std::vector<int> seg_a(cyc.begin() + p + 1, cyc.begin() + q + 1);
    std::vector<int> seg_b;
    for (int i = 0; i <= p; ++i) seg_b.push_back(cyc[i]);
    for (int i = q + 1; i < l; ++i) seg_b.push_back(cyc[i]);
    if (!seg_a.empty() && cycle_mean_of(g, pi, seg_a).is_zero())
      cyc = std::move(seg_a);
    else
      cyc = std::move(seg_b);
  }
}

}  // namespace

std::optional<CycleCertificate> verify_endpoint_policy(const GameGraph& g, const Policy& pi,
                                                       EndpointSide side) {
  Matrix h = policy_matrix(g, pi);
  ExtRational rho = max_cycle_mean(h);
  if (!(rho == ExtRational(0))) return std::nullopt;  // cycles must be <= 0, and s >= 0 forces = 0

  // Integer weights for the potential computation.
  int64_t scale = denominator_lcm(h, 1);
  const int n = h.rows();
  std::vector<std::vector<mpg::Edge>> adj(n);
  for (int i = 0; i < n; ++i)
    for (int j : h.row_support(i))
      adj[i].push_back({j, scaled_int(h.at(i, j).value(), scale, "cert weight")});

  // Longest-walk potentials (finite: all cycles are nonpositive).
  std::vector<int64_t> psi(n, 0);
  for (int pass = 0; pass <= n; ++pass) {
    bool changed = false;
    for (int u = 0; u < n; ++u)
      for (const auto& e : adj[u])
        if (psi[u] + e.w > psi[e.to]) {
          psi[e.to] = psi[u] + e.w;
          changed = true;
        }
    if (!changed) break;
    if (pass == n) return std::nullopt;  // positive cycle; cannot happen with rho == 0
  }

  // Tight edges within one SCC are exactly the edges on zero-mean cycles.
  IntDigraph tight;
  tight.n = n;
  tight.adj.resize(n);
  for (int u = 0; u < n; ++u)
    for (const auto& e : adj[u])
      if (psi[u] + e.w == psi[e.to]) tight.adj[u].push_back(e);
  std::vector<int> comp = scc_ids(tight);
  IntDigraph critical;
  critical.n = n;
  critical.adj.resize(n);
  bool any_edge = false;
  for (int u = 0; u < n; ++u)
    for (const auto& e : tight.adj[u])
      if (comp[u] == comp[e.to]) {
        critical.adj[u].push_back(e);
        any_edge = true;
      }
  if (!any_edge) return std::nullopt;  // rho == 0 guarantees a critical cycle

  // Slope-weighted cycle means over the critical subgraph.
  IntDigraph slopes;
  slopes.n = n;
  slopes.adj.resize(n);
  for (int u = 0; u < n; ++u)
    for (const auto& e : critical.adj[u])
      slopes.adj[u].push_back({e.to, pi[u].side == Side::A ? 1 : -1});
  ExtRational max_slope = mpg::karp_max_cycle_mean(n, slopes.adj, 1);
  IntDigraph neg_slopes = slopes;
  for (auto& es : neg_slopes.adj)
    for (auto& e : es) e.w = -e.w;
  ExtRational max_neg_slope = mpg::karp_max_cycle_mean(n, neg_slopes.adj, 1);

  bool ok = side == EndpointSide::Left ? max_neg_slope < ExtRational(0)
                                       : max_slope < ExtRational(0);
  if (!ok) return std::nullopt;

  std::vector<int> cyc = shorten_cycle(g, pi, find_cycle(critical));
  CycleCertificate cert;
  cert.cycle = cyc;
  cert.length = static_cast<int>(cyc.size());
  cert.mean = cycle_mean_of(g, pi, cyc);
  for (int u : cyc) cert.slope += pi[u].side == Side::A ? 1 : -1;
  return cert;
}

EndpointResult endpoint_certificate(const GameGraph& g, EndpointSide side, OracleStats* stats) {
  if (!decide_at_least(g, Rational(0), stats))
    throw precondition_error("endpoint certificate requires s(lambda) >= 0");

  // Perturb each turn's weight by -eps*slope (Left) or +eps*slope (Right)
  // with eps below the cycle-mean granularity 1/(scale*n): a representing
  // matrix with all cycles (weight < 0, or weight = 0 and the required
  // slope sign) exists iff the perturbed game's value is negative.
  const int64_t two_n = 2 * static_cast<int64_t>(g.n);
  mpg::Game pert = g.game;
  pert.scale = detail::narrow128((__int128)g.game.scale * two_n, "perturbed scale");
  for (int j = 0; j < g.n; ++j)
    for (size_t idx = 0; idx < pert.min_out[j].size(); ++idx) {
      int sl = g.choices[j][idx].side == Side::A ? 1 : -1;
      int64_t delta = (side == EndpointSide::Left) ? -sl : sl;
      pert.min_out[j][idx].w =
          detail::narrow128((__int128)g.game.min_out[j][idx].w * two_n + delta, "perturbed w");
    }
  for (auto& es : pert.max_out)
    for (auto& e : es) e.w = detail::narrow128((__int128)e.w * two_n, "perturbed w");

  // Value < 0 iff value <= -1/(scale'*n).
  Rational thresh = -Rational(1) / (Rational(pert.scale) * Rational(g.n));
  auto dual = mpg::decide_at_most(pert, thresh, true, stats);
  if (!dual.yes) return NotEndpoint{};

  // Greedy extraction at the dual witness: the selected representing matrix
  // satisfies H'y <= thresh + y, so all its perturbed cycles are negative.
  std::vector<int> idx = mpg::greedy_policy_scaled(pert, dual.witness, dual.witness_den);
  Policy pi(g.n);
  for (int j = 0; j < g.n; ++j) pi[j] = g.choices[j][idx[j]];

  auto cert = verify_endpoint_policy(g, pi, side);
  if (!cert)
    throw std::logic_error("endpoint certificate: extracted policy failed verification");
  return Certified{std::move(pi), std::move(*cert)};
}

}  // namespace maxplus::games
