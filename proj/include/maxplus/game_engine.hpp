#pragma once

// Bipartite deterministic mean-payoff game engine.
//
// A Game has Min nodes and Max nodes with integer edge weights (the
// builders clear rational denominators into `scale`). One turn is a Min
// move followed by a Max move; the per-turn value of a Min node is the
// limit mean payoff under optimal play. The dynamic operator
//
//   h(x)_j = min over Min edges (j -> q, w1) of [ w1 + max over Max
//            edges (q -> k, w2) of (w2 + x_k) ]
//
// is exactly the min-max function the callers care about, so one
// synchronous sweep of value iteration evaluates it.
//
// Everything here is exact. exact_value runs value iteration only to
// guess; the guess is certified by a policy's maximum cycle mean (upper
// bound) together with an energy-game decision (lower bound), or by the
// denominator-bounded rounding sandwich. decide_at_least /
// decide_at_most are the descending/ascending energy iterations with a
// provably sufficient cutoff, so their verdicts are exact as well.

#include <cstdint>
#include <optional>
#include <vector>

#include "maxplus/rational.hpp"

namespace maxplus::mpg {

// Sentinel for "minus infinity" in the integer iterations; guarded so
// that additions never wrap.
constexpr int64_t kNegInf = INT64_MIN / 4;

struct Edge {
  int to;
  int64_t w;
};

struct Game {
  int n_min = 0;
  int n_max = 0;
  std::vector<std::vector<Edge>> min_out;  // per Min node, tie-break order
  std::vector<std::vector<Edge>> max_out;  // per Max node
  int64_t scale = 1;                       // integer weight = scale * true weight

  void validate() const;  // every Min node needs at least one edge
};

struct OracleStats {
  long long sweeps = 0;
  long long decide_calls = 0;
  long long policy_evals = 0;
  long long value_calls = 0;
};

class unverifiable_value : public std::runtime_error {
 public:
  explicit unverifiable_value(const std::string& what) : std::runtime_error(what) {}
};

// One synchronous sweep x <- h(x) over scaled integers (kNegInf absorbing).
void sweep(const Game& g, std::vector<int64_t>& x);

// Greedy Min policy at iterate x: per node the argmin edge, lowest index wins.
std::vector<int> greedy_policy(const Game& g, const std::vector<int64_t>& x);

// Maximum cycle mean of the one-player graph a Min policy induces, in true
// (unscaled) units; NegInf when that graph is acyclic.
ExtRational policy_value(const Game& g, const std::vector<int>& policy);

// Karp's maximum cycle mean over an explicit integer digraph; result is in
// units of weight/unit_scale. NegInf on acyclic graphs.
ExtRational karp_max_cycle_mean(int n, const std::vector<std::vector<Edge>>& adj,
                                int64_t unit_scale);

struct DecideResult {
  bool yes = false;
  // Sub-eigenvector witness in true units when yes and requested:
  // mu + x <= h(x), with NegInf on losing nodes, not identically -inf.
  std::vector<ExtRational> witness;
};

// Is the best per-turn value >= mu (true units)?
DecideResult decide_at_least(const Game& g, const Rational& mu, bool want_witness = false,
                             OracleStats* stats = nullptr);

struct DualDecideResult {
  bool yes = false;
  // Finite super-eigenvector witness when yes and requested: h(y) <= mu + y
  // everywhere, in units of (game weight) * witness_den.
  std::vector<int64_t> witness;
  int64_t witness_den = 1;
};

// Is the best per-turn value <= mu (true units)?
DualDecideResult decide_at_most(const Game& g, const Rational& mu, bool want_witness = false,
                                OracleStats* stats = nullptr);

// Greedy Min policy at a vector expressed in units of (game weight) * xden;
// ties go to the lowest edge index. Selecting against a dual witness of
// decide_at_most(mu) yields a policy whose cycle means are all <= mu.
std::vector<int> greedy_policy_scaled(const Game& g, const std::vector<int64_t>& x, int64_t xden);

// Exact best per-turn value over all Min start nodes, in true units.
// policy_hint, when given, is tried first (one Karp run plus one decision
// instead of a fresh value iteration); policy_out receives a certified
// optimal policy when the value is finite.
ExtRational exact_value(const Game& g, OracleStats* stats = nullptr,
                        const std::vector<int>* policy_hint = nullptr,
                        std::vector<int>* policy_out = nullptr);

}  // namespace maxplus::mpg
