#pragma once

// The parametric mean-payoff game attached to a pencil (A, B, lambda):
// n Min nodes (one per column), 2m Max nodes (one per row of the A copy,
// one per row of the B copy). A Min move from column j to A-row i costs
// lambda - a_ij; to B-row i it costs -lambda - b_ij. Max answers from
// A-row i with b_ik, from B-row i with a_ik. One turn evaluates
//
//   h_lambda(x) = (lambda + A# B x)  /\  (-lambda + B# A x),
//
// and the greatest per-turn value over Min nodes is the spectral
// function value s(lambda).

#include <optional>
#include <variant>
#include <vector>

#include "maxplus/core.hpp"
#include "maxplus/game_engine.hpp"

namespace maxplus::games {

class precondition_error : public std::invalid_argument {
 public:
  explicit precondition_error(const std::string& what) : std::invalid_argument(what) {}
};

enum class Side : uint8_t { A = 0, B = 1 };

struct PolicyChoice {
  Side side;
  int row;
  friend bool operator==(const PolicyChoice&, const PolicyChoice&) = default;
};

// A positional strategy of player Min: one admissible (side, row) per column.
using Policy = std::vector<PolicyChoice>;

struct GameGraph {
  Matrix a, b;
  Rational lambda;
  int m = 0, n = 0;
  mpg::Game game;  // integer-scaled engine form; weights are game.scale * true weights
  // Per Min node, the (side, row) behind each engine edge, in engine edge order
  // (A-side rows ascending, then B-side rows ascending).
  std::vector<std::vector<PolicyChoice>> choices;

  int edge_index(int min_node, const PolicyChoice& c) const;
};

GameGraph build_game(const Matrix& a, const Matrix& b, const Rational& lambda);

// Exact h_lambda(x) through the core residuations; one value-iteration sweep
// of the engine computes the same vector on scaled integers.
Vec apply_h(const GameGraph& g, const Vec& x);

// Karp's algorithm over exact rationals; -inf iff the finite part is acyclic.
ExtRational max_cycle_mean(const Matrix& m);

// The representing matrix H_lambda^(pi) selected by a Min policy.
Matrix policy_matrix(const GameGraph& g, const Policy& pi);

struct OracleStats : mpg::OracleStats {};

// s(lambda) as an exact rational (finite under the build_game preconditions).
// A certified optimal policy is written to policy_out when requested; a prior
// policy may be passed as a hint to skip the value iteration when it is still
// optimal (adjacent lambdas usually share a policy).
Rational spectral_radius(const GameGraph& g, OracleStats* stats = nullptr,
                         const Policy* hint = nullptr, Policy* policy_out = nullptr);

// s(lambda) >= mu, decided exactly.
bool decide_at_least(const GameGraph& g, const Rational& mu, OracleStats* stats = nullptr);

// As above, returning the sub-eigenvector witness (mu + x <= h_lambda(x)).
std::optional<Vec> decide_at_least_witness(const GameGraph& g, const Rational& mu,
                                           OracleStats* stats = nullptr);

enum class EndpointSide : uint8_t { Left, Right };

struct CycleCertificate {
  std::vector<int> cycle;  // Min-node (column) sequence
  Rational mean;           // cycle mean of the representing matrix at the game's lambda
  int slope = 0;           // net lambda coefficient over the cycle
  int length = 0;
};

struct Certified {
  Policy policy;
  CycleCertificate cycle;
};
struct NotEndpoint {};
using EndpointResult = std::variant<Certified, NotEndpoint>;

// Is the game's lambda the left (right) end of a spectral interval?
// Caller ensures s(lambda) >= 0. Decided exactly by a slope-perturbed game;
// the witness policy is re-verified through its critical subgraph.
EndpointResult endpoint_certificate(const GameGraph& g, EndpointSide side,
                                    OracleStats* stats = nullptr);

// Critical-subgraph verification of one representing matrix: all cycles
// nonpositive and every zero-weight cycle with strictly positive (Left) or
// strictly negative (Right) slope. Exposed for tests.
std::optional<CycleCertificate> verify_endpoint_policy(const GameGraph& g, const Policy& pi,
                                                       EndpointSide side);

}  // namespace maxplus::games
