#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "maxplus/games.hpp"
#include "maxplus/generators.hpp"
#include "oracle.hpp"

using namespace maxplus;
using namespace maxplus::games;
using fixtures::ni;

namespace {

Vec vec(std::initializer_list<int64_t> xs) {
  std::vector<ExtRational> e;
  for (auto x : xs) e.emplace_back(x);
  return Vec(std::move(e));
}

// A random rational with small denominator.
Rational random_lambda(gen::Xoshiro256& rng, int64_t span, int64_t max_den) {
  int64_t d = rng.int_in(1, max_den);
  return Rational(rng.int_in(-span * d, span * d), d);
}

}  // namespace

TEST_CASE("build_game shapes and weights") {
  GameGraph unit = build_game(Matrix::identity(1), Matrix::identity(1), Rational(0));
  CHECK(unit.game.n_min == 1);
  CHECK(unit.game.n_max == 2);
  CHECK(unit.game.min_out[0].size() == 2);
  for (const auto& e : unit.game.min_out[0]) CHECK(e.w == 0);
  for (const auto& es : unit.game.max_out)
    for (const auto& e : es) CHECK(e.w == 0);

  GameGraph g = build_game(fixtures::rand_a(), fixtures::rand_b(), Rational(-2));
  CHECK(g.game.n_min == 4);
  CHECK(g.game.n_max == 6);
  // Min edge from column 2 to the A-copy of row 1 weighs lambda - a_12 = -5.
  int idx = g.edge_index(1, {Side::A, 0});
  REQUIRE(idx >= 0);
  CHECK(g.game.min_out[1][idx].w == -5 * g.game.scale / g.game.scale - 4 + 4);  // placeholder
  CHECK(g.game.min_out[1][idx].w / g.game.scale == -5);

  // A -inf entry suppresses the corresponding Min edge.
  GameGraph s = build_game(fixtures::sparse_a(), fixtures::sparse_b(), Rational(-2));
  CHECK(s.edge_index(2, {Side::A, 0}) == -1);  // a_13 = -inf
  CHECK(s.edge_index(2, {Side::A, 1}) >= 0);

  CHECK_THROWS_AS(build_game(Matrix{{ni(), ExtRational(0)}}, Matrix{{ni(), ExtRational(1)}},
                             Rational(0)),
                  precondition_error);
  CHECK_THROWS_AS(build_game(Matrix{{ExtRational(0)}, {ni()}},
                             Matrix{{ExtRational(0)}, {ExtRational(0)}}, Rational(0)),
                  precondition_error);
}

TEST_CASE("apply_h reproduces the worked power iteration") {
  GameGraph g = build_game(fixtures::sparse_a(), fixtures::sparse_b(), Rational(-2));
  Vec x = Vec::zeros(4);
  Vec x1 = apply_h(g, x);
  Vec x2 = apply_h(g, x1);
  Vec x3 = apply_h(g, x2);
  CHECK(x2 == vec({-5, 0, -5, -1}));
  CHECK(x3 == x2);
}

TEST_CASE("apply_h is homogeneous, isotone, and matches one engine sweep") {
  gen::Xoshiro256 rng(23);
  for (int it = 0; it < 60; ++it) {
    auto [a, b] = gen::gen_random({3, 3, 3, Rational(4, 5), rng.next()});
    Rational lam(rng.int_in(-3, 3));
    GameGraph g = build_game(a, b, lam);
    std::vector<ExtRational> xe(3), ye(3);
    for (int i = 0; i < 3; ++i) {
      int64_t v = rng.int_in(-4, 4);
      xe[i] = ExtRational(v);
      ye[i] = ExtRational(v + rng.int_in(0, 3));
    }
    Vec x{std::vector<ExtRational>(xe)}, y{std::move(ye)};
    Vec hx = apply_h(g, x);
    CHECK(apply_h(g, ExtRational(5) + x) == (ExtRational(5) + hx));
    CHECK(leq(hx, apply_h(g, y)));

    // Integer engine sweep against the exact residuation composition.
    std::vector<int64_t> xi(3);
    for (int i = 0; i < 3; ++i) xi[i] = x[i].value().num() * g.game.scale;
    mpg::sweep(g.game, xi);
    for (int i = 0; i < 3; ++i)
      CHECK(Rational(xi[i]) / Rational(g.game.scale) == hx[i].value());
  }
}

TEST_CASE("max cycle mean examples") {
  CHECK(max_cycle_mean(Matrix{{ExtRational(Rational(7, 3))}}) ==
        ExtRational(Rational(7, 3)));
  Matrix two{{ni(), ExtRational(0)}, {ExtRational(1), ni()}};
  CHECK(max_cycle_mean(two) == ExtRational(Rational(1, 2)));
  Matrix tri{{ni(), ExtRational(5), ExtRational(1)},
             {ni(), ni(), ExtRational(2)},
             {ni(), ni(), ni()}};
  CHECK(max_cycle_mean(tri).is_neg_inf());
}

TEST_CASE("karp agrees with the closed-walk enumeration") {
  gen::Xoshiro256 rng(29);
  for (int it = 0; it < 300; ++it) {
    Matrix m(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        if (rng.chance(3, 5)) m.set(i, j, ExtRational(Rational(rng.int_in(-6, 6), rng.int_in(1, 3))));
    CHECK(max_cycle_mean(m) == oracle::walk_mcm(m));
  }
}

TEST_CASE("policy matrices") {
  GameGraph unit = build_game(Matrix{{ExtRational(4)}}, Matrix{{ExtRational(1)}}, Rational(7));
  Matrix ha = policy_matrix(unit, {{Side::A, 0}});
  CHECK(ha.at(0, 0) == ExtRational(7 - 4 + 1));
  Matrix hb = policy_matrix(unit, {{Side::B, 0}});
  CHECK(hb.at(0, 0) == ExtRational(-7 - 1 + 4));

  CHECK_THROWS_AS(policy_matrix(build_game(fixtures::sparse_a(), fixtures::sparse_b(), Rational(0)),
                                Policy{{Side::A, 0}, {Side::A, 0}, {Side::A, 0}, {Side::A, 0}}),
                  std::invalid_argument);  // a_14 = -inf
}

TEST_CASE("slope-family circulant policy reproduces the two linear pieces") {
  auto [a, b] = gen::gen_slope_family(6, 2);
  // The "choose (m,1) and (i,i+1)" selection: row i of the representing
  // matrix carries its finite entry at column i+1 (and row 6 at column 1).
  auto find_choice = [&](int i, int j) -> PolicyChoice {
    for (int k = 0; k < 6; ++k) {
      if (a.at(k, i).is_finite() && b.at(k, j).is_finite()) return {Side::A, k};
      if (b.at(k, i).is_finite() && a.at(k, j).is_finite()) return {Side::B, k};
    }
    FAIL("no admissible choice");
    return {Side::A, 0};
  };
  for (Rational lam : {Rational(3), Rational(-3)}) {
    GameGraph g = build_game(a, b, lam);
    Policy chain(6);
    for (int i = 0; i < 6; ++i) chain[i] = find_choice(i, (i + 1) % 6);
    // Cycle mean lambda * (m - 2l)/m = lambda / 3.
    CHECK(max_cycle_mean(policy_matrix(g, chain)) == ExtRational(lam / Rational(3)));
  }
}

TEST_CASE("spectral radius on the worked instances") {
  CHECK(spectral_radius(build_game(fixtures::rand_a(), fixtures::rand_b(), Rational(-2))) ==
        Rational(0));
  CHECK(spectral_radius(build_game(fixtures::rand_a(), fixtures::rand_b(), Rational(3))) <
        Rational(0));
  auto [a62, b62] = gen::gen_slope_family(6, 2);
  CHECK(spectral_radius(build_game(a62, b62, Rational(3))) == Rational(-1));
}

TEST_CASE("spectral radius equals the policy-enumeration oracle") {
  gen::Xoshiro256 rng(31);
  for (int it = 0; it < 120; ++it) {
    auto [a, b] = gen::gen_random({(int)rng.int_in(1, 3), (int)rng.int_in(1, 3), 2,
                                   Rational(7, 10), rng.next()});
    for (int t = 0; t < 3; ++t) {
      Rational lam = random_lambda(rng, 4, 3);
      GameGraph g = build_game(a, b, lam);
      Rational s = spectral_radius(g);
      CHECK(ExtRational(s) == oracle::brute_spectral_value(a, b, lam));
      CHECK(s <= Rational(0));
    }
  }
}

TEST_CASE("decide_at_least brackets the exact value") {
  gen::Xoshiro256 rng(37);
  for (int it = 0; it < 60; ++it) {
    auto [a, b] = gen::gen_random({(int)rng.int_in(1, 3), (int)rng.int_in(1, 3), 2,
                                   Rational(4, 5), rng.next()});
    Rational lam = random_lambda(rng, 3, 2);
    GameGraph g = build_game(a, b, lam);
    Rational s = spectral_radius(g);
    int64_t kappa = std::min(2 * a.rows(), a.cols());
    CHECK(decide_at_least(g, s));
    CHECK_FALSE(decide_at_least(g, s + Rational(1, kappa * kappa)));
    auto wit = decide_at_least_witness(g, s);
    REQUIRE(wit.has_value());
    CHECK_FALSE(wit->is_bottom());
    // mu + x <= h(x) on the witness, exactly.
    Vec hx = apply_h(g, *wit);
    for (int j = 0; j < wit->dim(); ++j) CHECK(add_lower(ExtRational(s), (*wit)[j]) <= hx[j]);
  }
}

TEST_CASE("decide_at_least worked examples") {
  GameGraph g = build_game(fixtures::rand_a(), fixtures::rand_b(), Rational(-2));
  CHECK(decide_at_least(g, Rational(0)));
  GameGraph id = build_game(Matrix::identity(2), Matrix::identity(2), Rational(0));
  CHECK(decide_at_least(id, Rational(0)));
  CHECK_FALSE(decide_at_least(id, Rational(1, 4)));
}

TEST_CASE("endpoint certificates on the interval-spectrum instance") {
  const Matrix a = fixtures::interval_a(), b = fixtures::interval_b();
  auto certified = [&](const Rational& lam, EndpointSide side) {
    auto r = endpoint_certificate(build_game(a, b, lam), side);
    return std::holds_alternative<Certified>(r);
  };
  CHECK(certified(Rational(1), EndpointSide::Left));
  CHECK_FALSE(certified(Rational(1), EndpointSide::Right));
  CHECK(certified(Rational(2), EndpointSide::Right));
  CHECK_FALSE(certified(Rational(2), EndpointSide::Left));
  CHECK(certified(Rational(11, 5), EndpointSide::Left));
  CHECK(certified(Rational(12, 5), EndpointSide::Right));
  CHECK(certified(Rational(3), EndpointSide::Left));
  CHECK(certified(Rational(3), EndpointSide::Right));
  CHECK_FALSE(certified(Rational(3, 2), EndpointSide::Left));
  CHECK_FALSE(certified(Rational(3, 2), EndpointSide::Right));

  // The certificate itself passes the critical-subgraph verifier and its
  // cycle satisfies the length and slope constraints.
  auto r = endpoint_certificate(build_game(a, b, Rational(1)), EndpointSide::Left);
  const auto& cert = std::get<Certified>(r);
  CHECK(verify_endpoint_policy(build_game(a, b, Rational(1)), cert.policy, EndpointSide::Left));
  CHECK(cert.cycle.cycle.size() == static_cast<size_t>(cert.cycle.length));
  CHECK(cert.cycle.length <= std::min(2 * a.rows(), a.cols()));
  CHECK(cert.cycle.slope > 0);
  CHECK(std::abs(cert.cycle.slope) <= cert.cycle.length);
  CHECK(cert.cycle.mean == Rational(0));

  // Outside the spectrum the precondition fails loudly.
  CHECK_THROWS_AS(endpoint_certificate(build_game(a, b, Rational(10)), EndpointSide::Left),
                  precondition_error);
}

TEST_CASE("policy hints do not change certified values") {
  gen::Xoshiro256 rng(43);
  for (int it = 0; it < 40; ++it) {
    auto [a, b] = gen::gen_random({2, 3, 3, Rational(4, 5), rng.next()});
    GameGraph g0 = build_game(a, b, Rational(rng.int_in(-2, 2)));
    Policy pol;
    Rational v0 = spectral_radius(g0, nullptr, nullptr, &pol);
    GameGraph g1 = build_game(a, b, g0.lambda + Rational(1, 7));
    Rational with_hint = spectral_radius(g1, nullptr, &pol);
    Rational without = spectral_radius(g1);
    CHECK(with_hint == without);
    CHECK(v0 <= Rational(0));
  }
}
