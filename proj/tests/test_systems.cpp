#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "maxplus/generators.hpp"
#include "maxplus/systems.hpp"
#include "oracle.hpp"

using namespace maxplus;
using namespace maxplus::systems;
using fixtures::ni;

namespace {

Vec vec(std::initializer_list<int64_t> xs) {
  std::vector<ExtRational> e;
  for (auto x : xs) e.emplace_back(x);
  return Vec(std::move(e));
}

// Stacks [A; B] and [I; I], the separated encoding of Ax = Bx.
std::pair<Matrix, Matrix> stack_cd(const Matrix& a, const Matrix& b) {
  Matrix c(2 * a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      c.set(i, j, a.at(i, j));
      c.set(a.rows() + i, j, b.at(i, j));
    }
  Matrix d(2 * a.rows(), a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    d.set(i, i, ExtRational(0));
    d.set(a.rows() + i, i, ExtRational(0));
  }
  return {c, d};
}

}  // namespace

TEST_CASE("alternating method worked examples") {
  // A = B: the start vector already solves the system, zero sweeps needed.
  Matrix a = fixtures::rand_a();
  auto same = alternating_separated(a, a, Vec::zeros(4));
  CHECK(same.status == TwoSidedSolution::Status::Solved);
  CHECK(same.x == Vec::zeros(4));
  CHECK(same.iterations == 0);
  CHECK(matvec(a, same.x) == matvec(a, same.y));

  // Scalar system 0 + x = 1 + y.
  auto scalar = alternating_separated(Matrix{{ExtRational(0)}}, Matrix{{ExtRational(1)}},
                                      Vec::zeros(1));
  REQUIRE(scalar.status == TwoSidedSolution::Status::Solved);
  CHECK(scalar.y[0] == ExtRational(scalar.x[0].value() - Rational(1)));

  // Swap structure: permutation pair solved immediately from zero.
  Matrix pa{{ExtRational(0), ni()}, {ni(), ExtRational(0)}};
  Matrix pb{{ni(), ExtRational(0)}, {ExtRational(0), ni()}};
  auto swap = alternating_separated(pa, pb, Vec::zeros(2));
  REQUIRE(swap.status == TwoSidedSolution::Status::Solved);
  CHECK(swap.x == vec({0, 0}));
  CHECK(swap.y == vec({0, 0}));
  CHECK(matvec(pa, swap.x) == matvec(pb, swap.y));
}

TEST_CASE("alternating method detects unsolvable systems") {
  // x = y and x = 5 + y have no common solution.
  Matrix a{{ExtRational(0)}, {ExtRational(0)}};
  Matrix b{{ExtRational(0)}, {ExtRational(5)}};
  auto res = alternating_separated(a, b, Vec::zeros(1));
  CHECK(res.status == TwoSidedSolution::Status::NoFiniteSolution);
}

TEST_CASE("alternating iterates decrease once they start below the seed") {
  gen::Xoshiro256 rng(47);
  for (int it = 0; it < 50; ++it) {
    auto [a, b] = gen::gen_random({3, 2, 4, Rational(1), rng.next()});
    Vec x = Vec::zeros(2);
    auto step = [&](const Vec& v) {
      return residual_apply(a, matvec(b, residual_apply(b, ResVec(matvec(a, v))))).to_vec();
    };
    Vec x1 = step(x);
    if (!leq(x1, x)) continue;
    Vec x2 = step(x1);
    CHECK(leq(x2, x1));  // isotone map keeps the descent going
  }
}

TEST_CASE("alternating solutions verify exactly on random solvable systems") {
  gen::Xoshiro256 rng(53);
  int solved = 0;
  for (int it = 0; it < 80; ++it) {
    auto [a, b] = gen::gen_random({3, 3, 3, Rational(1), rng.next()});
    auto res = alternating_separated(a, b, Vec::zeros(3));
    if (res.status != TwoSidedSolution::Status::Solved) continue;
    ++solved;
    Vec lhs = matvec(a, res.x), rhs = matvec(b, res.y);
    CHECK(lhs == rhs);
    CHECK_FALSE(lhs.is_bottom());
  }
  CHECK(solved > 0);
}

TEST_CASE("minmax function evaluation") {
  Matrix a = fixtures::rand_a();
  // With A = B, h(x) = A#Ax >= x and f(x) = x.
  gen::Xoshiro256 rng(59);
  for (int it = 0; it < 30; ++it) {
    std::vector<ExtRational> xe(4);
    for (auto& v : xe) v = ExtRational(rng.int_in(-5, 5));
    Vec x(std::move(xe));
    CHECK(leq(x, minmax_h(a, a, x)));
    CHECK(minmax_f(a, a, x) == x);
  }

  // Folding lambda = -2 into B turns the worked fixed point into one of f.
  Matrix bshift = fixtures::sparse_b().shifted_by(Rational(-2));
  Vec fp = vec({-5, 0, -5, -1});
  CHECK(minmax_f(fixtures::sparse_a(), bshift, fp) == fp);
  CHECK(matvec(fixtures::sparse_a(), fp) == matvec(bshift, fp));
}

TEST_CASE("fixed points of f solve the two-sided system") {
  gen::Xoshiro256 rng(61);
  for (int it = 0; it < 200; ++it) {
    auto [a, b] = gen::gen_random({2, 2, 3, Rational(4, 5), rng.next()});
    std::vector<ExtRational> xe(2);
    for (auto& v : xe) v = ExtRational(rng.int_in(-4, 4));
    Vec x(std::move(xe));
    Vec fx = minmax_f(a, b, x);
    CHECK(leq(fx, x));
    bool fixed = fx == x;
    CHECK(fixed == (matvec(a, x) == matvec(b, x)));
  }
}

TEST_CASE("r(f) = r(g) = r(h) by policy enumeration") {
  gen::Xoshiro256 rng(67);
  for (int it = 0; it < 25; ++it) {
    auto [a, b] = gen::gen_random({2, 2, 2, Rational(4, 5), rng.next()});
    ExtRational rf = oracle::brute_minmax_radius(a, b, oracle::MinMaxKind::F);
    ExtRational rg = oracle::brute_minmax_radius(a, b, oracle::MinMaxKind::G);
    ExtRational rh = oracle::brute_minmax_radius(a, b, oracle::MinMaxKind::H);
    CHECK(rf == rg);
    CHECK(rg == rh);
    // And the game oracle agrees through min_cheb_distance = -r(h).
    ExtRational d = min_cheb_distance(a, b);
    if (rh.is_neg_inf())
      CHECK(d.is_pos_inf());
    else
      CHECK(d == -rh);
  }
}

TEST_CASE("cone hilbert distance examples") {
  Matrix a = fixtures::rand_a();
  CHECK(cone_hilbert_distance(a, a) == ExtRational(0));

  Matrix r1{{ExtRational(0)}, {ExtRational(0)}};
  Matrix r2{{ExtRational(0)}, {ExtRational(2)}};
  CHECK(cone_hilbert_distance(r1, r2) == ExtRational(2));

  Matrix d1{{ExtRational(0)}, {ni()}};
  Matrix d2{{ni()}, {ExtRational(0)}};
  CHECK(cone_hilbert_distance(d1, d2).is_pos_inf());
}

TEST_CASE("single-ray cones reduce to the vector hilbert distance") {
  gen::Xoshiro256 rng(71);
  for (int it = 0; it < 60; ++it) {
    Matrix u(3, 1), v(3, 1);
    for (int i = 0; i < 3; ++i) {
      u.set(i, 0, ExtRational(rng.int_in(-5, 5)));
      v.set(i, 0, ExtRational(rng.int_in(-5, 5)));
    }
    CHECK(cone_hilbert_distance(u, v) == hilbert_distance(u.col(0), v.col(0)));
  }
}

TEST_CASE("min chebyshev distance examples") {
  Matrix a = fixtures::rand_a(), b = fixtures::rand_b();
  CHECK(min_cheb_distance(a, a) == ExtRational(0));
  CHECK(min_cheb_distance(a, b.shifted_by(Rational(-2))) == ExtRational(0));
  CHECK(min_cheb_distance(Matrix{{ExtRational(0)}}, Matrix{{ExtRational(3)}}) == ExtRational(3));
}

TEST_CASE("stacked projector distance equals the chebyshev minimum") {
  // r(P_C P_D) = r(h): two very different oracle routes to -min d_inf(Ax, Bx).
  gen::Xoshiro256 rng(73);
  for (int it = 0; it < 40; ++it) {
    auto [a, b] = gen::gen_random({2, 3, 3, Rational(9, 10), rng.next()});
    auto [c, d] = stack_cd(a, b);
    if (c.has_bottom_col() || d.has_bottom_col()) continue;
    CHECK(cone_hilbert_distance(c, d) == min_cheb_distance(a, b));
  }
}

TEST_CASE("degenerate all--inf solutions are classified separately") {
  Matrix a{{ni(), ExtRational(1)}, {ni(), ExtRational(0)}};
  Matrix b{{ExtRational(0), ni()}, {ExtRational(2), ni()}};
  auto d = classify_degenerate(a, b);
  CHECK(d.x_support == std::vector<int>{0});
  CHECK(d.y_support == std::vector<int>{1});
  CHECK(d.exists_separated());
}
