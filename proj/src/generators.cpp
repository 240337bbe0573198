#include "maxplus/generators.hpp"

#include <stdexcept>

namespace maxplus::gen {

std::pair<Matrix, Matrix> gen_slope_family(int m, int l) {
  if (m < 1 || l < 0 || 2 * l > m) throw std::invalid_argument("gen_slope_family: need 0 <= 2l <= m");
  Matrix a(m, m), b(m, m);
  auto one = ExtRational(0);
  // a_ij = 0 for i=1,j=m; or i=j+1 with 2l < i <= m; or i=j=2k, k <= l;
  // or i=2k+1, j=2k with k < l (1-based indices).
  a.set(0, m - 1, one);
  for (int i = 2 * l + 1; i <= m; ++i)
    if (i >= 2) a.set(i - 1, i - 2, one);
  for (int k = 1; k <= l; ++k) a.set(2 * k - 1, 2 * k - 1, one);
  for (int k = 1; k < l; ++k) a.set(2 * k, 2 * k - 1, one);
  // b_ij = 0 for i=j with 2l < i <= m; or i=j=2k-1, k <= l; or i=2k, j=2k-1, k <= l.
  for (int i = 2 * l + 1; i <= m; ++i) b.set(i - 1, i - 1, one);
  for (int k = 1; k <= l; ++k) b.set(2 * k - 2, 2 * k - 2, one);
  for (int k = 1; k <= l; ++k) b.set(2 * k - 1, 2 * k - 2, one);
  return {a, b};
}

std::pair<Matrix, Matrix> gen_interval_spectrum(
    const std::vector<std::pair<Rational, Rational>>& intervals) {
  if (intervals.empty()) throw std::invalid_argument("gen_interval_spectrum: no intervals");
  for (size_t i = 0; i < intervals.size(); ++i) {
    if (intervals[i].second < intervals[i].first)
      throw std::invalid_argument("gen_interval_spectrum: interval with hi < lo");
    if (i + 1 < intervals.size() && !(intervals[i].second < intervals[i + 1].first))
      throw std::invalid_argument("gen_interval_spectrum: intervals must interleave strictly");
  }
  const int t = static_cast<int>(intervals.size());
  Matrix a(2, 3 * t), b(2, 3 * t);
  for (int i = 0; i < t; ++i) {
    Rational ai = intervals[i].first, ci = intervals[i].second;
    Rational bi = (ai + ci) / Rational(2);
    const Rational cols[3] = {ai, bi, ci};
    for (int k = 0; k < 3; ++k) {
      a.set(0, 3 * i + k, ExtRational(cols[k]));
      a.set(1, 3 * i + k, ExtRational(cols[k] * Rational(2)));
      b.set(0, 3 * i + k, ExtRational(0));
    }
    // Second row of B swaps the middle pair: a_i, c_i, b_i.
    b.set(1, 3 * i + 0, ExtRational(ai));
    b.set(1, 3 * i + 1, ExtRational(ci));
    b.set(1, 3 * i + 2, ExtRational(bi));
  }
  return {a, b};
}

namespace {
uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

Xoshiro256::Xoshiro256(uint64_t seed) {
  uint64_t sm = seed;
  for (auto& s : s_) s = splitmix64(sm);
}

uint64_t Xoshiro256::next() {
  uint64_t result = rotl(s_[1] * 5, 7) * 9;
  uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

uint64_t Xoshiro256::below(uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("below(0)");
  uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % bound;
}

int64_t Xoshiro256::int_in(int64_t lo, int64_t hi) {
  return lo + static_cast<int64_t>(below(static_cast<uint64_t>(hi - lo + 1)));
}

bool Xoshiro256::chance(uint64_t num, uint64_t den) { return below(den) < num; }

std::pair<Matrix, Matrix> gen_random(const RandomSpec& spec) {
  if (spec.m < 1 || spec.n < 1) throw std::invalid_argument("gen_random: bad shape");
  if (spec.max_abs < 0) throw std::invalid_argument("gen_random: negative entry bound");
  if (!(Rational(0) < spec.density) || Rational(1) < spec.density)
    throw std::invalid_argument("gen_random: density must be in (0, 1]");
  Xoshiro256 rng(spec.seed);
  uint64_t num = static_cast<uint64_t>(spec.density.num());
  uint64_t den = static_cast<uint64_t>(spec.density.den());

  for (int attempt = 0; attempt < 4096; ++attempt) {
    Matrix a(spec.m, spec.n), b(spec.m, spec.n);
    for (Matrix* mat : {&a, &b})
      for (int i = 0; i < spec.m; ++i)
        for (int j = 0; j < spec.n; ++j)
          if (rng.chance(num, den))
            mat->set(i, j, ExtRational(rng.int_in(-spec.max_abs, spec.max_abs)));
    bool ok = !a.has_bottom_row() && !b.has_bottom_row();
    for (int j = 0; j < spec.n && ok; ++j)
      if (a.col_is_bottom(j) && b.col_is_bottom(j)) ok = false;
    if (ok) return {a, b};
  }
  throw std::runtime_error("gen_random: density cannot avoid -inf rows");
}

}  // namespace maxplus::gen
