#pragma once

// Analytic instance families and reproducible random pencils.

#include <cstdint>
#include <utility>
#include <vector>

#include "maxplus/matrix.hpp"

namespace maxplus::gen {

// The m x m {0, -inf} pair whose spectral function is the two-piece
// -|lambda|(m - 2l)/m. Requires 0 <= 2l <= m.
std::pair<Matrix, Matrix> gen_slope_family(int m, int l);

// The 2 x 3t pair whose spectrum is exactly the union of the given closed
// intervals; requires a_i <= c_i < a_{i+1}.
std::pair<Matrix, Matrix> gen_interval_spectrum(
    const std::vector<std::pair<Rational, Rational>>& intervals);

// xoshiro256** seeded through splitmix64; fixed algorithm so that fixtures
// regenerate identically everywhere.
class Xoshiro256 {
 public:
  explicit Xoshiro256(uint64_t seed);
  uint64_t next();
  // Uniform in [0, bound) by rejection.
  uint64_t below(uint64_t bound);
  int64_t int_in(int64_t lo, int64_t hi);
  // True with probability num/den.
  bool chance(uint64_t num, uint64_t den);

 private:
  uint64_t s_[4];
};

inline constexpr const char* kPrngName = "xoshiro256** (splitmix64-seeded)";

struct RandomSpec {
  int m = 1, n = 1;
  int64_t max_abs = 1;          // entries drawn from [-max_abs, max_abs]
  Rational density{1};          // probability an entry is finite
  uint64_t seed = 0;
};

// Integer entries with independent -inf masking, resampled until the pair
// has no -inf rows and no common -inf columns (so preprocess_rows is a
// no-op on every generated pair). Throws when the density cannot avoid
// -inf rows after many attempts.
std::pair<Matrix, Matrix> gen_random(const RandomSpec& spec);

}  // namespace maxplus::gen
