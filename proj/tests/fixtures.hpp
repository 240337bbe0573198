#pragma once

// Shared worked instances for the test suites.

#include "maxplus/matrix.hpp"

namespace fixtures {

using maxplus::ExtRational;
using maxplus::Matrix;
using maxplus::Rational;

inline ExtRational ni() { return ExtRational::neg_inf(); }

// The finite 3x4 pair with spectrum {-2}.
inline Matrix rand_a() {
  return Matrix{{ExtRational(-2), ExtRational(3), ExtRational(-3), ExtRational(-3)},
                {ExtRational(-4), ExtRational(1), ExtRational(2), ExtRational(-2)},
                {ExtRational(5), ExtRational(-1), ExtRational(5), ExtRational(-1)}};
}
inline Matrix rand_b() {
  return Matrix{{ExtRational(-4), ExtRational(5), ExtRational(-3), ExtRational(3)},
                {ExtRational(2), ExtRational(0), ExtRational(-1), ExtRational(4)},
                {ExtRational(0), ExtRational(2), ExtRational(-3), ExtRational(-1)}};
}

// The sparse variant with the same spectral function, used for the
// discrete-event worked example (power iteration to (-5, 0, -5, -1)).
inline Matrix sparse_a() {
  return Matrix{{ExtRational(-2), ExtRational(3), ni(), ni()},
                {ni(), ExtRational(1), ExtRational(2), ni()},
                {ExtRational(5), ni(), ExtRational(5), ExtRational(-1)}};
}
inline Matrix sparse_b() {
  return Matrix{{ni(), ExtRational(5), ExtRational(-3), ni()},
                {ExtRational(2), ni(), ni(), ExtRational(4)},
                {ExtRational(0), ExtRational(2), ni(), ni()}};
}

// The 2x7 interval-spectrum instance with spectrum [1,2] u [11/5,12/5] u {3},
// as displayed (the duplicate point-interval columns collapsed).
inline Matrix interval_a() {
  return Matrix{{ExtRational(1), ExtRational(Rational(3, 2)), ExtRational(2),
                 ExtRational(Rational(11, 5)), ExtRational(Rational(23, 10)),
                 ExtRational(Rational(12, 5)), ExtRational(3)},
                {ExtRational(2), ExtRational(3), ExtRational(4), ExtRational(Rational(22, 5)),
                 ExtRational(Rational(23, 5)), ExtRational(Rational(24, 5)), ExtRational(6)}};
}
inline Matrix interval_b() {
  return Matrix{{ExtRational(0), ExtRational(0), ExtRational(0), ExtRational(0), ExtRational(0),
                 ExtRational(0), ExtRational(0)},
                {ExtRational(1), ExtRational(2), ExtRational(Rational(3, 2)),
                 ExtRational(Rational(11, 5)), ExtRational(Rational(12, 5)),
                 ExtRational(Rational(23, 10)), ExtRational(3)}};
}

}  // namespace fixtures
