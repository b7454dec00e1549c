#pragma once

#include "conekit/matrix.hpp"
#include "conekit/random.hpp"

namespace testing_util {

using namespace conekit;

inline double dist(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

// Equality of vectors up to a global phase.
inline double phase_dist(const Matrix& a, const Matrix& b) {
  const cplx overlap = (b.adjoint() * a).trace();
  const cplx phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : 1.0;
  return (a - phase * b).norm();
}

// Random Hermitian with every eigenvalue at least `gap` away from zero.
inline Matrix gapped_hermitian(int d, double gap, Rng& rng) {
  Matrix u = random_unitary(d, rng);
  RealVector ev(d);
  for (int i = 0; i < d; ++i) {
    double v = 2.0 * rng.uniform() - 1.0;
    ev(i) = v >= 0 ? v + gap : v - gap;
  }
  return u * ev.cast<cplx>().asDiagonal() * u.adjoint();
}

}  // namespace testing_util
