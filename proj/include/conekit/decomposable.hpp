#pragma once

#include "conekit/matrix.hpp"

namespace conekit {

/// C ≈ A + B^Γ with A, B PSD.
struct DecSplit {
  Matrix a;
  Matrix b;
  double residual = 0.0;  // ||C - A - B^Γ||_F
  int iterations = 0;
  bool converged = false;
};

/// Douglas-Rachford on {B >= 0} and {B : C - B^Γ >= 0}, starting from
/// B = 0. Every fifth step the shadow point is turned into a split
/// B = proj_PSD(.), A = proj_PSD(C - B^Γ); stops once ||C - A - B^Γ|| is
/// below `target` or after `max_iter` steps.
DecSplit decompose_dec(const Matrix& c, int n, int max_iter = 5000,
                       double target = 1e-7);

}  // namespace conekit
