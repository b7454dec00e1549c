#pragma once

#include "conekit/block_positive.hpp"
#include "conekit/matrix.hpp"

namespace conekit {

/// Knobs shared by the semidecision oracles.
struct OracleConfig {
  Tolerance tol;
  /// Block-positivity restarts; 0 means 50 n^2.
  int restarts = 0;
  /// Douglas-Rachford splitting for DEC.
  int dec_max_iter = 5000;
  double dec_residual = 1e-7;
  /// Column generation for separable decompositions.
  int sep_max_columns = 300;
  double sep_residual = 1e-8;
  /// Attempt a decomposition even when PPT already decides separability.
  bool sep_decompose_small = true;
  /// Sampled positive maps tried as entanglement witnesses above 2 (x) 3.
  int witness_trials = 200;
  Execution exec = Execution::Parallel;

  int restarts_for(int n) const {
    return restarts > 0 ? restarts : confident_restarts(n);
  }
};

}  // namespace conekit
