#pragma once

// Block positivity: <xi (x) eta| X |xi (x) eta> >= 0 for every product
// vector. Deciding this is NP-hard in general, so the oracle is a
// semidecision: Out is certified by a product vector, In is heuristic.

#include <cstdint>

#include "conekit/matrix.hpp"

namespace conekit {

enum class Execution { Serial, Parallel };

struct ProductMinimum {
  double value = 0.0;
  Vector xi;
  Vector eta;
  int restart = -1;
  /// Number of restarts whose local minimum lies within 1e-7 of `value`.
  int agreeing = 0;
};

/// <xi (x) eta| X |xi (x) eta> (real part; X Hermitian).
double product_expectation(const Matrix& x, int n, const Vector& xi,
                           const Vector& eta);

/// Product vector xi (x) eta as an n^2 x 1 matrix.
Matrix product_vector(const Vector& xi, const Vector& eta);

/// Alternating exact minimization from a given start: fix xi, take eta as
/// the min eigenvector of sum_ij conj(xi_i) xi_j X_ij, then the reverse.
/// Stops when one sweep decreases the value by less than 1e-12 or after
/// 500 sweeps.
ProductMinimum local_product_minimum(const Matrix& x, int n, Vector xi,
                                     Vector eta);

/// Multi-start minimization over unit product vectors. Restart r starts from
/// random unit vectors drawn from split_seed(seed, r); the reduction picks the
/// smallest value with ties broken by restart index, so Serial and Parallel
/// return identical results.
ProductMinimum min_product_value(const Matrix& x, int n, int restarts,
                                 std::uint64_t seed,
                                 Execution exec = Execution::Parallel);

/// The restart budget at which In may be declared: 50 n^2.
int confident_restarts(int n);

/// PSD inputs are In immediately. Otherwise Out when the best product value
/// is below -abs_eps (certificate: the product vector); In when
/// restarts >= 50 n^2 and either the best value exceeds 1e-7 or it is at
/// least -abs_eps and reproduced by two or more restarts; Unknown otherwise.
Verdict is_block_positive(const Matrix& x, int n, int restarts,
                          const Tolerance& tol, std::uint64_t seed,
                          Execution exec = Execution::Parallel);

}  // namespace conekit
