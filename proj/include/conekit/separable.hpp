#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "conekit/config.hpp"
#include "conekit/matrix.hpp"

namespace conekit {

/// density ≈ sum_k w_k (a_k (x) b_k) with rank-one PSD factors.
struct SeparableDecomposition {
  std::vector<double> weights;
  std::vector<std::pair<Matrix, Matrix>> factors;

  Matrix reconstruct() const;
};

struct SeparabilityResult {
  Verdict verdict;
  std::optional<SeparableDecomposition> decomposition;
};

/// Nonnegative least squares min ||A w - b||, w >= 0 (Lawson-Hanson).
RealVector nnls(const Eigen::MatrixXd& a, const RealVector& b,
                int max_iter = 0);

/// Column generation: greedily add the product projector best aligned with
/// the residual and refit all weights by NNLS. For full-rank h the fit
/// targets h - delta Q and the residual is absorbed exactly by a fixed frame
/// of product projectors. For singular h only product vectors in range(h)
/// can appear; they are found as zeros of the kernel projector, refit by
/// NNLS and polished by Levenberg-Marquardt until the residual is below
/// cfg.sep_residual. Ranges holding a continuum of product vectors (rank
/// 6 to 8 on 3 (x) 3) do not always get there. Empty on failure.
std::optional<SeparableDecomposition> find_separable_decomposition(
    const Matrix& h, int n, const OracleConfig& cfg, std::uint64_t seed);

/// Separability of a density matrix (PSD, unit trace) on C^n (x) C^n.
///   NPT                        -> Out (negative eigenvector of h^Γ).
///   n * n <= 6                 -> PPT is exact, In.
///   a sampled positive map alpha with (iota (x) alpha)(h) not PSD -> Out.
///   decomposition found        -> In with the decomposition.
///   otherwise                  -> Unknown.
SeparabilityResult separability(const Matrix& h, int n,
                                const OracleConfig& cfg, std::uint64_t seed);

}  // namespace conekit
