#pragma once

// Seeded random ensembles. Every random object in the library is drawn from
// an explicitly seeded Rng; nothing reads wall-clock entropy.

#include <cstdint>
#include <random>

#include "conekit/matrix.hpp"

namespace conekit {

/// Default seed used by the CLI and by suites when none is given.
inline constexpr std::uint64_t kDefaultSeed = 20091209;

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Seed for sub-stream `index` of `base`. Trials and restarts derive their
/// generators this way, so results do not depend on scheduling.
std::uint64_t split_seed(std::uint64_t base, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix64(seed)) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  /// Uniform integer in [lo, hi].
  int uniform_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Complex Ginibre matrix, entries (N(0,1) + i N(0,1)) / sqrt(2).
Matrix ginibre(int rows, int cols, Rng& rng);
Vector random_unit_vector(int n, Rng& rng);
/// GUE-like: (G + G^*) / 2 for Ginibre G.
Matrix random_hermitian(int n, Rng& rng);
/// Haar unitary via QR of a Ginibre matrix with phase correction.
Matrix random_unitary(int n, Rng& rng);
/// Induced-measure density matrix: G G^* / Tr(G G^*) with G n x rank.
Matrix random_density(int n, int rank, Rng& rng);

}  // namespace conekit
