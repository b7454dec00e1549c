#include "conekit/random.hpp"

#include <cmath>

namespace conekit {

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t split_seed(std::uint64_t base, std::uint64_t index) {
  return mix64(mix64(base) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

Matrix ginibre(int rows, int cols, Rng& rng) {
  Matrix g(rows, cols);
  const double s = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      double re = rng.normal();
      double im = rng.normal();
      g(i, j) = cplx(re * s, im * s);
    }
  return g;
}

Vector random_unit_vector(int n, Rng& rng) {
  Vector v = ginibre(n, 1, rng).col(0);
  return v / v.norm();
}

Matrix random_hermitian(int n, Rng& rng) {
  Matrix g = ginibre(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

Matrix random_unitary(int n, Rng& rng) {
  Matrix g = ginibre(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < n; ++i) {
    cplx d = r(i, i);
    double a = std::abs(d);
    if (a > 0) q.col(i) *= d / a;
  }
  return q;
}

Matrix random_density(int n, int rank, Rng& rng) {
  Matrix g = ginibre(n, rank, rng);
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return hermitian_part(rho);
}

}  // namespace conekit
