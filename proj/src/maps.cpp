#include "conekit/maps.hpp"

#include <cmath>
#include <sstream>

#include "conekit/random.hpp"

namespace conekit {

QuantumMap::QuantumMap(int n, const Matrix& choi) : n_(n) {
  require_bipartite(choi, n, "QuantumMap");
  if (!is_hermitian(choi))
    throw NotHermitianError(
        "QuantumMap: Choi matrix is not Hermitian (only Hermiticity-"
        "preserving maps are representable)");
  choi_ = hermitian_part(choi);
}

bool looks_like_state(const Matrix& h) {
  if (!is_hermitian(h)) return false;
  if (std::abs(h.trace() - cplx(1.0)) > 1e-9) return false;
  return is_psd(h).is_in();
}

StateFunctional::StateFunctional(int n, const Matrix& density, bool is_state)
    : n_(n), is_state_(is_state) {
  require_bipartite(density, n, "StateFunctional");
  if (!is_hermitian(density))
    throw NotHermitianError("StateFunctional: density is not Hermitian");
  density_ = hermitian_part(density);
  if (is_state && !looks_like_state(density_))
    throw std::invalid_argument(
        "StateFunctional: flagged as a state but density is not PSD with "
        "unit trace");
}

QuantumMap map_from_action(int n, const Action& action) {
  if (n <= 0) throw DimensionError("map_from_action: n must be positive");
  const int d = n * n;
  Matrix choi(d, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Matrix img = action(matrix_unit(n, i, j));
      if (img.rows() != n || img.cols() != n) {
        std::ostringstream os;
        os << "map_from_action: action returned " << img.rows() << "x"
           << img.cols() << ", expected " << n << "x" << n;
        throw DimensionError(os.str());
      }
      choi.block(i * n, j * n, n, n) = img;
    }

  // Linearity spot check: action(s a + b) against s action(a) + action(b).
  Rng rng(0x11ea41);
  for (int trial = 0; trial < 3; ++trial) {
    Matrix a = ginibre(n, n, rng);
    Matrix b = ginibre(n, n, rng);
    cplx s(rng.normal(), rng.normal());
    Matrix lhs = action(s * a + b);
    Matrix rhs = s * action(a) + action(b);
    const double scale = std::max(1.0, rhs.norm());
    if ((lhs - rhs).norm() > 1e-8 * scale)
      throw NonlinearActionError("map_from_action: action is not linear");
  }
  return QuantumMap(n, choi);
}

Matrix apply(const QuantumMap& phi, const Matrix& x) {
  const int n = phi.n();
  if (x.rows() != n || x.cols() != n)
    throw DimensionError("apply: argument has wrong dimension");
  Matrix out = Matrix::Zero(n, n);
  const Matrix& c = phi.choi();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (x(i, j) != cplx(0.0)) out += x(i, j) * c.block(i * n, j * n, n, n);
  return out;
}

Matrix apply_second(const QuantumMap& phi, const Matrix& x) {
  const int n = phi.n();
  require_bipartite(x, n, "apply_second");
  Matrix out(x.rows(), x.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.block(i * n, j * n, n, n) = conekit::apply(phi, x.block(i * n, j * n, n, n));
  return out;
}

QuantumMap ad_v(const Matrix& v) {
  require_square(v, "ad_v");
  const int n = int(v.rows());
  // C_{AdV} = |w><w| with w_(i,k) = conj(v_ik).
  Vector w(n * n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) w(i * n + k) = std::conj(v(i, k));
  return QuantumMap(n, w * w.adjoint());
}

QuantumMap adjoint(const QuantumMap& phi) {
  return QuantumMap(phi.n(), conj_J(phi.choi(), phi.n()));
}

QuantumMap t_conjugate(const QuantumMap& phi) {
  return QuantumMap(phi.n(), phi.choi().transpose());
}

QuantumMap compose(const QuantumMap& alpha, const QuantumMap& beta) {
  if (alpha.n() != beta.n())
    throw DimensionError("compose: maps act on different dimensions");
  const int n = alpha.n();
  // Block (i, j) of C_{alpha o beta} is alpha(beta(e_ij)) = alpha(block_ij(C_beta)).
  Matrix choi(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      choi.block(i * n, j * n, n, n) =
          conekit::apply(alpha, beta.choi().block(i * n, j * n, n, n));
  return QuantumMap(n, choi);
}

QuantumMap combine(const std::vector<QuantumMap>& maps,
                   const std::vector<double>& weights) {
  if (maps.empty() || maps.size() != weights.size())
    throw std::invalid_argument("combine: need matching nonempty lists");
  const int n = maps.front().n();
  Matrix c = Matrix::Zero(n * n, n * n);
  for (std::size_t k = 0; k < maps.size(); ++k) {
    if (maps[k].n() != n) throw DimensionError("combine: dimension mismatch");
    c += weights[k] * maps[k].choi();
  }
  return QuantumMap(n, c);
}

std::vector<Matrix> kraus(const QuantumMap& phi, const Tolerance& tol) {
  const int n = phi.n();
  HermitianEigen eig = hermitian_eigen(phi.choi());
  const double cutoff = -tol.abs_eps * std::max(1.0, phi.choi().norm());
  if (eig.values(0) < cutoff)
    throw NotCompletelyPositiveError("kraus: Choi matrix is not PSD",
                                     eig.vectors.col(0), eig.values(0));
  const double lmax = eig.values(eig.values.size() - 1);
  std::vector<Matrix> ops;
  for (Eigen::Index k = eig.values.size() - 1; k >= 0; --k) {
    const double lam = eig.values(k);
    if (lam <= 1e-10 * lmax || lam <= 0.0) break;
    Matrix v(n, n);
    const double s = std::sqrt(lam);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        v(i, j) = s * std::conj(eig.vectors(i * n + j, k));
    ops.push_back(std::move(v));
  }
  return ops;
}

StateFunctional functional_of_map(const QuantumMap& phi) {
  return StateFunctional(phi.n(), phi.choi().transpose());
}

QuantumMap map_of_functional(const StateFunctional& rho) {
  return QuantumMap(rho.n(), rho.density().transpose());
}

Matrix pi_contract(const Matrix& x, int n) {
  require_bipartite(x, n, "pi_contract");
  Matrix out = Matrix::Zero(n, n);
  // (X_ij^T e_ij)_{pq} = (X_ij)_{ip} delta_{jq}
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int p = 0; p < n; ++p) out(p, j) += x(i * n + i, j * n + p);
  return out;
}

QuantumMap identity_map(int n) {
  Vector w = max_entangled(n) * std::sqrt(double(n));
  return QuantumMap(n, w * w.adjoint());
}

QuantumMap transpose_map(int n) { return QuantumMap(n, swap_operator(n)); }

QuantumMap depolarizing_map(int n) {
  return QuantumMap(n, identity(n * n) / double(n));
}

QuantumMap reduction_map(int n) {
  return QuantumMap(n, identity(n * n) - identity_map(n).choi());
}

QuantumMap reduction_witness(int n) {
  return QuantumMap(n, identity(n * n) / double(n) -
                           projector(max_entangled(n)));
}

QuantumMap choi_map3(double a, double b, double c) {
  return map_from_action(3, [=](const Matrix& x) {
    Matrix d = Matrix::Zero(3, 3);
    d(0, 0) = a * x(0, 0) + b * x(1, 1) + c * x(2, 2);
    d(1, 1) = c * x(0, 0) + a * x(1, 1) + b * x(2, 2);
    d(2, 2) = b * x(0, 0) + c * x(1, 1) + a * x(2, 2);
    return Matrix(d - x);
  });
}

double choi_distance(const QuantumMap& a, const QuantumMap& b) {
  if (a.n() != b.n()) throw DimensionError("choi_distance: dimension mismatch");
  return (a.choi() - b.choi()).norm();
}

}  // namespace conekit
