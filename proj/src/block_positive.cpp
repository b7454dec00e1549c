#include "conekit/block_positive.hpp"

#include <limits>
#include <vector>

#include "conekit/random.hpp"

namespace conekit {

namespace {

// sum_ij conj(xi_i) xi_j X_ij : the operator seen by eta.
Matrix contract_first(const Matrix& x, int n, const Vector& xi) {
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a += std::conj(xi(i)) * xi(j) * x.block(i * n, j * n, n, n);
  return a;
}

// (eta^* X_ij eta)_ij : the operator seen by xi.
Matrix contract_second(const Matrix& x, int n, const Vector& eta) {
  Matrix b(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      b(i, j) = eta.dot(x.block(i * n, j * n, n, n) * eta);
  return b;
}

Vector min_eigenvector(const Matrix& a, double& value) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(a));
  value = es.eigenvalues()(0);
  return es.eigenvectors().col(0);
}

}  // namespace

double product_expectation(const Matrix& x, int n, const Vector& xi,
                           const Vector& eta) {
  return eta.dot(contract_first(x, n, xi) * eta).real();
}

Matrix product_vector(const Vector& xi, const Vector& eta) {
  return tensor(xi, eta);
}

ProductMinimum local_product_minimum(const Matrix& x, int n, Vector xi,
                                     Vector eta) {
  double value = product_expectation(x, n, xi, eta);
  for (int sweep = 0; sweep < 500; ++sweep) {
    double v1 = 0.0;
    eta = min_eigenvector(contract_first(x, n, xi), v1);
    double v2 = 0.0;
    xi = min_eigenvector(contract_second(x, n, eta), v2);
    const double decrease = value - v2;
    value = v2;
    if (decrease < 1e-12) break;
  }
  ProductMinimum out;
  out.value = product_expectation(x, n, xi, eta);
  out.xi = std::move(xi);
  out.eta = std::move(eta);
  return out;
}

int confident_restarts(int n) { return 50 * n * n; }

ProductMinimum min_product_value(const Matrix& x, int n, int restarts,
                                 std::uint64_t seed, Execution exec) {
  require_bipartite(x, n, "min_product_value");
  if (restarts < 1) restarts = 1;
  std::vector<ProductMinimum> runs(restarts);

  auto run_one = [&](int r) {
    Rng rng(split_seed(seed, std::uint64_t(r)));
    Vector xi = random_unit_vector(n, rng);
    Vector eta = random_unit_vector(n, rng);
    runs[r] = local_product_minimum(x, n, std::move(xi), std::move(eta));
    runs[r].restart = r;
  };

  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (int r = 0; r < restarts; ++r) run_one(r);
  } else {
    for (int r = 0; r < restarts; ++r) run_one(r);
  }

  int best = 0;
  for (int r = 1; r < restarts; ++r)
    if (runs[r].value < runs[best].value) best = r;
  ProductMinimum out = runs[best];
  out.agreeing = 0;
  for (const auto& run : runs)
    if (run.value <= out.value + 1e-7) ++out.agreeing;
  return out;
}

Verdict is_block_positive(const Matrix& x, int n, int restarts,
                          const Tolerance& tol, std::uint64_t seed,
                          Execution exec) {
  require_bipartite(x, n, "is_block_positive");
  require_hermitian(x, "is_block_positive");

  Verdict psd = is_psd(x, tol);
  if (psd.is_in()) return Verdict::in(psd.margin);

  ProductMinimum best = min_product_value(x, n, restarts, seed, exec);
  Matrix witness = product_vector(best.xi, best.eta);
  if (best.value < -tol.abs_eps) return Verdict::out(witness, best.value);

  if (restarts >= confident_restarts(n)) {
    if (best.value > 1e-7) return Verdict::in(best.value);
    if (best.agreeing >= 2) return Verdict::in(best.value);
  }
  return Verdict::unknown(best.value, witness);
}

}  // namespace conekit
