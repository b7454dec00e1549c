#include "conekit/matrix.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

namespace conekit {

Tolerance Tolerance::from_env() {
  Tolerance tol;
  if (const char* env = std::getenv("CONEKIT_TOL")) {
    char* end = nullptr;
    double v = std::strtod(env, &end);
    if (end != env && *end == '\0' && std::isfinite(v) && v >= 0.0)
      tol.abs_eps = v;
  }
  return tol;
}

void Tolerance::validate() const {
  if (!std::isfinite(abs_eps) || !std::isfinite(rel_eps) || abs_eps < 0 ||
      rel_eps < 0)
    throw std::invalid_argument("tolerance must be finite and nonnegative");
}

const char* to_string(VerdictState s) {
  switch (s) {
    case VerdictState::In: return "in";
    case VerdictState::Out: return "out";
    case VerdictState::Unknown: return "unknown";
  }
  return "unknown";
}

Verdict Verdict::in(double margin, std::optional<Matrix> cert) {
  return {VerdictState::In, std::move(cert), margin};
}

Verdict Verdict::out(Matrix cert, double margin) {
  return {VerdictState::Out, std::move(cert), margin};
}

Verdict Verdict::unknown(double margin, std::optional<Matrix> cert) {
  return {VerdictState::Unknown, std::move(cert), margin};
}

bool contradicts(const Verdict& a, const Verdict& b) {
  return (a.is_in() && b.is_out()) || (a.is_out() && b.is_in());
}

Matrix identity(int n) { return Matrix::Identity(n, n); }

Matrix matrix_unit(int n, int i, int j) {
  Matrix e = Matrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

Matrix swap_operator(int n) {
  const int d = n * n;
  Matrix s = Matrix::Zero(d, d);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) s(b * n + a, a * n + b) = 1.0;
  return s;
}

Vector max_entangled(int n) {
  Vector v = Vector::Zero(n * n);
  for (int i = 0; i < n; ++i) v(i * n + i) = 1.0 / std::sqrt(double(n));
  return v;
}

Matrix projector(const Vector& v) { return v * v.adjoint(); }

double frobenius(const Matrix& x) { return x.norm(); }

bool is_hermitian(const Matrix& x) {
  if (x.rows() != x.cols()) return false;
  const double scale = std::max(1.0, x.norm());
  return (x - x.adjoint()).cwiseAbs().maxCoeff() <= 1e-12 * scale;
}

void require_square(const Matrix& x, const char* what) {
  if (x.rows() != x.cols() || x.rows() == 0) {
    std::ostringstream os;
    os << what << ": expected a nonempty square matrix, got " << x.rows()
       << "x" << x.cols();
    throw DimensionError(os.str());
  }
}

void require_hermitian(const Matrix& x, const char* what) {
  require_square(x, what);
  if (!is_hermitian(x))
    throw NotHermitianError(std::string(what) + ": matrix is not Hermitian");
}

int bipartite_dim(const Matrix& x, const char* what) {
  require_square(x, what);
  const int d = int(x.rows());
  int n = int(std::lround(std::sqrt(double(d))));
  if (n * n != d) {
    std::ostringstream os;
    os << what << ": dimension " << d << " is not a perfect square";
    throw DimensionError(os.str());
  }
  return n;
}

void require_bipartite(const Matrix& x, int n, const char* what) {
  if (n <= 0 || x.rows() != n * n || x.cols() != n * n) {
    std::ostringstream os;
    os << what << ": expected " << n * n << "x" << n * n << ", got "
       << x.rows() << "x" << x.cols();
    throw DimensionError(os.str());
  }
}

Matrix hermitian_part(const Matrix& x) { return 0.5 * (x + x.adjoint()); }

Matrix tensor(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Matrix partial_transpose(const Matrix& x, int n) {
  require_bipartite(x, n, "partial_transpose");
  Matrix out(x.rows(), x.cols());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out.block(i * n, j * n, n, n) = x.block(i * n, j * n, n, n).transpose();
  return out;
}

Matrix conj_J(const Matrix& x, int n) {
  require_bipartite(x, n, "conj_J");
  Matrix out(x.rows(), x.cols());
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          out(a * n + b, c * n + d) = std::conj(x(b * n + a, d * n + c));
  return out;
}

cplx hs_pair(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows() || a.rows() != b.cols() || a.rows() != a.cols())
    throw DimensionError("hs_pair: dimension mismatch");
  // Tr(AB) = sum_ij A_ij B_ji
  return (a.array() * b.transpose().array()).sum();
}

Matrix block(const Matrix& x, int n, int i, int j) {
  return x.block(i * n, j * n, n, n);
}

HermitianEigen hermitian_eigen(const Matrix& x) {
  require_square(x, "hermitian_eigen");
  const Matrix h = hermitian_part(x);
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigen: solver did not converge");
  HermitianEigen out{es.eigenvalues(), es.eigenvectors()};
  const double scale = std::max(1.0, h.norm());
  for (Eigen::Index k = 0; k < out.values.size(); ++k) {
    const double r =
        (h * out.vectors.col(k) - out.values(k) * out.vectors.col(k)).norm();
    if (r > 1e-12 * scale * double(h.rows()))
      throw std::runtime_error("hermitian_eigen: residual check failed");
  }
  return out;
}

Verdict is_psd(const Matrix& x, const Tolerance& tol) {
  require_hermitian(x, "is_psd");
  HermitianEigen eig = hermitian_eigen(x);
  const double lmin = eig.values(0);
  const double cutoff = -tol.abs_eps * std::max(1.0, x.norm());
  if (lmin >= cutoff) return Verdict::in(lmin);
  return Verdict::out(Matrix(eig.vectors.col(0)), lmin);
}

Matrix project_psd(const Matrix& x) {
  HermitianEigen eig = hermitian_eigen(x);
  RealVector clipped = eig.values.cwiseMax(0.0);
  return eig.vectors * clipped.asDiagonal() * eig.vectors.adjoint();
}

}  // namespace conekit
