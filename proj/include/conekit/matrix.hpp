#pragma once

// Dense complex matrix kernel: tensor algebra on H (x) H, the partial
// transpose, the J-conjugation, spectral tests and the trace pairing.
//
// Index convention on H (x) H: the basis vector e_a (x) e_b sits at row
// a * n + b, so e_ij (x) X places the n x n block X at block-row i,
// block-column j.

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace conekit {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotHermitianError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Tolerance {
  double abs_eps = 1e-9;
  double rel_eps = 1e-9;

  /// Defaults, with abs_eps replaced by $CONEKIT_TOL when it parses as a
  /// finite nonnegative number.
  static Tolerance from_env();
  void validate() const;
};

enum class VerdictState { In, Out, Unknown };

const char* to_string(VerdictState s);

/// Tri-state oracle result. An Out verdict always carries a certificate
/// (a vector is stored as a one-column matrix); `margin` is the scalar the
/// oracle decided on (min eigenvalue, min pairing, residual ...).
struct Verdict {
  VerdictState state = VerdictState::Unknown;
  std::optional<Matrix> certificate;
  double margin = 0.0;

  static Verdict in(double margin, std::optional<Matrix> cert = std::nullopt);
  static Verdict out(Matrix cert, double margin);
  static Verdict unknown(double margin,
                         std::optional<Matrix> cert = std::nullopt);

  bool is_in() const { return state == VerdictState::In; }
  bool is_out() const { return state == VerdictState::Out; }
  bool is_unknown() const { return state == VerdictState::Unknown; }
};

/// True when one verdict is a decided In and the other a decided Out.
bool contradicts(const Verdict& a, const Verdict& b);

// ---------------------------------------------------------------------------
// Basic constructors

Matrix identity(int n);
/// e_ij in B(C^n).
Matrix matrix_unit(int n, int i, int j);
/// The flip operator on C^n (x) C^n: e_a (x) e_b -> e_b (x) e_a.
Matrix swap_operator(int n);
/// Normalized maximally entangled vector sum_i e_i (x) e_i / sqrt(n).
Vector max_entangled(int n);
Matrix projector(const Vector& v);

// ---------------------------------------------------------------------------
// Structure checks

double frobenius(const Matrix& x);
/// max |X - X^*| <= 1e-12 * max(1, ||X||_F).
bool is_hermitian(const Matrix& x);
void require_hermitian(const Matrix& x, const char* what);
void require_square(const Matrix& x, const char* what);
/// Returns n when x is n^2 x n^2, throws DimensionError otherwise.
int bipartite_dim(const Matrix& x, const char* what);
void require_bipartite(const Matrix& x, int n, const char* what);
Matrix hermitian_part(const Matrix& x);

// ---------------------------------------------------------------------------
// Operations

/// Kronecker product with (e_ij (x) X) placing X at block (i, j).
Matrix tensor(const Matrix& a, const Matrix& b);

/// iota (x) t: transposes every n x n block in place.
Matrix partial_transpose(const Matrix& x, int n);

/// J X J for the antilinear flip J(z e_a (x) e_b) = conj(z) e_b (x) e_a:
/// (JXJ)_{(ab),(cd)} = conj(X_{(ba),(dc)}).
Matrix conj_J(const Matrix& x, int n);

/// Tr(AB).
cplx hs_pair(const Matrix& a, const Matrix& b);

/// Block (i, j) of an n^2 x n^2 matrix.
Matrix block(const Matrix& x, int n, int i, int j);

struct HermitianEigen {
  RealVector values;  // ascending
  Matrix vectors;     // columns
};

/// Eigendecomposition of a Hermitian matrix, post-checked by the residual
/// max_k ||X v_k - lambda_k v_k|| <= 1e-10 * max(1, ||X||_F).
HermitianEigen hermitian_eigen(const Matrix& x);

/// In when lambda_min >= -abs_eps * max(1, ||X||_F); Out otherwise with the
/// min eigenvector as certificate. Margin is lambda_min. Never Unknown.
Verdict is_psd(const Matrix& x, const Tolerance& tol = {});

/// Nearest PSD matrix in Frobenius norm (negative eigenvalues clipped).
Matrix project_psd(const Matrix& x);

}  // namespace conekit
