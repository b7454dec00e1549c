#pragma once

// Choi-matrix calculus for Hermiticity-preserving maps B(H) -> B(H).
//
// A map is stored only through its Choi matrix
//     C_phi = sum_ij e_ij (x) phi(e_ij),
// so block (i, j) of C_phi is phi(e_ij). Function-valued constructors are
// materialized immediately.

#include <functional>
#include <vector>

#include "conekit/matrix.hpp"

namespace conekit {

class QuantumMap {
 public:
  /// Throws DimensionError unless choi is n^2 x n^2 and NotHermitianError
  /// unless it is Hermitian (within 1e-12 relative). The stored Choi matrix
  /// is the Hermitian part of the input.
  QuantumMap(int n, const Matrix& choi);

  int n() const { return n_; }
  const Matrix& choi() const { return choi_; }

 private:
  int n_;
  Matrix choi_;
};

/// A linear functional on B(H (x) H) with density operator h:
/// rho(x) = Tr(h x).
class StateFunctional {
 public:
  /// When is_state is set the density must additionally be PSD with unit
  /// trace (within 1e-9).
  StateFunctional(int n, const Matrix& density, bool is_state = false);

  int n() const { return n_; }
  const Matrix& density() const { return density_; }
  bool is_state() const { return is_state_; }

  cplx operator()(const Matrix& x) const { return hs_pair(density_, x); }

 private:
  int n_;
  Matrix density_;
  bool is_state_;
};

/// True when h is PSD and has unit trace, within 1e-9.
bool looks_like_state(const Matrix& h);

class NonlinearActionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotCompletelyPositiveError : public std::invalid_argument {
 public:
  NotCompletelyPositiveError(const std::string& what, Vector witness,
                             double eigenvalue)
      : std::invalid_argument(what),
        witness_(std::move(witness)),
        eigenvalue_(eigenvalue) {}
  const Vector& witness() const { return witness_; }
  double eigenvalue() const { return eigenvalue_; }

 private:
  Vector witness_;
  double eigenvalue_;
};

using Action = std::function<Matrix(const Matrix&)>;

/// Assembles C_phi from the action on matrix units. Linearity is
/// spot-checked on random pairs (fixed internal seed) at 1e-8.
QuantumMap map_from_action(int n, const Action& action);

/// phi(x) = sum_ij x_ij phi(e_ij) = Tr_1[(x^T (x) 1) C_phi].
Matrix apply(const QuantumMap& phi, const Matrix& x);

/// (iota (x) phi)(X): phi applied to every n x n block of X.
Matrix apply_second(const QuantumMap& phi, const Matrix& x);

/// AdV: x -> V^* x V.
QuantumMap ad_v(const Matrix& v);

/// Hilbert-Schmidt adjoint, Tr(phi(a) b) = Tr(a phi^*(b)); C_{phi^*} = J C_phi J.
QuantumMap adjoint(const QuantumMap& phi);

/// phi^t = t o phi o t; C_{phi^t} = C_phi^T.
QuantumMap t_conjugate(const QuantumMap& phi);

/// x -> alpha(beta(x)).
QuantumMap compose(const QuantumMap& alpha, const QuantumMap& beta);

/// Nonnegative combination sum_k w_k phi_k.
QuantumMap combine(const std::vector<QuantumMap>& maps,
                   const std::vector<double>& weights);

/// Kraus operators V_k with phi(x) = sum_k V_k^* x V_k, read off the
/// eigendecomposition of C_phi. Eigenvalues below 1e-10 * lambda_max are
/// dropped. Throws NotCompletelyPositiveError when C_phi is not PSD.
std::vector<Matrix> kraus(const QuantumMap& phi, const Tolerance& tol = {});

/// rho = phi~, rho(a (x) b) = Tr(phi(a) b^T); density = C_phi^T.
StateFunctional functional_of_map(const QuantumMap& phi);

/// Inverse of functional_of_map: choi = density^T.
QuantumMap map_of_functional(const StateFunctional& rho);

/// pi(a (x) b) = b^T a, extended linearly: sum_ij X_ij^T e_ij.
Matrix pi_contract(const Matrix& x, int n);

// ---------------------------------------------------------------------------
// Named maps

QuantumMap identity_map(int n);
QuantumMap transpose_map(int n);
/// x -> Tr(x) 1 / n.
QuantumMap depolarizing_map(int n);
/// x -> Tr(x) 1 - x.
QuantumMap reduction_map(int n);
/// (1/n)(Tr(x) 1 - x); Choi matrix (1/n) 1 - |Omega><Omega|.
QuantumMap reduction_witness(int n);
/// Generalized Choi map on M_3:
/// x -> diag(a x11 + b x22 + c x33, c x11 + a x22 + b x33,
///           b x11 + c x22 + a x33) - x.
/// (a, b, c) = (2, 0, 1) is Choi's positive, non-decomposable map.
QuantumMap choi_map3(double a = 2.0, double b = 0.0, double c = 1.0);

/// ||C_a - C_b||_F.
double choi_distance(const QuantumMap& a, const QuantumMap& b);

}  // namespace conekit
