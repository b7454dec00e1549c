#include "conekit/decomposable.hpp"

namespace conekit {

namespace {

// Split returned for a candidate B: A = proj_PSD(C - B^Γ).
void fill(DecSplit& s, const Matrix& c, int n, const Matrix& b) {
  s.b = b;
  s.a = project_psd(c - partial_transpose(b, n));
  s.residual = (c - s.a - partial_transpose(s.b, n)).norm();
}

}  // namespace

DecSplit decompose_dec(const Matrix& c, int n, int max_iter, double target) {
  require_bipartite(c, n, "decompose_dec");
  require_hermitian(c, "decompose_dec");

  // Feasibility of B in S1 = {B >= 0} and S2 = {B : C - B^Γ >= 0}. Both
  // projections are exact (Γ is an isometry), and Douglas-Rachford on the
  // pair reaches boundary points far faster than plain alternation.
  auto onto_s2 = [&](const Matrix& b) {
    Matrix a = project_psd(c - partial_transpose(b, n));
    return Matrix(partial_transpose(c - a, n));
  };

  DecSplit s;
  Matrix x = Matrix::Zero(c.rows(), c.cols());
  fill(s, c, n, x);
  for (int it = 1; it <= max_iter; ++it) {
    const Matrix p2 = onto_s2(x);
    x += project_psd(2.0 * p2 - x) - p2;
    s.iterations = it;
    if (it % 5 != 0 && it != max_iter) continue;
    fill(s, c, n, project_psd(onto_s2(x)));
    if (s.residual < target) {
      s.converged = true;
      break;
    }
  }
  return s;
}

}  // namespace conekit
