#include "conekit/separable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conekit/block_positive.hpp"
#include "conekit/maps.hpp"
#include "conekit/random.hpp"

namespace conekit {

namespace {

// Real coordinates of a Hermitian matrix that preserve the trace inner
// product: diagonal entries, then sqrt(2) Re / sqrt(2) Im of the upper part.
RealVector hermitian_coords(const Matrix& x) {
  const Eigen::Index d = x.rows();
  RealVector v(d * d);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < d; ++i) v(k++) = x(i, i).real();
  const double s = std::sqrt(2.0);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = i + 1; j < d; ++j) {
      v(k++) = s * x(i, j).real();
      v(k++) = s * x(i, j).imag();
    }
  return v;
}

Matrix product_projector(const Vector& xi, const Vector& eta) {
  Vector v = tensor(xi, eta).col(0);
  return v * v.adjoint();
}

// n^2 rank-one projectors spanning the Hermitian n x n matrices.
std::vector<Vector> local_frame(int n) {
  std::vector<Vector> out;
  for (int i = 0; i < n; ++i) out.push_back(Vector::Unit(n, i));
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vector v = Vector::Zero(n);
      v(i) = s;
      v(j) = s;
      out.push_back(v);
      v(j) = cplx(0.0, s);
      out.push_back(v);
    }
  return out;
}

QuantumMap sample_witness_map(int n, Rng& rng) {
  QuantumMap core = n == 3 && rng.uniform() < 0.75 ? choi_map3()
                                                   : reduction_witness(n);
  return compose(ad_v(ginibre(n, n, rng)), compose(core, ad_v(ginibre(n, n, rng))));
}

// Levenberg-Marquardt on sum_k x_k x_k^* (x) y_k y_k^* = h, started from a
// column-generation fit. Column generation stalls near exact low-rank
// decompositions; the joint refinement of all product vectors converges
// quadratically there, provided no term is vanishing and no two terms are
// converging onto the same product vector.
struct ProductFit {
  std::vector<Vector> x;  // carries the weight: w_k = |x_k|^2 |y_k|^2
  std::vector<Vector> y;

  int size() const { return int(x.size()); }
  double weight(int t) const { return x[t].squaredNorm() * y[t].squaredNorm(); }
};

class Polisher {
 public:
  Polisher(const Matrix& h, int n) : h_(h), n_(n), goal_(hermitian_coords(h)) {}

  RealVector residual(const ProductFit& fit) const {
    Matrix m = Matrix::Zero(h_.rows(), h_.cols());
    for (int t = 0; t < fit.size(); ++t)
      m += tensor(fit.x[t] * fit.x[t].adjoint(), fit.y[t] * fit.y[t].adjoint());
    return RealVector(hermitian_coords(m) - goal_);
  }

  // Up to `iters` damped Gauss-Newton steps; returns the final residual norm.
  double run(ProductFit& fit, int iters, double stop) const {
    RealVector f = residual(fit);
    double mu = 1e-3;
    const int k = fit.size();
    const int p = 4 * n_ * k;
    for (int iter = 0; iter < iters && f.norm() >= stop; ++iter) {
      Eigen::MatrixXd jac(goal_.size(), p);
      for (int t = 0; t < k; ++t) {
        const Matrix px = fit.x[t] * fit.x[t].adjoint();
        const Matrix py = fit.y[t] * fit.y[t].adjoint();
        for (int part = 0; part < 2; ++part)
          for (int i = 0; i < n_; ++i) {
            Vector d = Vector::Zero(n_);
            d(i) = part == 0 ? cplx(1, 0) : cplx(0, 1);
            const Matrix dx = d * fit.x[t].adjoint();
            const Matrix dy = d * fit.y[t].adjoint();
            const int col = 4 * n_ * t + part * n_ + i;
            jac.col(col) = hermitian_coords(tensor(Matrix(dx + dx.adjoint()), py));
            jac.col(col + 2 * n_) =
                hermitian_coords(tensor(px, Matrix(dy + dy.adjoint())));
          }
      }
      // Far more parameters than residual coordinates: damp in row space,
      // step = -J^T (J J^T + mu I)^{-1} f.
      const Eigen::MatrixXd jjt = jac * jac.transpose();
      const double scale = std::max(1.0, jjt.diagonal().maxCoeff());
      bool improved = false;
      for (int tries = 0; tries < 10 && !improved; ++tries) {
        Eigen::MatrixXd lhs = jjt;
        lhs.diagonal().array() += mu * scale;
        const RealVector step = -jac.transpose() * lhs.ldlt().solve(f);
        ProductFit next = fit;
        for (int t = 0; t < k; ++t)
          for (int i = 0; i < n_; ++i) {
            const int base = 4 * n_ * t;
            next.x[t](i) += cplx(step(base + i), step(base + n_ + i));
            next.y[t](i) += cplx(step(base + 2 * n_ + i), step(base + 3 * n_ + i));
          }
        RealVector fn = residual(next);
        if (fn.norm() < f.norm()) {
          fit = std::move(next);
          f = std::move(fn);
          mu = std::max(mu / 10.0, 1e-12);
          improved = true;
        } else {
          mu *= 10.0;
        }
      }
      if (!improved) break;
    }
    return f.norm();
  }

 private:
  const Matrix& h_;
  int n_;
  RealVector goal_;
};

// Drops terms below `drop` times the largest weight and merges terms whose
// normalized product vectors overlap above 1 - `merge`.
ProductFit reduce(const ProductFit& fit, double drop, double merge) {
  double wmax = 0.0;
  for (int t = 0; t < fit.size(); ++t) wmax = std::max(wmax, fit.weight(t));
  ProductFit out;
  std::vector<Vector> dirs;
  for (int t = 0; t < fit.size(); ++t) {
    const double wt = fit.weight(t);
    if (wt <= drop * wmax || wt <= 0.0) continue;
    const Vector v = product_vector(fit.x[t], fit.y[t]).col(0) / std::sqrt(wt);
    bool merged = false;
    for (std::size_t u = 0; u < dirs.size() && !merged; ++u) {
      if (std::norm(dirs[u].dot(v)) > 1.0 - merge) {
        const double wu = out.weight(int(u));
        out.x[u] *= std::sqrt((wu + wt) / wu);
        merged = true;
      }
    }
    if (!merged) {
      out.x.push_back(fit.x[t]);
      out.y.push_back(fit.y[t]);
      dirs.push_back(v);
    }
  }
  return out;
}

ProductFit heaviest(const ProductFit& fit, int k) {
  std::vector<int> order(fit.size());
  for (int t = 0; t < fit.size(); ++t) order[t] = t;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return fit.weight(a) > fit.weight(b); });
  ProductFit out;
  for (int t = 0; t < std::min(k, fit.size()); ++t) {
    out.x.push_back(fit.x[order[t]]);
    out.y.push_back(fit.y[order[t]]);
  }
  return out;
}

int numerical_rank(const Matrix& h) {
  const auto eig = hermitian_eigen(h);
  const double top = eig.values(eig.values.size() - 1);
  int r = 0;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) r += eig.values(i) > 1e-10 * top;
  return r;
}

std::optional<SeparableDecomposition> polish(
    const Matrix& h, int n, const std::vector<double>& w,
    const std::vector<std::pair<Vector, Vector>>& terms, double target_res) {
  if (terms.empty()) return std::nullopt;
  ProductFit fit;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    fit.x.push_back(std::sqrt(w[t]) * terms[t].first.normalized());
    fit.y.push_back(terms[t].second.normalized());
  }
  const Polisher lm(h, n);
  // Aim well below the acceptance threshold so accepted fits have slack.
  const double stop = 1e-3 * target_res;
  double res = lm.run(fit, 20, stop);
  const ProductFit start = fit;
  for (int round = 0; round < 20 && res >= stop; ++round) {
    // Try a reduced support first; keep it only when it fits better.
    const double merge = std::clamp(10.0 * res, 1e-6, 1e-2);
    ProductFit trial = reduce(fit, std::min(1e-2, 100.0 * res), merge);
    double trial_res = std::numeric_limits<double>::infinity();
    if (trial.size() < fit.size()) trial_res = lm.run(trial, 20, stop);
    const double prev = res;
    if (trial_res < res) {
      fit = std::move(trial);
      res = trial_res;
    } else {
      res = lm.run(fit, 20, stop);
    }
    if (res > 0.9 * prev && trial_res >= prev) break;
  }
  // Redundant terms make the fit degenerate and LM crawls. With as many
  // terms as rank(h) the solution is isolated, so restart from the
  // heaviest ones.
  const int r = numerical_rank(h);
  for (int k = r; k <= r + 2 && res >= stop && k < start.size(); ++k) {
    ProductFit trial = heaviest(start, k);
    const double trial_res = lm.run(trial, 60, stop);
    if (trial_res < res) {
      fit = std::move(trial);
      res = trial_res;
    }
  }
  if (res >= target_res) return std::nullopt;

  SeparableDecomposition dec;
  for (int t = 0; t < fit.size(); ++t) {
    const double wt = fit.weight(t);
    if (wt <= 0) continue;
    dec.weights.push_back(wt);
    dec.factors.emplace_back(projector(fit.x[t].normalized()),
                             projector(fit.y[t].normalized()));
  }
  return dec;
}

// Orthonormal basis of the eigenspace of m (Hermitian) with eigenvalue
// within tol of zero.
Matrix null_basis(const Matrix& m, double tol) {
  const auto eig = hermitian_eigen(m);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (std::abs(eig.values(i)) <= tol) keep.push_back(i);
  Matrix out(m.rows(), Eigen::Index(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) out.col(c) = eig.vectors.col(keep[c]);
  return out;
}

Matrix kernel_projector(const Matrix& h) {
  const auto eig = hermitian_eigen(h);
  const double top = eig.values(eig.values.size() - 1);
  Matrix kernel = Matrix::Zero(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) <= 1e-10 * top)
      kernel += eig.vectors.col(i) * eig.vectors.col(i).adjoint();
  return kernel;
}

// Gauss-Newton on the bilinear system B^dagger (xi (x) eta) = 0, with B an
// orthonormal basis of the kernel. The seesaw stalls at a linear rate near
// a zero; this finishes the job quadratically.
bool refine_zero(const Matrix& kernel_basis, int n, Vector& xi, Vector& eta) {
  const Matrix bd = kernel_basis.adjoint();
  for (int it = 0; it < 30; ++it) {
    const Vector f = bd * product_vector(xi, eta).col(0);
    if (f.norm() < 1e-14) return true;
    Matrix jac(bd.rows(), 2 * n);
    for (int i = 0; i < n; ++i) {
      jac.col(i) = bd * product_vector(Vector::Unit(n, i), eta).col(0);
      jac.col(n + i) = bd * product_vector(xi, Vector::Unit(n, i)).col(0);
    }
    const Vector step = -jac.adjoint() * (jac * jac.adjoint() + 1e-14 * Matrix::Identity(jac.rows(), jac.rows())).ldlt().solve(f);
    xi += step.head(n);
    eta += step.tail(n);
    xi.normalize();
    eta.normalize();
  }
  return (bd * product_vector(xi, eta).col(0)).norm() < 1e-12;
}

Matrix eigen_basis_above(const Matrix& m, double cut) {
  const auto eig = hermitian_eigen(m);
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < eig.values.size(); ++i)
    if (eig.values(i) > cut) keep.push_back(i);
  Matrix out(m.rows(), Eigen::Index(keep.size()));
  for (std::size_t c = 0; c < keep.size(); ++c) out.col(c) = eig.vectors.col(keep[c]);
  return out;
}

// Product vectors inside range(h), found as zeros of the product minimum of
// the projector onto ker(h). Every separable decomposition of a singular h
// uses only such vectors. When a zero sits in a family xi (x) S (or S (x) eta)
// the seesaw keeps returning one fixed basis of S, so the family is sampled
// explicitly as well.
std::vector<std::pair<Vector, Vector>> range_products(const Matrix& kernel,
                                                      int n,
                                                      std::uint64_t seed) {

  const Matrix kb = eigen_basis_above(kernel, 0.5);
  std::vector<std::pair<Vector, Vector>> found;
  std::vector<Vector> joint;
  auto add = [&](const Vector& xi, const Vector& eta) {
    Vector v = product_vector(xi, eta).col(0);
    for (const auto& u : joint)
      if (std::norm(u.dot(v)) > 1.0 - 1e-4) return;
    joint.push_back(v);
    found.emplace_back(xi, eta);
  };

  const int restarts = 20 * int(kernel.rows());
  for (int r = 0; r < restarts; ++r) {
    Rng rng(split_seed(seed, std::uint64_t(r)));
    Vector xi = random_unit_vector(n, rng);
    Vector eta = random_unit_vector(n, rng);
    ProductMinimum m = local_product_minimum(kernel, n, xi, eta);
    if (m.value > 1e-4) continue;
    if (!refine_zero(kb, n, m.xi, m.eta)) continue;
    add(m.xi, m.eta);

    Matrix first = Matrix::Zero(n, n);   // eta-form at fixed xi
    Matrix second = Matrix::Zero(n, n);  // xi-form at fixed eta
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Matrix blk = kernel.block(i * n, j * n, n, n);
        first += std::conj(m.xi(i)) * m.xi(j) * blk;
        second(i, j) = (m.eta.adjoint() * blk * m.eta)(0, 0);
      }
    const Matrix s_eta = null_basis(first, 1e-9);
    const Matrix s_xi = null_basis(second, 1e-9);
    for (int k = 0; k < 2 * int(s_eta.cols() * s_eta.cols()) && s_eta.cols() > 1; ++k)
      add(m.xi, (s_eta * random_unit_vector(int(s_eta.cols()), rng)).col(0));
    for (int k = 0; k < 2 * int(s_xi.cols() * s_xi.cols()) && s_xi.cols() > 1; ++k)
      add((s_xi * random_unit_vector(int(s_xi.cols()), rng)).col(0), m.eta);
  }
  return found;
}

}  // namespace

Matrix SeparableDecomposition::reconstruct() const {
  if (factors.empty()) return Matrix();
  const Eigen::Index d = factors.front().first.rows() *
                         factors.front().second.rows();
  Matrix out = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < factors.size(); ++k)
    out += weights[k] * tensor(factors[k].first, factors[k].second);
  return out;
}

RealVector nnls(const Eigen::MatrixXd& a, const RealVector& b, int max_iter) {
  const Eigen::Index k = a.cols();
  if (max_iter <= 0) max_iter = int(3 * k + 30);
  RealVector w = RealVector::Zero(k);
  std::vector<bool> passive(k, false);
  const double tol = 10.0 * std::numeric_limits<double>::epsilon() *
                     std::max<double>(1.0, a.norm()) *
                     double(std::max(a.rows(), k));

  auto solve_passive = [&](RealVector& s) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index j = 0; j < k; ++j)
      if (passive[j]) idx.push_back(j);
    Eigen::MatrixXd ap(a.rows(), Eigen::Index(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) ap.col(c) = a.col(idx[c]);
    RealVector sp = ap.completeOrthogonalDecomposition().solve(b);
    s = RealVector::Zero(k);
    for (std::size_t c = 0; c < idx.size(); ++c) s(idx[c]) = sp(c);
  };

  RealVector g = a.transpose() * (b - a * w);
  for (int outer = 0; outer < max_iter; ++outer) {
    Eigen::Index best = -1;
    double gmax = tol;
    for (Eigen::Index j = 0; j < k; ++j)
      if (!passive[j] && g(j) > gmax) {
        gmax = g(j);
        best = j;
      }
    if (best < 0) break;
    passive[best] = true;

    RealVector s;
    for (int inner = 0; inner < max_iter; ++inner) {
      solve_passive(s);
      double alpha = 1.0;
      bool feasible = true;
      for (Eigen::Index j = 0; j < k; ++j)
        if (passive[j] && s(j) <= 0.0) {
          feasible = false;
          const double denom = w(j) - s(j);
          if (denom > 0) alpha = std::min(alpha, w(j) / denom);
        }
      if (feasible) break;
      w += alpha * (s - w);
      for (Eigen::Index j = 0; j < k; ++j)
        if (passive[j] && w(j) <= tol) {
          passive[j] = false;
          w(j) = 0.0;
        }
    }
    for (Eigen::Index j = 0; j < k; ++j) w(j) = passive[j] ? s(j) : 0.0;
    g = a.transpose() * (b - a * w);
  }
  return w.cwiseMax(0.0);
}

std::optional<SeparableDecomposition> find_separable_decomposition(
    const Matrix& h, int n, const OracleConfig& cfg, std::uint64_t seed) {
  require_bipartite(h, n, "find_separable_decomposition");

  // Column generation only drives the residual down geometrically, so on its
  // own it rarely reaches cfg.sep_residual. Instead fit h - delta Q, where
  // Q = sum_ij P_i (x) P_j over an informationally complete set of local
  // projectors. Once the residual R expands as sum c_ij P_i (x) P_j with every
  // c_ij >= -delta, the terms (delta + c_ij) P_i (x) P_j absorb it exactly.
  const std::vector<Vector> local = local_frame(n);
  const int m = int(local.size());
  Eigen::MatrixXd frame(h.rows() * h.rows(), m * m);
  Matrix q = Matrix::Zero(h.rows(), h.cols());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      Matrix pp = product_projector(local[i], local[j]);
      frame.col(i * m + j) = hermitian_coords(pp);
      q += pp;
    }
  const Eigen::PartialPivLU<Eigen::MatrixXd> frame_lu(frame);
  const double lmin = hermitian_eigen(h).values(0);
  const double delta =
      lmin > 1e-10 ? 0.5 * lmin / hermitian_eigen(q).values(q.rows() - 1) : 0.0;
  const Matrix fit = h - delta * q;
  const RealVector target = hermitian_coords(fit);

  if (delta == 0.0) {
    // Every product vector of a decomposition lies in range(h). Sampled
    // range products rarely sit close enough to a decomposition, so grow
    // the pool greedily: the product maximizing <psi|R|psi> under a penalty
    // on ker(h), snapped back onto the range by the kernel seesaw.
    const Matrix kernel = kernel_projector(h);
    const Matrix kb = eigen_basis_above(kernel, 0.5);
    auto cols = range_products(kernel, n, split_seed(seed, 0x7a9e));
    if (!cols.empty()) {
      Eigen::MatrixXd basis(target.size(), Eigen::Index(cols.size()));
      for (std::size_t c = 0; c < cols.size(); ++c)
        basis.col(c) = hermitian_coords(
            product_projector(cols[c].first, cols[c].second));
      Rng rng(split_seed(seed, 0x5eed));
      for (int round = 0;; ++round) {
        const RealVector w = nnls(basis, target);
        std::vector<double> ws;
        std::vector<std::pair<Vector, Vector>> ts;
        Matrix res = h;
        for (Eigen::Index c = 0; c < w.size(); ++c)
          if (w(c) > 0) {
            ws.push_back(w(c));
            ts.push_back(cols[c]);
            res -= w(c) * product_projector(cols[c].first, cols[c].second);
          }
        const double rn = res.norm();
        const bool last = round == 40;
        if (last || round % 10 == 9 || rn < 1e-3)
          if (auto dec = polish(h, n, ws, ts, cfg.sep_residual)) return dec;
        if (last) break;

        const Matrix penalized = 10.0 * rn * kernel - res;
        std::vector<std::pair<double, std::pair<Vector, Vector>>> cand;
        for (int r = 0; r < 8; ++r) {
          ProductMinimum m = local_product_minimum(
              penalized, n, random_unit_vector(n, rng), random_unit_vector(n, rng));
          ProductMinimum snap = local_product_minimum(kernel, n, m.xi, m.eta);
          if (snap.value > 1e-4 || !refine_zero(kb, n, snap.xi, snap.eta)) continue;
          const double gain = product_expectation(res, n, snap.xi, snap.eta);
          if (gain > 0) cand.push_back({gain, {snap.xi, snap.eta}});
        }
        if (cand.empty()) break;
        std::sort(cand.begin(), cand.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        const int take = std::min<int>(3, int(cand.size()));
        basis.conservativeResize(Eigen::NoChange, basis.cols() + take);
        for (int c = 0; c < take; ++c) {
          cols.push_back(cand[c].second);
          basis.col(basis.cols() - take + c) = hermitian_coords(product_projector(
              cand[c].second.first, cand[c].second.second));
        }
      }
    }
  }

  std::vector<std::pair<Vector, Vector>> cols;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      cols.emplace_back(Vector::Unit(n, i), Vector::Unit(n, j));

  Eigen::MatrixXd a(target.size(), 0);
  auto append = [&](const Vector& xi, const Vector& eta) {
    a.conservativeResize(Eigen::NoChange, a.cols() + 1);
    a.col(a.cols() - 1) = hermitian_coords(product_projector(xi, eta));
  };
  for (const auto& [xi, eta] : cols) append(xi, eta);

  auto collect = [&](const RealVector& w) {
    SeparableDecomposition dec;
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      if (w(c) <= 0) continue;
      dec.weights.push_back(w(c));
      dec.factors.emplace_back(projector(cols[c].first),
                               projector(cols[c].second));
    }
    return dec;
  };

  const int pool_cap = 2 * n * n * n * n;
  double best_res = std::numeric_limits<double>::infinity();
  int since_progress = 0;
  for (int added = 0;; ++added) {
    RealVector w = nnls(a, target);
    const RealVector r = target - a * w;
    const double res = r.norm();

    if (delta == 0.0 && res < cfg.sep_residual) return collect(w);
    if (delta > 0.0) {
      const RealVector c = frame_lu.solve(r);
      if (c.minCoeff() >= -delta) {
        SeparableDecomposition dec = collect(w);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) {
            const double wt = delta + c(i * m + j);
            if (wt <= 0) continue;
            dec.weights.push_back(wt);
            dec.factors.emplace_back(projector(local[i]), projector(local[j]));
          }
        return dec;
      }
    }
    // Singular h reaching this point has defeated the range search above;
    // column generation rarely does better there, so keep the budget short.
    const int budget = delta > 0.0 ? cfg.sep_max_columns
                                    : std::min(cfg.sep_max_columns, 60);
    bool stop = added >= budget;
    if (res < 0.99 * best_res) {
      best_res = res;
      since_progress = 0;
    } else if (++since_progress > 30) {
      stop = true;
    }
    if (stop || (added > 0 && added % 20 == 0)) {
      // Hand the active terms, plus the clamped frame terms, to the joint
      // refinement against h itself.
      std::vector<double> ws;
      std::vector<std::pair<Vector, Vector>> ts;
      for (Eigen::Index c = 0; c < a.cols(); ++c)
        if (w(c) > 0) {
          ws.push_back(w(c));
          ts.push_back(cols[c]);
        }
      if (delta > 0.0) {
        const RealVector c = frame_lu.solve(r);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j)
            if (delta + c(i * m + j) > 0) {
              ws.push_back(delta + c(i * m + j));
              ts.emplace_back(local[i], local[j]);
            }
      }
      auto polished = polish(h, n, ws, ts, cfg.sep_residual);
      if (polished || stop) return polished;
    }

    Matrix residual = fit;
    for (Eigen::Index c = 0; c < Eigen::Index(w.size()); ++c)
      if (w(c) > 0)
        residual -= w(c) * product_projector(cols[c].first, cols[c].second);
    if (a.cols() > pool_cap) {
      std::vector<std::pair<Vector, Vector>> kept;
      for (Eigen::Index c = 0; c < a.cols(); ++c)
        if (w(c) > 0) kept.push_back(cols[c]);
      cols = std::move(kept);
      a.resize(target.size(), 0);
      for (const auto& [xi, eta] : cols) append(xi, eta);
    }

    ProductMinimum best = min_product_value(
        -residual, n, 8, split_seed(seed, std::uint64_t(added)),
        Execution::Serial);
    if (-best.value <= 1e-15) {
      since_progress = 1 << 20;
      continue;
    }
    cols.emplace_back(best.xi, best.eta);
    append(best.xi, best.eta);
  }
  return std::nullopt;
}

SeparabilityResult separability(const Matrix& h, int n,
                                const OracleConfig& cfg, std::uint64_t seed) {
  require_bipartite(h, n, "separability");
  require_hermitian(h, "separability");

  Verdict ppt = is_psd(partial_transpose(h, n), cfg.tol);
  if (ppt.is_out()) return {ppt, std::nullopt};

  if (n * n <= 6) {
    SeparabilityResult r{Verdict::in(ppt.margin), std::nullopt};
    if (cfg.sep_decompose_small)
      r.decomposition = find_separable_decomposition(h, n, cfg, seed);
    return r;
  }

  Rng rng(split_seed(seed, 0x5e9a));
  for (int trial = 0; trial < cfg.witness_trials; ++trial) {
    QuantumMap alpha = sample_witness_map(n, rng);
    Matrix image = apply_second(alpha, h);
    Verdict v = is_psd(image, cfg.tol);
    if (v.is_out()) return {v, std::nullopt};
  }

  auto dec = find_separable_decomposition(h, n, cfg, seed);
  if (dec) {
    const double res = (dec->reconstruct() - h).norm();
    if (res <= cfg.sep_residual) return {Verdict::in(res), std::move(dec)};
  }
  return {Verdict::unknown(ppt.margin), std::nullopt};
}

}  // namespace conekit
