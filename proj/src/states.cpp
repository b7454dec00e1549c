#include "conekit/states.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conekit/block_positive.hpp"
#include "conekit/random.hpp"

namespace conekit {

namespace {

void require_state(const StateFunctional& rho, const char* what) {
  if (!rho.is_state() && !looks_like_state(rho.density()))
    throw NotAStateError(std::string(what) +
                         ": density is not PSD with unit trace");
}

double scaled_cutoff(const Tolerance& tol, const Matrix& h) {
  return -tol.abs_eps * std::max(1.0, h.norm());
}

Vector min_eigenvector(const Matrix& x, double& value) {
  HermitianEigen e = hermitian_eigen(x);
  value = e.values(0);
  return e.vectors.col(0);
}

// Tracks the smallest normalized test value and the operator realizing it.
struct Probe {
  double value = std::numeric_limits<double>::infinity();
  Matrix witness;

  void offer(double v, const Matrix& w) {
    if (v < value) {
      value = v;
      witness = w;
    }
  }
};

Verdict settle(const Probe& p, double cutoff, bool exact) {
  if (p.value < cutoff) return Verdict::out(p.witness, p.value);
  if (exact) return Verdict::in(p.value);
  return Verdict::unknown(p.value);
}

bool exact_cone(const ConeId& k) {
  return k.tag == ConeTag::CP || k.tag == ConeTag::CoCP;
}

// Named members of K that tests (iii)-(v) always include. For CP and CoCP
// the first entry alone attains the infimum.
std::vector<QuantumMap> anchor_maps(const ConeId& k, int n) {
  switch (k.tag) {
    case ConeTag::CP: return {identity_map(n)};
    case ConeTag::CoCP: return {transpose_map(n)};
    case ConeTag::DEC: return {identity_map(n), transpose_map(n)};
    case ConeTag::POS: {
      std::vector<QuantumMap> m = {identity_map(n), transpose_map(n),
                                   reduction_witness(n)};
      if (n == 3) m.push_back(choi_map3());
      return m;
    }
    case ConeTag::SP: return {depolarizing_map(n)};
    default: return {};
  }
}

std::vector<QuantumMap> condition_maps(const ConeId& k, int n, int samples,
                                       std::uint64_t seed) {
  std::vector<QuantumMap> maps = anchor_maps(k, n);
  for (int s = 0; s < samples; ++s)
    maps.push_back(sample_member(k, n, split_seed(seed, std::uint64_t(s))));
  return maps;
}

}  // namespace

StateFunctional werner_state(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("werner_state: p must lie in [0, 1]");
  Vector psi = Vector::Zero(4);
  psi(0 * 2 + 1) = 1.0 / std::sqrt(2.0);
  psi(1 * 2 + 0) = -1.0 / std::sqrt(2.0);
  Matrix h = p * projector(psi) + (1.0 - p) * identity(4) / 4.0;
  return StateFunctional(2, h, true);
}

Verdict is_ppt_state(const StateFunctional& rho, const Tolerance& tol) {
  require_state(rho, "is_ppt_state");
  return is_psd(partial_transpose(rho.density(), rho.n()), tol);
}

SeparabilityResult is_separable(const StateFunctional& rho,
                                const OracleConfig& cfg, std::uint64_t seed) {
  require_state(rho, "is_separable");
  return separability(rho.density(), rho.n(), cfg, seed);
}

Verdict in_cone_C(const Matrix& x, const OracleConfig& cfg,
                  std::uint64_t seed) {
  const int n = bipartite_dim(x, "in_cone_C");
  require_hermitian(x, "in_cone_C");
  return is_block_positive(x, n, cfg.restarts_for(n), cfg.tol, seed, cfg.exec);
}

Theorem10Report theorem10_check(const StateFunctional& rho, const ConeId& k,
                                const OracleConfig& cfg, std::uint64_t seed,
                                ConditionBudget budget) {
  if (!k.concrete())
    throw UnsupportedConeError("theorem10_check: needs a registry cone");
  const int n = rho.n();
  const Matrix& h = rho.density();
  const double cutoff = scaled_cutoff(cfg.tol, h);
  const bool exact = exact_cone(k);
  Theorem10Report rep;
  rep.cone = k;

  // (i)
  rep.conditions[0] = membership(map_of_functional(rho), dual_cone(k), cfg,
                                 split_seed(seed, 1));

  const std::vector<QuantumMap> alphas =
      condition_maps(k, n, budget.samples, split_seed(seed, 2));

  // (ii) rho(C_alpha) over unit-norm Choi matrices.
  {
    Probe p;
    for (const auto& a : alphas) {
      const double norm = a.choi().norm();
      if (norm > 0) p.offer(rho(a.choi()).real() / norm, a.choi());
    }
    const bool cp_like = k.tag == ConeTag::CP || k.tag == ConeTag::POS ||
                         k.tag == ConeTag::DEC;
    const bool cocp_like = k.tag == ConeTag::CoCP ||
                           k.tag == ConeTag::POS || k.tag == ConeTag::DEC;
    double lam = 0.0;
    if (cp_like) {
      Matrix c = projector(min_eigenvector(h, lam));
      p.offer(rho(c).real(), c);
    }
    if (cocp_like) {
      Matrix c = partial_transpose(
          projector(min_eigenvector(partial_transpose(h, n), lam)), n);
      p.offer(rho(c).real(), c);
    }
    if (k.tag == ConeTag::SP) {
      ProductMinimum pm =
          min_product_value(h, n, 16, split_seed(seed, 3), Execution::Serial);
      Matrix c = projector(product_vector(pm.xi, pm.eta).col(0));
      p.offer(rho(c).real(), c);
    }
    rep.conditions[1] = settle(p, cutoff, exact);
  }

  // (iii) (iota (x) alpha)(h) >= 0; certificate: C_alpha.
  // (iv)  rho((iota (x) alpha)(y)) with y the projector onto the min
  //       eigenvector of (iota (x) alpha^*)(h); certificate: the operator.
  // (v)   rho(x) on x = (iota (x) alpha^*)(y), y the projector onto the min
  //       eigenvector of (iota (x) alpha)(h), together with sample_PBK(K°).
  {
    Probe p3, p4, p5;
    for (const auto& a : alphas) {
      const double norm = std::max(1e-300, a.choi().norm());
      QuantumMap a_star = adjoint(a);
      double lam = 0.0;

      Matrix image = apply_second(a, h);
      Vector v3 = min_eigenvector(image, lam);
      p3.offer(lam / norm, a.choi());

      Matrix y4 = projector(min_eigenvector(apply_second(a_star, h), lam));
      Matrix x4 = apply_second(a, y4);
      p4.offer(rho(x4).real() / norm, x4);

      Matrix y5 = projector(v3);
      Matrix x5 = apply_second(a_star, y5);
      p5.offer(rho(x5).real() / norm, x5);
    }
    for (const Matrix& x : sample_PBK(dual_cone(k), n, budget.samples,
                                      split_seed(seed, 5))) {
      const double norm = x.norm();
      if (norm > 0) p5.offer(rho(x).real() / norm, x);
    }
    rep.conditions[2] = settle(p3, cutoff, exact);
    rep.conditions[3] = settle(p4, cutoff, exact);
    rep.conditions[4] = settle(p5, cutoff, exact);
  }

  rep.consistent = consistent_verdicts(rep.conditions);
  return rep;
}

Theorem11Report theorem11_check(const StateFunctional& rho,
                                const OracleConfig& cfg, std::uint64_t seed,
                                ConditionBudget budget) {
  const int n = rho.n();
  const Matrix& h = rho.density();
  const Matrix hg = partial_transpose(h, n);
  const double cutoff = scaled_cutoff(cfg.tol, h);
  Theorem11Report rep;

  // (i) positivity of rho and of rho o (iota (x) t).
  {
    Verdict pos = is_psd(h, cfg.tol);
    rep.conditions[0] = pos.is_out() ? pos : is_psd(hg, cfg.tol);
  }

  // (ii) both arms of E: x = y >= 0 and x = (iota (x) t)(y), y >= 0.
  // The targeted y attain the infimum on each arm.
  {
    Probe p;
    Rng rng(split_seed(seed, 11));
    for (int s = 0; s < budget.samples; ++s) {
      Matrix y = random_density(n * n, rng.uniform_int(1, n * n), rng);
      p.offer(rho(y).real() / y.norm(), y);
      Matrix x = partial_transpose(y, n);
      p.offer(rho(x).real() / x.norm(), x);
    }
    double lam = 0.0;
    Matrix y = projector(min_eigenvector(h, lam));
    p.offer(rho(y).real(), y);
    Matrix x = partial_transpose(projector(min_eigenvector(hg, lam)), n);
    p.offer(rho(x).real(), x);
    rep.conditions[1] = settle(p, cutoff, true);
  }

  // (iii) P(B(H), PPTCONE) is generated by (iota (x) alpha^*)(y) with alpha
  // decomposable, i.e. by PSD y and by (iota (x) t)(y); the anchors iota and
  // t with targeted y attain the infimum.
  {
    Probe p;
    for (const Matrix& x :
         sample_PBK(ConeTag::PPTCONE, n, budget.samples, split_seed(seed, 12))) {
      const double norm = x.norm();
      if (norm > 0) p.offer(rho(x).real() / norm, x);
    }
    for (const auto& a : anchor_maps(ConeTag::DEC, n)) {
      double lam = 0.0;
      Matrix y = projector(min_eigenvector(apply_second(a, h), lam));
      Matrix x = apply_second(adjoint(a), y);
      p.offer(rho(x).real() / x.norm(), x);
    }
    rep.conditions[2] = settle(p, cutoff, true);
  }

  rep.consistent = consistent_verdicts(rep.conditions);
  return rep;
}

RandomKind parse_kind(const std::string& name) {
  if (name == "state") return RandomKind::State;
  if (name == "ppt-state" || name == "ppt_state") return RandomKind::PptState;
  if (name == "cp-map" || name == "cp_map") return RandomKind::CpMap;
  if (name == "pos-map" || name == "pos_map") return RandomKind::PosMap;
  if (name == "sp-map" || name == "sp_map") return RandomKind::SpMap;
  if (name == "werner") return RandomKind::Werner;
  throw std::invalid_argument("unknown kind '" + name + "'");
}

std::string kind_name(RandomKind k) {
  switch (k) {
    case RandomKind::State: return "state";
    case RandomKind::PptState: return "ppt-state";
    case RandomKind::CpMap: return "cp-map";
    case RandomKind::PosMap: return "pos-map";
    case RandomKind::SpMap: return "sp-map";
    case RandomKind::Werner: return "werner";
  }
  return "state";
}

RandomObject gen_random(RandomKind kind, int n, std::uint64_t seed,
                        double werner_p) {
  if (n < 1 || n > 8)
    throw std::invalid_argument("gen_random: n must lie in 1..8");
  const int d = n * n;
  switch (kind) {
    case RandomKind::State: {
      Rng rng(seed);
      return StateFunctional(n, random_density(d, rng.uniform_int(1, d), rng),
                             true);
    }
    case RandomKind::PptState: {
      Rng rng(seed);
      Matrix h;
      for (int attempt = 0; attempt < 200; ++attempt) {
        h = random_density(d, rng.uniform_int(1, d), rng);
        if (is_psd(partial_transpose(h, n)).is_in())
          return StateFunctional(n, h, true);
      }
      const double lam = hermitian_eigen(partial_transpose(h, n)).values(0);
      const double s = std::min(1.0, -lam / (1.0 / d - lam) * (1.0 + 1e-6));
      return StateFunctional(n, (1.0 - s) * h + s * identity(d) / double(d),
                             true);
    }
    case RandomKind::CpMap: return sample_member(ConeTag::CP, n, seed);
    case RandomKind::PosMap: return sample_member(ConeTag::POS, n, seed);
    case RandomKind::SpMap: return sample_member(ConeTag::SP, n, seed);
    case RandomKind::Werner:
      if (n != 2)
        throw std::invalid_argument(
            "gen_random: the Werner family is defined for n = 2 only");
      return werner_state(werner_p);
  }
  throw std::invalid_argument("gen_random: unknown kind");
}

}  // namespace conekit
