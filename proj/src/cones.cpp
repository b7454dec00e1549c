#include "conekit/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conekit/block_positive.hpp"
#include "conekit/decomposable.hpp"
#include "conekit/random.hpp"
#include "conekit/separable.hpp"

namespace conekit {

ConeId ConeId::sampled(std::vector<QuantumMap> gens) {
  if (gens.empty())
    throw std::invalid_argument("sampled cone needs at least one generator");
  const int n = gens.front().n();
  for (const auto& g : gens)
    if (g.n() != n)
      throw DimensionError("sampled cone generators differ in dimension");
  ConeId k(ConeTag::Sampled);
  k.generators =
      std::make_shared<const std::vector<QuantumMap>>(std::move(gens));
  return k;
}

bool operator==(const ConeId& a, const ConeId& b) {
  if (a.tag != b.tag) return false;
  if (a.tag != ConeTag::Sampled) return true;
  return a.generators == b.generators;
}

std::string cone_name(const ConeId& k) {
  switch (k.tag) {
    case ConeTag::CP: return "cp";
    case ConeTag::CoCP: return "cocp";
    case ConeTag::PPTCONE: return "ppt-cone";
    case ConeTag::POS: return "pos";
    case ConeTag::SP: return "sp";
    case ConeTag::DEC: return "dec";
    case ConeTag::Sampled: return "sampled";
  }
  return "sampled";
}

ConeId parse_cone(const std::string& name) {
  if (name == "cp") return ConeTag::CP;
  if (name == "cocp") return ConeTag::CoCP;
  if (name == "ppt-cone") return ConeTag::PPTCONE;
  if (name == "pos") return ConeTag::POS;
  if (name == "sp") return ConeTag::SP;
  if (name == "dec") return ConeTag::DEC;
  throw UnsupportedConeError("unknown cone '" + name + "'");
}

const std::vector<DualityEntry>& duality_registry() {
  static const std::vector<DualityEntry> registry = {
      {ConeTag::POS, ConeTag::SP, true},
      {ConeTag::SP, ConeTag::POS, true},
      {ConeTag::CP, ConeTag::CP, true},
      {ConeTag::CoCP, ConeTag::CoCP, true},
      {ConeTag::PPTCONE, ConeTag::DEC, true},
      {ConeTag::DEC, ConeTag::PPTCONE, true},
  };
  return registry;
}

ConeId dual_cone(const ConeId& k) {
  for (const auto& e : duality_registry())
    if (e.cone == k) return e.dual;
  throw UnsupportedConeError(
      "dual_cone: no registry entry for a sampled cone; use "
      "dual_membership_sampled");
}

double pairing(const QuantumMap& phi, const QuantumMap& alpha) {
  if (phi.n() != alpha.n()) throw DimensionError("pairing: dimension mismatch");
  return hs_pair(phi.choi(), alpha.choi()).real();
}

namespace {

Verdict psd_pair(const Matrix& c, int n, const Tolerance& tol) {
  Verdict cp = is_psd(c, tol);
  if (cp.is_out()) return cp;
  Verdict cocp = is_psd(partial_transpose(c, n), tol);
  if (cocp.is_out()) return cocp;
  return Verdict::in(std::min(cp.margin, cocp.margin));
}

Verdict sp_membership(const Matrix& c, int n, const OracleConfig& cfg,
                      std::uint64_t seed) {
  Verdict cp = is_psd(c, cfg.tol);
  if (cp.is_out()) return cp;
  const double tr = c.trace().real();
  if (tr <= cfg.tol.abs_eps) return Verdict::in(0.0);  // C = 0 up to roundoff
  OracleConfig local = cfg;
  local.sep_decompose_small = false;
  return separability(c / tr, n, local, seed).verdict;
}

Verdict sampled_membership(const QuantumMap& phi, const ConeId& k,
                           const Tolerance& tol) {
  const double norm = phi.choi().norm();
  if (norm <= tol.abs_eps) return Verdict::in(0.0);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& g : *k.generators) {
    const double gn = g.choi().norm();
    if (gn == 0.0) continue;
    const double d = (phi.choi() / norm - g.choi() / gn).norm();
    best = std::min(best, d);
  }
  if (best <= 1e-9) return Verdict::in(best);
  return Verdict::unknown(best);
}

Matrix scale_to_n(Matrix c, int n) {
  const double tr = c.trace().real();
  if (tr > 0) c *= double(n) / tr;
  return c;
}

Matrix random_ad(int n, Rng& rng) { return ad_v(ginibre(n, n, rng)).choi(); }

Matrix sample_cp(int n, Rng& rng) {
  const int terms = rng.uniform_int(1, n * n);
  Matrix c = Matrix::Zero(n * n, n * n);
  for (int k = 0; k < terms; ++k) c += random_ad(n, rng);
  return c;
}

Matrix sample_choi(const ConeId& k, int n, Rng& rng) {
  switch (k.tag) {
    case ConeTag::CP:
      return sample_cp(n, rng);
    case ConeTag::CoCP:
      return partial_transpose(sample_cp(n, rng), n);
    case ConeTag::PPTCONE: {
      Matrix c;
      for (int attempt = 0; attempt < 200; ++attempt) {
        c = sample_cp(n, rng);
        if (is_psd(partial_transpose(c, n)).is_in()) return c;
      }
      const double lmin = hermitian_eigen(partial_transpose(c, n)).values(0);
      return c + std::max(0.0, -lmin) * identity(n * n);
    }
    case ConeTag::POS: {
      const int kinds = n == 3 ? 4 : 3;
      switch (rng.uniform_int(0, kinds - 1)) {
        case 0: return random_ad(n, rng);
        case 1: return partial_transpose(random_ad(n, rng), n);
        case 2: {
          QuantumMap v = ad_v(ginibre(n, n, rng));
          QuantumMap w = ad_v(ginibre(n, n, rng));
          return compose(v, compose(reduction_witness(n), w)).choi();
        }
        default: {
          QuantumMap v = ad_v(ginibre(n, n, rng));
          QuantumMap w = ad_v(ginibre(n, n, rng));
          return compose(v, compose(choi_map3(), w)).choi();
        }
      }
    }
    case ConeTag::SP: {
      const int terms = rng.uniform_int(1, n * n);
      Matrix c = Matrix::Zero(n * n, n * n);
      for (int t = 0; t < terms; ++t) {
        const double w = rng.uniform();
        Vector psi = random_unit_vector(n, rng);
        Matrix a = random_density(n, rng.uniform_int(1, n), rng);
        // Choi of x -> <psi|x|psi> a is |conj psi><conj psi| (x) a.
        c += w * tensor(projector(psi.conjugate()), a);
      }
      return c;
    }
    case ConeTag::DEC: {
      Matrix c = Matrix::Zero(n * n, n * n);
      const int terms = rng.uniform_int(1, n);
      for (int t = 0; t < terms; ++t) {
        c += random_ad(n, rng);
        c += partial_transpose(random_ad(n, rng), n);
      }
      return c;
    }
    case ConeTag::Sampled: {
      const auto& gens = *k.generators;
      if (gens.front().n() != n)
        throw DimensionError("sample_member: generator dimension mismatch");
      const int terms = rng.uniform_int(1, 3);
      Matrix c = Matrix::Zero(n * n, n * n);
      for (int t = 0; t < terms; ++t) {
        const int g = rng.uniform_int(0, int(gens.size()) - 1);
        c += rng.uniform() * gens[g].choi();
      }
      return c;
    }
  }
  throw UnsupportedConeError("sample_member: unknown cone");
}

}  // namespace

Verdict membership(const QuantumMap& phi, const ConeId& k,
                   const OracleConfig& cfg, std::uint64_t seed) {
  const int n = phi.n();
  const Matrix& c = phi.choi();
  switch (k.tag) {
    case ConeTag::CP:
      return is_psd(c, cfg.tol);
    case ConeTag::CoCP:
      return is_psd(partial_transpose(c, n), cfg.tol);
    case ConeTag::PPTCONE:
      return psd_pair(c, n, cfg.tol);
    case ConeTag::POS:
      return is_block_positive(c, n, cfg.restarts_for(n), cfg.tol, seed,
                               cfg.exec);
    case ConeTag::SP:
      return sp_membership(c, n, cfg, seed);
    case ConeTag::DEC: {
      DecSplit s = decompose_dec(c, n, cfg.dec_max_iter, cfg.dec_residual);
      if (s.converged) return Verdict::in(s.residual);
      return Verdict::unknown(s.residual);
    }
    case ConeTag::Sampled:
      if (k.generators->front().n() != n)
        throw DimensionError("membership: generator dimension mismatch");
      return sampled_membership(phi, k, cfg.tol);
  }
  throw UnsupportedConeError("membership: unknown cone");
}

QuantumMap sample_member(const ConeId& k, int n, std::uint64_t seed) {
  if (n <= 0) throw DimensionError("sample_member: n must be positive");
  Rng rng(seed);
  return QuantumMap(n, hermitian_part(scale_to_n(sample_choi(k, n, rng), n)));
}

Verdict dual_membership_sampled(const QuantumMap& phi, const ConeId& k,
                                int trials, std::uint64_t seed,
                                const OracleConfig& cfg) {
  const int n = phi.n();
  if (trials < 1) trials = 1;
  std::vector<double> values(trials);
  auto run = [&](int t) {
    QuantumMap alpha = sample_member(k, n, split_seed(seed, std::uint64_t(t)));
    values[t] = pairing(phi, alpha);
  };
  if (cfg.exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (int t = 0; t < trials; ++t) run(t);
  } else {
    for (int t = 0; t < trials; ++t) run(t);
  }
  const int worst =
      int(std::min_element(values.begin(), values.end()) - values.begin());
  if (values[worst] < -cfg.tol.abs_eps) {
    QuantumMap alpha =
        sample_member(k, n, split_seed(seed, std::uint64_t(worst)));
    return Verdict::out(alpha.choi(), values[worst]);
  }
  return Verdict::unknown(values[worst]);
}

Verdict k_sharp_membership(const QuantumMap& beta, const ConeId& k, int trials,
                           std::uint64_t seed, const OracleConfig& cfg) {
  const int n = beta.n();
  if (trials < 1) trials = 1;
  std::vector<double> lmin(trials), scale(trials);
  auto run = [&](int t) {
    QuantumMap alpha = sample_member(k, n, split_seed(seed, std::uint64_t(t)));
    QuantumMap gamma = compose(beta, adjoint(alpha));
    lmin[t] = hermitian_eigen(gamma.choi()).values(0);
    scale[t] = std::max(1.0, gamma.choi().norm());
  };
  if (cfg.exec == Execution::Parallel) {
#pragma omp parallel for schedule(static)
    for (int t = 0; t < trials; ++t) run(t);
  } else {
    for (int t = 0; t < trials; ++t) run(t);
  }
  for (int t = 0; t < trials; ++t)
    if (lmin[t] < -cfg.tol.abs_eps * scale[t])
      return Verdict::out(
          sample_member(k, n, split_seed(seed, std::uint64_t(t))).choi(),
          lmin[t]);
  const double observed = *std::min_element(lmin.begin(), lmin.end());
  if (k.concrete()) {
    Verdict dual = membership(beta, dual_cone(k), cfg, seed);
    if (dual.is_in()) return Verdict::in(observed);
  }
  return Verdict::unknown(observed);
}

std::vector<Matrix> sample_PBK(const ConeId& k, int n, int count,
                               std::uint64_t seed) {
  const ConeId dual = dual_cone(k);
  std::vector<Matrix> out;
  out.reserve(std::max(count, 0));
  for (int i = 0; i < count; ++i) {
    const std::uint64_t s = split_seed(seed, std::uint64_t(i));
    QuantumMap alpha = sample_member(dual, n, s);
    Rng rng(split_seed(s, 0xb0b));
    Matrix y = random_density(n * n, n * n, rng);
    out.push_back(hermitian_part(apply_second(adjoint(alpha), y)));
  }
  return out;
}

}  // namespace conekit
