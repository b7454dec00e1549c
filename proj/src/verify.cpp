#include "conekit/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <sstream>

#include "conekit/cones.hpp"
#include "conekit/json_io.hpp"
#include "conekit/random.hpp"
#include "conekit/states.hpp"

namespace conekit {

namespace {

struct TrialResult {
  std::vector<SuiteFailure> failures;
  std::map<std::string, long> counters;

  void fail(std::uint64_t seed, std::string what, json inputs) {
    failures.push_back({seed, std::move(what), inputs.dump()});
  }
  void count(const std::string& key) { ++counters[key]; }
};

using TrialFn =
    std::function<void(int n, std::uint64_t seed, const OracleConfig& cfg,
                       TrialResult& out)>;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

QuantumMap random_hp_map(int n, Rng& rng) {
  return QuantumMap(n, random_hermitian(n * n, rng));
}

double rel_scale(const Matrix& m) { return std::max(1.0, m.norm()); }

// Adjoint built from its defining pairing alone: phi^*(b)_{ji} = Tr(phi(e_ij) b).
QuantumMap adjoint_by_pairing(const QuantumMap& phi) {
  const int n = phi.n();
  return map_from_action(n, [&](const Matrix& b) {
    Matrix out(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        out(j, i) = hs_pair(conekit::apply(phi, matrix_unit(n, i, j)), b);
    return out;
  });
}

// ---------------------------------------------------------------------------

void suite_l3(int n, std::uint64_t seed, const OracleConfig& cfg,
              TrialResult& out) {
  (void)cfg;
  Rng rng(seed);
  QuantumMap phi = random_hp_map(n, rng);
  const double scale = rel_scale(phi.choi());

  QuantumMap via_j = adjoint(phi);
  QuantumMap via_pairing = adjoint_by_pairing(phi);
  const double r1 = (via_j.choi() - via_pairing.choi()).norm();
  if (r1 > 1e-9 * scale)
    out.fail(seed, "C_{phi*} != J C_phi J, residual " + fmt(r1),
             {{"phi", map_to_json(phi)}});

  Matrix a = ginibre(n, n, rng);
  Matrix b = ginibre(n, n, rng);
  const cplx lhs = hs_pair(conekit::apply(phi, a), b);
  const cplx rhs = hs_pair(a, conekit::apply(via_j, b));
  if (std::abs(lhs - rhs) > 1e-9)
    out.fail(seed, "pairing identity violated by " + fmt(std::abs(lhs - rhs)),
             {{"phi", map_to_json(phi)},
              {"a", matrix_to_json(a)},
              {"b", matrix_to_json(b)}});

  Matrix v = ginibre(n, n, rng);
  const double r2 =
      (conj_J(ad_v(v).choi(), n) - ad_v(v.adjoint()).choi()).norm();
  if (r2 > 1e-9 * rel_scale(ad_v(v).choi()))
    out.fail(seed, "J C_AdV J != C_AdV*, residual " + fmt(r2),
             {{"V", matrix_to_json(v)}});

  const double r3 = (adjoint(via_j).choi() - phi.choi()).norm();
  if (r3 > 1e-12 * scale)
    out.fail(seed, "adjoint is not an involution", {{"phi", map_to_json(phi)}});
}

void suite_l4a(int n, std::uint64_t seed, const OracleConfig&,
               TrialResult& out) {
  Rng rng(seed);
  QuantumMap alpha = random_hp_map(n, rng);
  QuantumMap beta = random_hp_map(n, rng);
  QuantumMap lhs = t_conjugate(compose(alpha, beta));
  QuantumMap rhs = compose(t_conjugate(alpha), t_conjugate(beta));
  const double scale = rel_scale(lhs.choi());
  const double r = (lhs.choi() - rhs.choi()).norm();
  if (r > 1e-9 * scale)
    out.fail(seed, "(a o b)^t != a^t o b^t, residual " + fmt(r),
             {{"alpha", map_to_json(alpha)}, {"beta", map_to_json(beta)}});

  // Second route through the action: x -> alpha(beta(x^T))^T.
  QuantumMap by_action = map_from_action(n, [&](const Matrix& x) {
    return Matrix(conekit::apply(alpha, conekit::apply(beta, x.transpose())).transpose());
  });
  const double r2 = (by_action.choi() - lhs.choi()).norm();
  if (r2 > 1e-9 * scale)
    out.fail(seed, "(a o b)^t disagrees with its action, residual " + fmt(r2),
             {{"alpha", map_to_json(alpha)}, {"beta", map_to_json(beta)}});
}

void suite_l4b(int n, std::uint64_t seed, const OracleConfig&,
               TrialResult& out) {
  Rng rng(seed);
  QuantumMap phi = random_hp_map(n, rng);
  Matrix a = ginibre(n, n, rng);
  Matrix b = ginibre(n, n, rng);
  QuantumMap inner = t_conjugate(adjoint(phi));
  const cplx lhs =
      pi_contract(apply_second(inner, tensor(a, b)), n).trace();
  const cplx rhs = hs_pair(conekit::apply(phi, a), b.transpose());
  if (std::abs(lhs - rhs) > 1e-9)
    out.fail(seed,
             "Tr o pi o (iota (x) phi^{*t}) != phi~, gap " +
                 fmt(std::abs(lhs - rhs)),
             {{"phi", map_to_json(phi)},
              {"a", matrix_to_json(a)},
              {"b", matrix_to_json(b)}});

  Matrix x = random_density(n * n, rng.uniform_int(1, n * n), rng);
  const cplx tr = pi_contract(x, n).trace();
  if (tr.real() < -1e-12 || std::abs(tr.imag()) > 1e-12)
    out.fail(seed, "Tr o pi negative on a PSD input: " + fmt(tr.real()),
             {{"x", matrix_to_json(x)}});
}

void suite_tt(int n, std::uint64_t seed, const OracleConfig&,
              TrialResult& out) {
  Rng rng(seed);
  QuantumMap phi = random_hp_map(n, rng);
  QuantumMap by_action = map_from_action(n, [&](const Matrix& x) {
    return Matrix(conekit::apply(phi, x.transpose()).transpose());
  });
  const double r = (by_action.choi() - phi.choi().transpose()).norm();
  if (r > 1e-12 * rel_scale(phi.choi()))
    out.fail(seed, "C_{phi^t} != C_phi^T, residual " + fmt(r),
             {{"phi", map_to_json(phi)}});
  const double inv = (t_conjugate(t_conjugate(phi)).choi() - phi.choi()).norm();
  if (inv != 0.0)
    out.fail(seed, "t-conjugation is not an involution",
             {{"phi", map_to_json(phi)}});
}

void suite_choi(int n, std::uint64_t seed, const OracleConfig& cfg,
                TrialResult& out) {
  Rng rng(seed);
  // Kraus-built map.
  const int count = rng.uniform_int(1, n * n);
  std::vector<Matrix> ops;
  Matrix choi = Matrix::Zero(n * n, n * n);
  for (int k = 0; k < count; ++k) {
    ops.push_back(ginibre(n, n, rng));
    choi += ad_v(ops.back()).choi();
  }
  QuantumMap phi(n, choi);
  if (!membership(phi, ConeTag::CP, cfg).is_in())
    out.fail(seed, "Kraus-built map not CP", {{"phi", map_to_json(phi)}});
  try {
    std::vector<Matrix> ks = kraus(phi, cfg.tol);
    Matrix rebuilt = Matrix::Zero(n * n, n * n);
    for (const auto& v : ks) rebuilt += ad_v(v).choi();
    const double r = (rebuilt - phi.choi()).norm();
    if (r > 1e-8 || int(ks.size()) > n * n)
      out.fail(seed, "Kraus reconstruction residual " + fmt(r),
               {{"phi", map_to_json(phi)}});
  } catch (const NotCompletelyPositiveError&) {
    out.fail(seed, "kraus rejected a CP map", {{"phi", map_to_json(phi)}});
  }

  // Random Hermiticity-preserving map: kraus succeeds iff CP.
  QuantumMap psi = random_hp_map(n, rng);
  const bool cp = membership(psi, ConeTag::CP, cfg).is_in();
  bool extracted = true;
  try {
    (void)kraus(psi, cfg.tol);
  } catch (const NotCompletelyPositiveError&) {
    extracted = false;
  }
  if (cp != extracted)
    out.fail(seed, "kraus success disagrees with the CP verdict",
             {{"phi", map_to_json(psi)}});

  // The transpose map: not CP (margin -1), but copositive.
  Verdict t_cp = membership(transpose_map(n), ConeTag::CP, cfg);
  if (!t_cp.is_out() || std::abs(t_cp.margin + 1.0) > 1e-12)
    out.fail(seed, "transpose map should be CP-Out with margin -1", json::object());
  if (!membership(transpose_map(n), ConeTag::CoCP, cfg).is_in())
    out.fail(seed, "transpose map should be copositive", json::object());
}

const std::vector<ConeTag> kDualityCones = {ConeTag::CP, ConeTag::PPTCONE,
                                            ConeTag::POS};

void suite_t1(int n, std::uint64_t seed, const OracleConfig& cfg,
              TrialResult& out) {
  for (std::size_t c = 0; c < kDualityCones.size(); ++c) {
    const ConeId k = kDualityCones[c];
    const ConeId dual = dual_cone(k);
    const std::uint64_t s = split_seed(seed, c);
    QuantumMap phi = sample_member(dual, n, s);
    Verdict base = membership(phi, dual, cfg, s);
    if (base.is_out()) {
      out.fail(seed, "sampled " + cone_name(dual) + " member tests Out",
               {{"phi", map_to_json(phi)}});
      continue;
    }
    if (!base.is_in()) {
      out.count("T1 " + cone_name(dual) + " base undecided");
      continue;
    }
    out.count("T1 " + cone_name(dual) + " members checked");
    for (const auto& [name, image] :
         {std::pair{"adjoint", adjoint(phi)},
          std::pair{"t-conjugate", t_conjugate(phi)}}) {
      Verdict v = membership(image, dual, cfg, s + 1);
      if (v.is_out())
        out.fail(seed,
                 std::string(name) + " of a " + cone_name(dual) +
                     " member tests Out",
                 {{"phi", map_to_json(phi)}});
    }
  }
}

QuantumMap c9_candidate(int n, Rng& rng) {
  const std::uint64_t s = rng.next();
  switch (rng.uniform_int(0, 4)) {
    case 0: return sample_member(ConeTag::CP, n, s);
    case 1: return sample_member(ConeTag::POS, n, s);
    case 2: return sample_member(ConeTag::SP, n, s);
    case 3: return sample_member(ConeTag::DEC, n, s);
    default: return random_hp_map(n, rng);
  }
}

void suite_c9(int n, std::uint64_t seed, const OracleConfig& cfg,
              TrialResult& out) {
  Rng rng(seed);
  QuantumMap beta = c9_candidate(n, rng);
  for (std::size_t c = 0; c < kDualityCones.size(); ++c) {
    const ConeId k = kDualityCones[c];
    const std::uint64_t s = split_seed(seed, c);
    Verdict sharp = k_sharp_membership(beta, k, 32, s, cfg);
    Verdict dual = membership(beta, dual_cone(k), cfg, s);
    if (contradicts(sharp, dual))
      out.fail(seed,
               "K# and K° disagree for K = " + cone_name(k) + ": sharp " +
                   to_string(sharp.state) + ", dual " + to_string(dual.state),
               {{"beta", map_to_json(beta)}});
    if (sharp.is_out()) {
      QuantumMap alpha(n, *sharp.certificate);
      if (membership(alpha, k, cfg, s).is_out())
        out.fail(seed, "K# witness is not a member of K",
                 {{"beta", map_to_json(beta)}});
      if (!is_psd(compose(beta, adjoint(alpha)).choi(), cfg.tol).is_out())
        out.fail(seed, "K# witness does not break complete positivity",
                 {{"beta", map_to_json(beta)}});
    }
    out.count(std::string("C9 ") + cone_name(k) + " sharp=" +
              to_string(sharp.state) + " dual=" + to_string(dual.state));
  }
}

StateFunctional random_functional(int n, Rng& rng) {
  const int d = n * n;
  switch (rng.uniform_int(0, 2)) {
    case 0:
      return StateFunctional(n, random_density(d, rng.uniform_int(1, d), rng),
                             true);
    case 1: {
      // Indefinite, trace one.
      Matrix h = random_hermitian(d, rng);
      h += (1.0 - h.trace().real()) / d * identity(d);
      return StateFunctional(n, h);
    }
    default: {
      // Slightly perturbed state: often barely indefinite.
      Matrix h = random_density(d, rng.uniform_int(1, d), rng) +
                 0.05 * random_hermitian(d, rng);
      return StateFunctional(n, h);
    }
  }
}

void suite_t10(int n, std::uint64_t seed, const OracleConfig& cfg,
               TrialResult& out) {
  Rng rng(seed);
  StateFunctional rho = random_functional(n, rng);
  for (ConeTag tag : {ConeTag::CP, ConeTag::PPTCONE, ConeTag::POS}) {
    Theorem10Report rep =
        theorem10_check(rho, tag, cfg, split_seed(seed, int(tag)), {16});
    if (!rep.consistent)
      out.fail(seed, "T10 conditions contradict for K = " + cone_name(tag),
               {{"rho", functional_to_json(rho)},
               {"report", report_to_json(rep)}});
    if (tag == ConeTag::CP) {
      const bool psd = is_psd(rho.density(), cfg.tol).is_in();
      if (rep.conditions[1].is_out() == psd)
        out.fail(seed, "T10(ii) for CP disagrees with is_psd(h)",
                 {{"rho", functional_to_json(rho)}});
    }
  }
}

void suite_t11(int n, std::uint64_t seed, const OracleConfig& cfg,
               TrialResult& out) {
  Rng rng(seed);
  StateFunctional rho = random_functional(n, rng);
  Theorem11Report rep = theorem11_check(rho, cfg, seed, {16});
  if (!rep.consistent)
    out.fail(seed, "T11 conditions contradict",
             {{"rho", functional_to_json(rho)}, {"report", report_to_json(rep)}});
  if (looks_like_state(rho.density())) {
    Verdict ppt = is_ppt_state(rho, cfg.tol);
    if (contradicts(ppt, rep.conditions[0]))
      out.fail(seed, "T11(i) disagrees with is_ppt_state",
               {{"rho", functional_to_json(rho)}});
    Verdict as_map = membership(map_of_functional(rho), ConeTag::PPTCONE, cfg);
    if (contradicts(ppt, as_map))
      out.fail(seed, "PPT state but map not in the PPT cone (or converse)",
               {{"rho", functional_to_json(rho)}});
  }
}

Matrix r9_operator(int n, Rng& rng) {
  switch (rng.uniform_int(0, 3)) {
    case 0:
      return sample_member(ConeTag::POS, n, rng.next()).choi();
    case 1:
      return sample_member(ConeTag::DEC, n, rng.next()).choi();
    case 2: {
      // Entangled projector shifted into the block-positive boundary region.
      Vector v = random_unit_vector(n * n, rng);
      return identity(n * n) * (0.2 + 0.6 * rng.uniform()) - projector(v);
    }
    default: {
      Matrix h = random_hermitian(n * n, rng);
      const double lmin = hermitian_eigen(h).values(0);
      return h - (lmin + 0.5 * rng.normal()) * identity(n * n);
    }
  }
}

void suite_r9(int n, std::uint64_t seed, const OracleConfig& cfg,
              TrialResult& out) {
  Rng rng(seed);
  Matrix x = r9_operator(n, rng);
  Verdict bp = in_cone_C(x, cfg, split_seed(seed, 1));

  double sampled_min = std::numeric_limits<double>::infinity();
  Rng prod(split_seed(seed, 2));
  for (int s = 0; s < 10000; ++s) {
    Vector xi = random_unit_vector(n, prod);
    Vector eta = random_unit_vector(n, prod);
    sampled_min = std::min(sampled_min, product_expectation(x, n, xi, eta));
  }
  const bool sampled_negative = sampled_min < -1e-9;
  if (bp.is_in() && sampled_negative)
    out.fail(seed, "block-positive In but a product state is negative: " +
                       fmt(sampled_min),
             {{"x", matrix_to_json(x)}});
  if (bp.is_out()) {
    const Vector w = bp.certificate->col(0);
    const double val = w.dot(x * w).real();
    if (std::abs(val - bp.margin) > 1e-9 || val >= 0 ||
        std::abs(w.norm() - 1.0) > 1e-9)
      out.fail(seed, "product-vector certificate does not reproduce margin",
               {{"x", matrix_to_json(x)}});
  }
  if (sampled_negative && !bp.is_out())
    out.fail(seed, "sampling found a negative product state the oracle missed",
             {{"x", matrix_to_json(x)}});
  out.count(std::string("R9 verdict ") + to_string(bp.state));
}

void suite_rdec(int n, std::uint64_t seed, const OracleConfig& cfg,
                TrialResult& out) {
  Rng rng(seed);
  StateFunctional rho(n, random_density(n * n, rng.uniform_int(1, n * n), rng),
                      true);
  Verdict ppt = is_ppt_state(rho, cfg.tol);
  Verdict dec = membership(map_of_functional(rho), ConeTag::DEC, cfg);
  out.count(std::string("R-DEC ppt=") + to_string(ppt.state) +
            " dec=" + to_string(dec.state));

  // rho on { x >= 0 : (iota (x) t)(x) >= 0 }, sampled through PPT states.
  double worst = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 16; ++s) {
    auto obj = gen_random(RandomKind::PptState, n, split_seed(seed, 100 + s));
    worst = std::min(worst, rho(std::get<StateFunctional>(obj).density()).real());
  }
  out.count(std::string("R-DEC ppt=") + to_string(ppt.state) +
            " positive-on-ppt-cone=" + (worst >= -cfg.tol.abs_eps ? "yes" : "no"));
}

struct SuiteDef {
  const char* id;
  const char* style;
  TrialFn fn;
};

const std::vector<SuiteDef>& registry() {
  static const std::vector<SuiteDef> defs = {
      {"L3", "residual", suite_l3},
      {"L4a", "residual", suite_l4a},
      {"L4b", "residual", suite_l4b},
      {"T1", "non-contradiction", suite_t1},
      {"C9", "non-contradiction", suite_c9},
      {"CHOI", "residual", suite_choi},
      {"TT", "residual", suite_tt},
      {"T10", "non-contradiction", suite_t10},
      {"T11", "non-contradiction", suite_t11},
      {"R9", "non-contradiction", suite_r9},
      {"R-DEC", "recorded", suite_rdec},
  };
  return defs;
}

const SuiteDef& find_suite(const std::string& id) {
  for (const auto& d : registry())
    if (id == d.id) return d;
  throw UnknownSuiteError("unknown suite '" + id + "'");
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& d : registry()) v.push_back(d.id);
    return v;
  }();
  return ids;
}

std::uint64_t trial_seed(const std::string& suite_id, std::uint64_t base,
                         int trial) {
  return split_seed(base ^ fnv1a(suite_id), std::uint64_t(trial));
}

SuiteReport run_suite(const std::string& suite_id, int n, int trials,
                      std::uint64_t seed, Execution exec,
                      const OracleConfig& cfg) {
  const SuiteDef& def = find_suite(suite_id);
  if (n < 2 || n > 4)
    throw std::invalid_argument("run_suite: n must be 2, 3 or 4");
  if (trials < 1) throw std::invalid_argument("run_suite: trials must be >= 1");

  const auto start = std::chrono::steady_clock::now();
  OracleConfig inner = cfg;
  inner.exec = Execution::Serial;
  std::vector<TrialResult> results(trials);
  auto run_one = [&](int t) {
    const std::uint64_t s = trial_seed(suite_id, seed, t);
    try {
      def.fn(n, s, inner, results[t]);
    } catch (const std::exception& e) {
      results[t].fail(s, std::string("exception: ") + e.what(), json::object());
    }
  };
  if (exec == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < trials; ++t) run_one(t);
  } else {
    for (int t = 0; t < trials; ++t) run_one(t);
  }

  SuiteReport rep;
  rep.suite_id = def.id;
  rep.n = n;
  rep.trials = trials;
  rep.seed = seed;
  rep.assertion_style = def.style;
  std::map<std::string, long> counters;
  for (auto& r : results) {
    for (auto& f : r.failures) rep.failures.push_back(std::move(f));
    for (const auto& [k, v] : r.counters) counters[k] += v;
  }
  for (const auto& [k, v] : counters)
    rep.notes.push_back(k + ": " + std::to_string(v));
  rep.pass = rep.failures.empty();
  rep.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return rep;
}

std::vector<SuiteFailure> replay_trial(const std::string& suite_id, int n,
                                       std::uint64_t seed,
                                       const OracleConfig& cfg) {
  const SuiteDef& def = find_suite(suite_id);
  OracleConfig inner = cfg;
  inner.exec = Execution::Serial;
  TrialResult r;
  try {
    def.fn(n, seed, inner, r);
  } catch (const std::exception& e) {
    r.fail(seed, std::string("exception: ") + e.what(), json::object());
  }
  return r.failures;
}

json suite_report_to_json(const SuiteReport& r, bool include_timing) {
  json failures = json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"seed", f.seed},
                        {"description", f.description},
                        {"inputs", json::parse(f.inputs)}});
  json j = {{"suite_id", r.suite_id},
            {"n", r.n},
            {"trials", r.trials},
            {"seed", r.seed},
            {"version", CONEKIT_VERSION},
            {"assertion_style", r.assertion_style},
            {"pass", r.pass},
            {"failures", std::move(failures)},
            {"notes", r.notes}};
  if (include_timing) j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

std::string failures_fingerprint(const SuiteReport& r) {
  json failures = json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"seed", f.seed},
                        {"description", f.description},
                        {"inputs", f.inputs}});
  return failures.dump();
}

}  // namespace conekit
