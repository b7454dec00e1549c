#include "conekit/states.hpp"

#include "doctest.h"
#include "helpers.hpp"

using namespace conekit;
using testing_util::dist;

namespace {

Vector singlet() {
  Vector v = Vector::Zero(4);
  v(1) = 1.0 / std::sqrt(2.0);
  v(2) = -1.0 / std::sqrt(2.0);
  return v;
}

}  // namespace

TEST_CASE("Werner family") {
  CHECK(dist(werner_state(0.0).density(), identity(4) / 4.0) == 0.0);
  CHECK(dist(werner_state(1.0).density(), projector(singlet())) < 1e-15);
  CHECK_THROWS(werner_state(1.5));

  CHECK(is_ppt_state(werner_state(0.0)).is_in());
  CHECK(is_ppt_state(werner_state(0.25)).is_in());
  CHECK(is_ppt_state(werner_state(0.5)).is_out());
  Verdict v = is_ppt_state(werner_state(1.0));
  REQUIRE(v.is_out());
  CHECK(v.margin == doctest::Approx(-0.5).epsilon(1e-12));

  // lambda_min(h_p^Γ) = (1 - 3p) / 4, recomputed from the spectrum.
  for (double p : {0.1, 0.3, 0.6, 0.9}) {
    const double lam = hermitian_eigen(partial_transpose(werner_state(p).density(), 2)).values(0);
    CHECK(lam == doctest::Approx((1.0 - 3.0 * p) / 4.0).epsilon(1e-12));
  }

  const OracleConfig cfg;
  CHECK(is_separable(werner_state(0.25), cfg).verdict.is_in());
  CHECK(is_separable(werner_state(0.5), cfg).verdict.is_out());
}

TEST_CASE("functionals of Werner states round-trip through maps") {
  for (double p : {0.0, 0.4, 1.0}) {
    StateFunctional rho = werner_state(p);
    QuantumMap phi = map_of_functional(rho);
    CHECK(dist(phi.choi(), rho.density().transpose()) == 0.0);
    CHECK(dist(functional_of_map(phi).density(), rho.density()) == 0.0);
  }
}

TEST_CASE("PPT states and PPT-cone maps correspond") {
  // rho is PPT iff the map with Choi matrix h^T is in CP and CoCP.
  Rng rng(61);
  const OracleConfig cfg;
  for (int t = 0; t < 30; ++t) {
    const int n = 2 + t % 2;
    Matrix h = 0.4 * random_density(n * n, n * n, rng) + 0.6 * identity(n * n) / double(n * n);
    if (t % 2) h = random_density(n * n, 1, rng);
    StateFunctional rho(n, h, true);
    const bool ppt = is_ppt_state(rho).is_in();
    CHECK(membership(map_of_functional(rho), ConeTag::PPTCONE, cfg).is_in() == ppt);
  }
}

TEST_CASE("cone C is the block-positive cone") {
  const OracleConfig cfg;
  CHECK(in_cone_C(swap_operator(2), cfg).is_in());
  CHECK(in_cone_C(identity(9), cfg).is_in());
  Verdict v = in_cone_C(-swap_operator(2), cfg);
  REQUIRE(v.is_out());
  const Vector w = v.certificate->col(0);
  CHECK((w.adjoint() * -swap_operator(2) * w)(0, 0).real() == doctest::Approx(v.margin));
  // (iota (x) omega)(x) >= 0 for a few explicit states omega.
  Rng rng(62);
  for (int s = 0; s < 5; ++s) {
    QuantumMap omega = ad_v(random_unit_vector(2, rng) * random_unit_vector(2, rng).adjoint());
    Matrix y = apply_second(omega, swap_operator(2));
    CHECK(hermitian_eigen(hermitian_part(y)).values(0) >= -1e-12);
  }
  CHECK_THROWS_AS(in_cone_C(identity(5), cfg), DimensionError);
}

TEST_CASE("condition checker for symmetric cones, K = CP") {
  const OracleConfig cfg;
  Rng rng(63);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 2;
    // Hermitian, possibly indefinite densities.
    Matrix h = random_hermitian(n * n, rng) + 0.3 * (t % 3) * identity(n * n);
    StateFunctional rho(n, h);
    Theorem10Report r = theorem10_check(rho, ConeTag::CP, cfg, t, ConditionBudget{16});
    CHECK(r.consistent);
    CHECK(r.conditions[1].is_in() == is_psd(h).is_in());
    for (const Verdict& c : r.conditions) CHECK_FALSE(c.is_unknown());
  }
  // The maximally mixed state passes everything.
  Theorem10Report r = theorem10_check(werner_state(0.0), ConeTag::CP, cfg);
  for (const Verdict& c : r.conditions) CHECK(c.is_in());
}

TEST_CASE("condition checker, K = PPTCONE on Werner states") {
  const OracleConfig cfg;
  Theorem10Report half = theorem10_check(werner_state(0.5), ConeTag::PPTCONE, cfg, 1);
  CHECK(half.consistent);
  // h_{1/2} is NPT, yet its density is decomposable, so (i) holds and no
  // condition may come out negative.
  CHECK(half.conditions[0].is_in());
  for (const Verdict& c : half.conditions) CHECK_FALSE(c.is_out());
  const double lam = hermitian_eigen(partial_transpose(werner_state(0.5).density(), 2)).values(0);
  CHECK(lam == doctest::Approx(-0.125).epsilon(1e-12));

  Theorem10Report quarter = theorem10_check(werner_state(0.25), ConeTag::PPTCONE, cfg, 1);
  CHECK(quarter.consistent);
  REQUIRE(quarter.conditions[0].is_in());
  CHECK(quarter.conditions[0].margin < 1e-7);
  for (const Verdict& c : quarter.conditions) CHECK_FALSE(c.is_out());

  CHECK_THROWS_AS(theorem10_check(werner_state(0.0), ConeId::sampled({identity_map(2)}), cfg),
                  UnsupportedConeError);
}

TEST_CASE("PPT condition checker") {
  const OracleConfig cfg;
  Theorem11Report q = theorem11_check(werner_state(0.25), cfg, 1);
  CHECK(q.consistent);
  CHECK(q.conditions[0].is_in());
  CHECK_FALSE(q.conditions[1].is_out());
  CHECK_FALSE(q.conditions[2].is_out());

  Theorem11Report one = theorem11_check(werner_state(1.0), cfg, 1);
  CHECK(one.consistent);
  CHECK(one.conditions[0].is_out());
  REQUIRE(one.conditions[1].is_out());
  CHECK(one.conditions[1].margin == doctest::Approx(-0.5).epsilon(1e-9));
  // The witness is the partial transpose of |Phi+><Phi+|, i.e. SWAP / 2.
  const Matrix& x = *one.conditions[1].certificate;
  CHECK(dist(x, partial_transpose(projector(max_entangled(2)), 2)) < 1e-9);
  CHECK(dist(x, swap_operator(2) / 2.0) < 1e-12);
  CHECK(hs_pair(werner_state(1.0).density(), x).real() == doctest::Approx(-0.5).epsilon(1e-9));

  Rng rng(64);
  for (int t = 0; t < 20; ++t) {
    StateFunctional rho(2, random_density(4, 1 + t % 4, rng), true);
    Theorem11Report r = theorem11_check(rho, cfg, t, ConditionBudget{16});
    CHECK(r.consistent);
    CHECK(r.conditions[0].is_in() == is_ppt_state(rho).is_in());
  }
}

TEST_CASE("random objects") {
  CHECK(parse_kind("ppt-state") == RandomKind::PptState);
  CHECK(kind_name(RandomKind::SpMap) == "sp-map");
  CHECK_THROWS(parse_kind("bogus"));

  auto w = std::get<StateFunctional>(gen_random(RandomKind::Werner, 2, 1, 0.0));
  CHECK(dist(w.density(), identity(4) / 4.0) == 0.0);
  CHECK_THROWS(gen_random(RandomKind::Werner, 3, 1, 0.5));

  for (int n : {2, 3}) {
    auto s = std::get<StateFunctional>(gen_random(RandomKind::State, n, 5));
    CHECK(looks_like_state(s.density()));
    auto p = std::get<StateFunctional>(gen_random(RandomKind::PptState, n, 5));
    CHECK(is_ppt_state(p).is_in());
    auto c = std::get<QuantumMap>(gen_random(RandomKind::CpMap, n, 5));
    CHECK(is_psd(c.choi()).is_in());
    auto a = std::get<StateFunctional>(gen_random(RandomKind::State, n, 6));
    auto b = std::get<StateFunctional>(gen_random(RandomKind::State, n, 6));
    CHECK(dist(a.density(), b.density()) == 0.0);
  }
  CHECK_THROWS(gen_random(RandomKind::State, 0, 1));
}

TEST_CASE("state-only operations reject non-states") {
  StateFunctional not_state(2, swap_operator(2));
  CHECK_THROWS_AS(is_ppt_state(not_state), NotAStateError);
  CHECK_THROWS_AS(is_separable(not_state), NotAStateError);
}
