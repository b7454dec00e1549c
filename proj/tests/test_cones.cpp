#include "conekit/cones.hpp"
#include "conekit/decomposable.hpp"

#include "doctest.h"
#include "helpers.hpp"

using namespace conekit;
using testing_util::dist;

namespace {

const ConeTag kConcrete[] = {ConeTag::CP,  ConeTag::CoCP, ConeTag::PPTCONE,
                             ConeTag::POS, ConeTag::SP,   ConeTag::DEC};

}  // namespace

TEST_CASE("membership examples") {
  const OracleConfig cfg;
  for (int n : {2, 3}) {
    CHECK(membership(identity_map(n), ConeTag::CP, cfg).is_in());
    CHECK(membership(identity_map(n), ConeTag::CoCP, cfg).is_out());
    CHECK(membership(identity_map(n), ConeTag::POS, cfg).is_in());
    CHECK(membership(identity_map(n), ConeTag::DEC, cfg).is_in());
    CHECK(membership(identity_map(n), ConeTag::SP, cfg).is_out());

    Verdict t_cp = membership(transpose_map(n), ConeTag::CP, cfg);
    REQUIRE(t_cp.is_out());
    CHECK(t_cp.margin == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(membership(transpose_map(n), ConeTag::CoCP, cfg).is_in());
    CHECK(membership(transpose_map(n), ConeTag::PPTCONE, cfg).is_out());
    CHECK(membership(transpose_map(n), ConeTag::POS, cfg).is_in());

    // x -> Tr(x) 1/n is entanglement breaking.
    for (ConeTag k : kConcrete) CHECK(membership(depolarizing_map(n), k, cfg).is_in());

    // The reduction witness is positive and co-CP but not CP.
    CHECK(membership(reduction_witness(n), ConeTag::POS, cfg).is_in());
    CHECK(membership(reduction_witness(n), ConeTag::CoCP, cfg).is_in());
    CHECK(membership(reduction_witness(n), ConeTag::CP, cfg).is_out());
    CHECK(membership(reduction_witness(n), ConeTag::DEC, cfg).is_in());
  }
  // Choi's map is positive but not decomposable; DEC can only say Unknown.
  CHECK_FALSE(membership(choi_map3(), ConeTag::POS, cfg).is_out());
  CHECK(membership(choi_map3(), ConeTag::DEC, cfg).is_unknown());
  CHECK(membership(choi_map3(), ConeTag::CP, cfg).is_out());
  CHECK(membership(choi_map3(), ConeTag::CoCP, cfg).is_out());

  // -iota is not positive; the certificate is a product vector.
  QuantumMap neg(2, -identity_map(2).choi());
  Verdict v = membership(neg, ConeTag::POS, cfg);
  REQUIRE(v.is_out());
  const Vector w = v.certificate->col(0);
  CHECK((w.adjoint() * neg.choi() * w)(0, 0).real() == doctest::Approx(v.margin));
}

TEST_CASE("duality registry") {
  for (ConeTag k : kConcrete) {
    CHECK(dual_cone(dual_cone(k)) == ConeId(k));
    CHECK(parse_cone(cone_name(k)) == ConeId(k));
  }
  CHECK(dual_cone(ConeTag::POS) == ConeId(ConeTag::SP));
  CHECK(dual_cone(ConeTag::PPTCONE) == ConeId(ConeTag::DEC));
  CHECK(dual_cone(ConeTag::CP) == ConeId(ConeTag::CP));
  CHECK(duality_registry().size() >= 4);
  CHECK_THROWS_AS(parse_cone("nope"), UnsupportedConeError);
  CHECK_THROWS_AS(dual_cone(ConeId::sampled({identity_map(2)})), UnsupportedConeError);
}

TEST_CASE("pairing examples") {
  for (int n : {2, 3, 4}) {
    CHECK(pairing(identity_map(n), reduction_witness(n)) == doctest::Approx(1.0 - n).epsilon(1e-12));
    CHECK(pairing(identity_map(n), transpose_map(n)) == doctest::Approx(double(n)).epsilon(1e-12));
    CHECK(pairing(identity_map(n), identity_map(n)) == doctest::Approx(double(n * n)));
  }
  CHECK_THROWS_AS(pairing(identity_map(2), identity_map(3)), DimensionError);
}

TEST_CASE("samplers land in their cones") {
  const OracleConfig cfg;
  for (int n : {2, 3}) {
    for (ConeTag k : kConcrete) {
      for (int s = 0; s < 5; ++s) {
        QuantumMap phi = sample_member(k, n, 100 + s);
        CHECK(phi.choi().trace().real() == doctest::Approx(double(n)));
        if (k == ConeTag::SP && n == 3) continue;  // separability may be undecided
        CHECK_FALSE(membership(phi, k, cfg, s).is_out());
      }
    }
  }
  CHECK(dist(sample_member(ConeTag::CP, 3, 5).choi(), sample_member(ConeTag::CP, 3, 5).choi()) == 0.0);
}

TEST_CASE("cone inclusions") {
  // SP in PPTCONE in CP in DEC in POS, on sampled members.
  const OracleConfig cfg;
  for (int s = 0; s < 10; ++s) {
    const int n = 2 + s % 2;
    QuantumMap sp = sample_member(ConeTag::SP, n, s);
    CHECK(membership(sp, ConeTag::PPTCONE, cfg).is_in());
    QuantumMap cp = sample_member(ConeTag::CP, n, s);
    CHECK(membership(cp, ConeTag::DEC, cfg).is_in());
    CHECK_FALSE(membership(cp, ConeTag::POS, cfg, s).is_out());
    QuantumMap dec = sample_member(ConeTag::DEC, n, s);
    CHECK_FALSE(membership(dec, ConeTag::POS, cfg, s).is_out());
  }
}

TEST_CASE("mapping cones are closed under CP pre- and post-composition") {
  const OracleConfig cfg;
  Rng rng(31);
  for (ConeTag k : {ConeTag::CP, ConeTag::CoCP, ConeTag::PPTCONE, ConeTag::POS}) {
    for (int s = 0; s < 5; ++s) {
      const int n = 2 + s % 2;
      QuantumMap phi = sample_member(k, n, 200 + s);
      QuantumMap wrapped = compose(ad_v(ginibre(n, n, rng)), compose(phi, ad_v(ginibre(n, n, rng))));
      CHECK_FALSE(membership(wrapped, k, cfg, s).is_out());
    }
  }
}

TEST_CASE("DEC splits are genuine") {
  for (int s = 0; s < 10; ++s) {
    const int n = 2 + s % 2;
    QuantumMap phi = sample_member(ConeTag::DEC, n, 300 + s);
    DecSplit d = decompose_dec(phi.choi(), n);
    REQUIRE(d.converged);
    CHECK(hermitian_eigen(d.a).values(0) >= -1e-12);
    CHECK(hermitian_eigen(d.b).values(0) >= -1e-12);
    CHECK(dist(phi.choi(), d.a + partial_transpose(d.b, n)) <= 1e-7);
    CHECK(d.residual == doctest::Approx(dist(phi.choi(), d.a + partial_transpose(d.b, n))));
  }
  DecSplit choi = decompose_dec(choi_map3().choi(), 3, 500);
  CHECK_FALSE(choi.converged);
}

TEST_CASE("sampled dual membership") {
  // CP is self-dual, so t is outside CP° and the witness is a CP map.
  Verdict v = dual_membership_sampled(transpose_map(2), ConeTag::CP, 50, 1);
  REQUIRE(v.is_out());
  CHECK(is_psd(*v.certificate).is_in());
  CHECK(hs_pair(transpose_map(2).choi(), *v.certificate).real() == doctest::Approx(v.margin));

  v = dual_membership_sampled(identity_map(2), ConeTag::CP, 50, 1);
  CHECK(v.is_unknown());
  CHECK(v.margin >= 0.0);

  // The reduction witness pairs negatively with iota, which lies in POS.
  CHECK(dual_membership_sampled(reduction_witness(2), ConeTag::POS, 200, 2).is_out());
  // POS° = SP, and depolarizing is in SP.
  CHECK_FALSE(dual_membership_sampled(depolarizing_map(2), ConeTag::POS, 100, 3).is_out());
}

TEST_CASE("K-sharp membership") {
  CHECK(k_sharp_membership(identity_map(2), ConeTag::CP, 20, 1).is_in());
  Verdict v = k_sharp_membership(transpose_map(2), ConeTag::CP, 20, 1);
  REQUIRE(v.is_out());
  QuantumMap alpha(2, *v.certificate);
  CHECK(is_psd(compose(transpose_map(2), adjoint(alpha)).choi()).is_out());
  CHECK(k_sharp_membership(transpose_map(2), ConeTag::CoCP, 20, 1).is_in());
}

TEST_CASE("P(B(H), K) samples") {
  const OracleConfig cfg;
  // K = CP: the samples are PSD.
  for (const Matrix& x : sample_PBK(ConeTag::CP, 3, 10, 4)) CHECK(is_psd(x).is_in());
  // K = POS and PPTCONE: (iota (x) beta)(x) is PSD for beta drawn from K.
  for (ConeTag k : {ConeTag::POS, ConeTag::PPTCONE}) {
    auto xs = sample_PBK(k, 2, 10, 5);
    REQUIRE(xs.size() == 10);
    for (int i = 0; i < 10; ++i) {
      QuantumMap beta = sample_member(k, 2, 900 + i);
      Matrix y = apply_second(beta, xs[i]);
      CHECK(hermitian_eigen(hermitian_part(y)).values(0) >= -1e-9 * std::max(1.0, y.norm()));
    }
  }
}

TEST_CASE("caller-defined cones") {
  Rng rng(41);
  std::vector<QuantumMap> gens = {ad_v(ginibre(2, 2, rng)), ad_v(ginibre(2, 2, rng))};
  ConeId k = ConeId::sampled(gens);
  CHECK_FALSE(k.concrete());
  CHECK(cone_name(k) == "sampled");
  CHECK(membership(gens[1], k).is_in());
  CHECK_FALSE(membership(transpose_map(2), k).is_in());
  QuantumMap draw = sample_member(k, 2, 7);
  CHECK(is_psd(draw.choi()).is_in());
  CHECK_THROWS_AS(membership(identity_map(3), k), DimensionError);
  CHECK_THROWS(ConeId::sampled({}));
}
