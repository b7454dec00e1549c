#include "conekit/maps.hpp"

#include "doctest.h"
#include "helpers.hpp"

using namespace conekit;
using testing_util::dist;

namespace {

Matrix c_iota(int n) {
  Matrix c = Matrix::Zero(n * n, n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c += tensor(matrix_unit(n, i, j), matrix_unit(n, i, j));
  return c;
}

QuantumMap random_hp(int n, Rng& rng) {
  return QuantumMap(n, random_hermitian(n * n, rng));
}

QuantumMap random_kraus_map(int n, int k, Rng& rng) {
  std::vector<QuantumMap> parts;
  for (int i = 0; i < k; ++i) parts.push_back(ad_v(ginibre(n, n, rng)));
  return combine(parts, std::vector<double>(k, 1.0));
}

}  // namespace

TEST_CASE("Choi matrices of named maps") {
  for (int n : {2, 3}) {
    CHECK(dist(identity_map(n).choi(), c_iota(n)) == 0.0);
    CHECK(dist(transpose_map(n).choi(), swap_operator(n)) == 0.0);
    CHECK(dist(depolarizing_map(n).choi(), identity(n * n) / double(n)) < 1e-15);
    CHECK(dist(reduction_map(n).choi(), identity(n * n) - c_iota(n)) < 1e-15);
    CHECK(dist(reduction_witness(n).choi(),
               identity(n * n) / double(n) - projector(max_entangled(n))) < 1e-14);
  }
  // Choi's map on a diagonal input.
  Matrix x = Matrix::Zero(3, 3);
  x(0, 0) = 1.0;
  Matrix y = conekit::apply(choi_map3(), x);
  CHECK(y(0, 0).real() == doctest::Approx(1.0));  // 2*1 - 1
  CHECK(y(1, 1).real() == doctest::Approx(1.0));  // c = 1
  CHECK(std::abs(y(2, 2)) < 1e-15);               // b = 0
}

TEST_CASE("apply") {
  Rng rng(1);
  for (int n : {2, 3}) {
    Matrix x = ginibre(n, n, rng), v = ginibre(n, n, rng);
    CHECK(dist(conekit::apply(identity_map(n), x), x) < 1e-14);
    CHECK(dist(conekit::apply(transpose_map(n), x), x.transpose()) < 1e-14);
    CHECK(dist(conekit::apply(ad_v(v), x), v.adjoint() * x * v) < 1e-12);
    CHECK(dist(conekit::apply(depolarizing_map(n), x), x.trace() * identity(n) / double(n)) < 1e-13);
  }
  CHECK_THROWS_AS(conekit::apply(identity_map(2), identity(3)), DimensionError);
}

TEST_CASE("AdV closed form") {
  Rng rng(2);
  const int n = 2;
  Matrix v = ginibre(n, n, rng);
  Matrix c = ad_v(v).choi();
  // Block (k, l) is V^* e_kl V with entries conj(v_ki) v_lj.
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          CHECK(std::abs(c(k * n + i, l * n + j) - std::conj(v(k, i)) * v(l, j)) < 1e-14);
  CHECK(dist(ad_v(identity(3)).choi(), c_iota(3)) < 1e-15);
  CHECK(hermitian_eigen(c).values(n * n - 2) < 1e-12);  // rank one
}

TEST_CASE("adjoint") {
  Rng rng(3);
  for (int n : {2, 3}) {
    Matrix v = ginibre(n, n, rng);
    CHECK(dist(adjoint(ad_v(v)).choi(), ad_v(v.adjoint()).choi()) < 1e-12);
    CHECK(dist(conj_J(ad_v(v).choi(), n), ad_v(v.adjoint()).choi()) < 1e-12);
  }
  CHECK(dist(adjoint(identity_map(3)).choi(), identity_map(3).choi()) == 0.0);

  for (int t = 0; t < 100; ++t) {
    const int n = 3;
    QuantumMap phi = random_hp(n, rng);
    Matrix a = ginibre(n, n, rng), b = ginibre(n, n, rng);
    const cplx lhs = hs_pair(conekit::apply(phi, a), b);
    const cplx rhs = hs_pair(a, conekit::apply(adjoint(phi), b));
    CHECK(std::abs(lhs - rhs) < 1e-9);
  }
}

TEST_CASE("t-conjugation") {
  Rng rng(4);
  CHECK(dist(t_conjugate(identity_map(2)).choi(), identity_map(2).choi()) == 0.0);
  CHECK(dist(t_conjugate(transpose_map(2)).choi(), transpose_map(2).choi()) == 0.0);
  for (int n : {2, 3}) {
    QuantumMap phi = random_hp(n, rng);
    CHECK(dist(t_conjugate(phi).choi(), phi.choi().transpose()) < 1e-15);
    QuantumMap by_action = map_from_action(n, [&](const Matrix& x) {
      return Matrix(conekit::apply(phi, x.transpose()).transpose());
    });
    CHECK(dist(by_action.choi(), t_conjugate(phi).choi()) < 1e-12);
  }
}

TEST_CASE("involutions commute") {
  Rng rng(5);
  for (int n : {2, 3}) {
    QuantumMap phi = random_hp(n, rng);
    CHECK(dist(adjoint(adjoint(phi)).choi(), phi.choi()) < 1e-14);
    CHECK(dist(t_conjugate(t_conjugate(phi)).choi(), phi.choi()) < 1e-14);
    CHECK(dist(adjoint(t_conjugate(phi)).choi(), t_conjugate(adjoint(phi)).choi()) < 1e-14);
  }
}

TEST_CASE("compose") {
  Rng rng(6);
  for (int n : {2, 3}) {
    QuantumMap phi = random_hp(n, rng), psi = random_hp(n, rng), chi = random_hp(n, rng);
    CHECK(dist(compose(identity_map(n), phi).choi(), phi.choi()) < 1e-13);
    CHECK(dist(compose(phi, identity_map(n)).choi(), phi.choi()) < 1e-13);

    Matrix v = ginibre(n, n, rng), w = ginibre(n, n, rng);
    CHECK(dist(compose(ad_v(v), ad_v(w)).choi(), ad_v(w * v).choi()) < 1e-11);

    Matrix x = ginibre(n, n, rng);
    CHECK(dist(conekit::apply(compose(phi, psi), x), conekit::apply(phi, conekit::apply(psi, x))) < 1e-11);
    CHECK(dist(compose(compose(phi, psi), chi).choi(), compose(phi, compose(psi, chi)).choi()) <
          1e-12 * std::max(1.0, compose(phi, compose(psi, chi)).choi().norm()));

    CHECK(dist(t_conjugate(compose(phi, psi)).choi(),
               compose(t_conjugate(phi), t_conjugate(psi)).choi()) < 1e-9);
  }
  CHECK_THROWS_AS(compose(identity_map(2), identity_map(3)), DimensionError);
}

TEST_CASE("round trip through the action") {
  Rng rng(7);
  for (int n : {2, 3, 4}) {
    QuantumMap phi = random_hp(n, rng);
    QuantumMap back = map_from_action(n, [&](const Matrix& x) { return conekit::apply(phi, x); });
    CHECK(dist(back.choi(), phi.choi()) < 1e-12);
  }
  CHECK_THROWS_AS(map_from_action(2, [](const Matrix& x) { return Matrix(x * x); }),
                  NonlinearActionError);
}

TEST_CASE("Kraus decomposition") {
  Rng rng(8);
  // AdV has a single Kraus operator, V up to phase.
  Matrix v = ginibre(3, 3, rng);
  auto ks = kraus(ad_v(v));
  REQUIRE(ks.size() == 1);
  CHECK(testing_util::phase_dist(ks[0], v) < 1e-10);

  ks = kraus(identity_map(2));
  REQUIRE(ks.size() == 1);
  CHECK(testing_util::phase_dist(ks[0], identity(2)) < 1e-12);

  ks = kraus(depolarizing_map(2));
  REQUIRE(ks.size() == 4);
  for (const auto& k : ks) CHECK(k.norm() == doctest::Approx(1.0 / std::sqrt(2.0)));

  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 2;
    QuantumMap phi = random_kraus_map(n, 1 + t % (n * n), rng);
    CHECK(is_psd(phi.choi()).is_in());
    auto ops = kraus(phi);
    Matrix x = ginibre(n, n, rng), y = Matrix::Zero(n, n);
    for (const auto& k : ops) y += k.adjoint() * x * k;
    CHECK(dist(y, conekit::apply(phi, x)) < 1e-9 * std::max(1.0, y.norm()));
  }

  try {
    kraus(transpose_map(2));
    FAIL("transpose map accepted as CP");
  } catch (const NotCompletelyPositiveError& e) {
    CHECK(e.eigenvalue() == doctest::Approx(-1.0));
    const Vector& w = e.witness();
    CHECK((w.adjoint() * swap_operator(2) * w)(0, 0).real() == doctest::Approx(-1.0));
  }
}

TEST_CASE("functional correspondence") {
  Rng rng(9);
  CHECK(dist(functional_of_map(identity_map(3)).density(), c_iota(3)) == 0.0);

  StateFunctional mixed(2, identity(4) / 4.0, true);
  CHECK(dist(map_of_functional(mixed).choi(), identity(4) / 4.0) == 0.0);

  for (int n : {2, 3}) {
    QuantumMap phi = random_hp(n, rng);
    StateFunctional rho = functional_of_map(phi);
    // rho(a (x) b) = Tr(phi(a) b^T), evaluated independently.
    Matrix a = ginibre(n, n, rng), b = ginibre(n, n, rng);
    CHECK(std::abs(rho(tensor(a, b)) - hs_pair(conekit::apply(phi, a), b.transpose())) < 1e-10);
    CHECK(dist(map_of_functional(rho).choi(), phi.choi()) == 0.0);
  }
}

TEST_CASE("pi contraction and the factorization of phi~") {
  CHECK(dist(pi_contract(tensor(identity(2), identity(2)), 2), identity(2)) == 0.0);
  Rng rng(10);
  for (int n : {2, 3}) {
    Matrix a = ginibre(n, n, rng), b = ginibre(n, n, rng);
    CHECK(dist(pi_contract(tensor(a, b), n), b.transpose() * a) < 1e-12);
    for (int t = 0; t < 50; ++t) {
      QuantumMap phi = random_hp(n, rng);
      Matrix x = ginibre(n, n, rng), y = ginibre(n, n, rng);
      QuantumMap inner = t_conjugate(adjoint(phi));
      const cplx lhs = pi_contract(apply_second(inner, tensor(x, y)), n).trace();
      const cplx rhs = hs_pair(conekit::apply(phi, x), y.transpose());
      CHECK(std::abs(lhs - rhs) < 1e-9);
    }
  }
}

TEST_CASE("constructor validation") {
  Rng rng(11);
  CHECK_THROWS_AS(QuantumMap(2, identity(3)), DimensionError);
  CHECK_THROWS_AS(QuantumMap(2, ginibre(4, 4, rng)), NotHermitianError);
  CHECK_THROWS(StateFunctional(2, identity(4), true));  // trace 4
  CHECK_NOTHROW(StateFunctional(2, identity(4), false));
  CHECK(looks_like_state(identity(4) / 4.0));
  CHECK_FALSE(looks_like_state(swap_operator(2) / 2.0));
  CHECK(choi_distance(identity_map(2), transpose_map(2)) == doctest::Approx(2.0));
}
