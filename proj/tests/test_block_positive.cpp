#include "conekit/block_positive.hpp"

#include "doctest.h"
#include "helpers.hpp"

using namespace conekit;

namespace {

Matrix reduction_witness_choi(int n) {
  return identity(n * n) / double(n) - projector(max_entangled(n));
}

// Brute-force product minimum by random sampling, independent of the
// seesaw.
double sampled_min(const Matrix& x, int n, int samples, std::uint64_t seed) {
  Rng rng(seed);
  double best = 1e300;
  for (int s = 0; s < samples; ++s) {
    Vector v = product_vector(random_unit_vector(n, rng), random_unit_vector(n, rng)).col(0);
    best = std::min(best, (v.adjoint() * x * v)(0, 0).real());
  }
  return best;
}

}  // namespace

TEST_CASE("block positivity examples") {
  const Tolerance tol;
  for (int n : {2, 3}) {
    const int r = confident_restarts(n);
    CHECK(is_block_positive(swap_operator(n), n, r, tol, 1).is_in());
    CHECK(is_block_positive(reduction_witness_choi(n), n, r, tol, 1).is_in());

    Verdict v = is_block_positive(-identity(n * n), n, r, tol, 1);
    REQUIRE(v.is_out());
    CHECK(v.margin == doctest::Approx(-1.0).epsilon(1e-12));
  }

  // x = 2|Omega><Omega| - (1/n) 1 at n = 2: <xi(x)eta|x|xi(x)eta>
  // = |<conj xi|eta>|^2 - 1/2, negative for orthogonal conj(xi), eta.
  Matrix x = 2.0 * projector(max_entangled(2)) - 0.5 * identity(4);
  Verdict v = is_block_positive(x, 2, confident_restarts(2), tol, 3);
  REQUIRE(v.is_out());
  CHECK(v.margin == doctest::Approx(-0.5).epsilon(1e-9));
  const Vector w = v.certificate->col(0);
  CHECK((w.adjoint() * x * w)(0, 0).real() == doctest::Approx(v.margin).epsilon(1e-9));
  // The certificate is a unit product vector: its 2x2 reshape has rank one.
  Eigen::Matrix2cd reshaped;
  reshaped << w(0), w(1), w(2), w(3);
  CHECK(std::abs(reshaped.determinant()) < 1e-9);
  CHECK(w.norm() == doctest::Approx(1.0));
}

TEST_CASE("PSD inputs are block positive") {
  Rng rng(21);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 2;
    Matrix rho = random_density(n * n, 1 + t % (n * n), rng);
    CHECK(is_block_positive(rho, n, 1, Tolerance{}, t).is_in());
  }
}

TEST_CASE("seesaw minimum is below random sampling") {
  Rng rng(22);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 2;
    Matrix h = random_hermitian(n * n, rng);
    ProductMinimum m = min_product_value(h, n, confident_restarts(n), t);
    CHECK(m.value <= sampled_min(h, n, 2000, t) + 1e-9);
    CHECK(product_expectation(h, n, m.xi, m.eta) == doctest::Approx(m.value).epsilon(1e-12));
  }
}

TEST_CASE("serial and parallel restarts agree exactly") {
  Rng rng(23);
  for (int n : {2, 3, 4}) {
    Matrix h = random_hermitian(n * n, rng);
    ProductMinimum s = min_product_value(h, n, 64, 99, Execution::Serial);
    ProductMinimum p = min_product_value(h, n, 64, 99, Execution::Parallel);
    CHECK(s.value == p.value);
    CHECK(s.restart == p.restart);
    CHECK(s.agreeing == p.agreeing);
    CHECK((s.xi - p.xi).norm() == 0.0);
  }
}

TEST_CASE("too few restarts never claim In for an indefinite input") {
  // SWAP is block positive but not PSD; below the restart budget the oracle
  // must stay Unknown.
  Verdict v = is_block_positive(swap_operator(2), 2, 5, Tolerance{}, 1);
  CHECK(v.is_unknown());
}
