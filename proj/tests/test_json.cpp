#include "conekit/json_io.hpp"

#include "doctest.h"
#include "helpers.hpp"

using namespace conekit;
using testing_util::dist;

TEST_CASE("matrix round trip is exact") {
  Rng rng(71);
  Matrix m = ginibre(3, 5, rng);
  json j = matrix_to_json(m);
  CHECK(j["rows"] == 3);
  CHECK(j["cols"] == 5);
  CHECK(j["data"].size() == 15);
  CHECK(j["data"][1][0].get<double>() == m(0, 1).real());
  CHECK(dist(matrix_from_json(json::parse(j.dump())), m) == 0.0);
}

TEST_CASE("object round trips") {
  Rng rng(72);
  QuantumMap phi(3, random_hermitian(9, rng));
  QuantumMap phi2 = map_from_json(json::parse(map_to_json(phi).dump()));
  CHECK(phi2.n() == 3);
  CHECK(dist(phi2.choi(), phi.choi()) == 0.0);

  StateFunctional rho(2, random_density(4, 2, rng), true);
  StateFunctional rho2 = functional_from_json(functional_to_json(rho));
  CHECK(rho2.is_state());
  CHECK(dist(rho2.density(), rho.density()) == 0.0);

  RandomObject o = object_from_json(map_to_json(phi));
  CHECK(std::holds_alternative<QuantumMap>(o));
  o = object_from_json(functional_to_json(rho));
  CHECK(std::holds_alternative<StateFunctional>(o));
  CHECK(object_to_json(o) == functional_to_json(rho));

  Verdict v = Verdict::out(identity(2), -0.25);
  Verdict v2 = verdict_from_json(verdict_to_json(v));
  CHECK(v2.is_out());
  CHECK(v2.margin == -0.25);
  CHECK(dist(*v2.certificate, identity(2)) == 0.0);
  CHECK(verdict_from_json(verdict_to_json(Verdict::unknown(0.5))).is_unknown());
  CHECK_FALSE(verdict_to_json(Verdict::in(1.0)).contains("witness"));
}

TEST_CASE("reports") {
  Theorem11Report r = theorem11_check(werner_state(1.0), {}, 1, ConditionBudget{4});
  json j = report_to_json(r);
  CHECK(j["theorem"] == "T11");
  CHECK(j["conditions"].contains("iii"));
  CHECK(j["conditions"]["ii"]["state"] == "out");
  CHECK(j["consistent"] == true);

  Theorem10Report t = theorem10_check(werner_state(0.0), ConeTag::CP, {}, 1, ConditionBudget{4});
  json k = report_to_json(t);
  CHECK(k["cone"] == "cp");
  CHECK(k["conditions"].size() == 5);

  SeparableDecomposition d;
  d.weights = {0.5};
  d.factors = {{identity(2), identity(2)}};
  json dj = decomposition_to_json(d);
  CHECK(dj["terms"].size() == 1);
  CHECK(dj["terms"][0]["weight"] == 0.5);
}

TEST_CASE("malformed input raises FormatError") {
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows": 2, "cols": 2})")), FormatError);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows": 1, "cols": 2, "data": [[1, 0]]})")),
                  FormatError);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows": 1, "cols": 1, "data": [[1]]})")),
                  FormatError);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows": 1, "cols": 1, "data": [["a", 0]]})")),
                  FormatError);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows": -1, "cols": 1, "data": []})")),
                  FormatError);
  CHECK_THROWS_AS(matrix_from_json(json::parse(R"({"rows": "x", "cols": 1, "data": []})")),
                  FormatError);
  CHECK_THROWS_AS(map_from_json(json::parse(R"({"n": 2})")), FormatError);
  CHECK_THROWS_AS(functional_from_json(json::parse(R"([1, 2])")), FormatError);
  CHECK_THROWS_AS(object_from_json(json::parse(R"({"foo": 1})")), FormatError);
  CHECK_THROWS_AS(verdict_from_json(json::parse(R"({"state": "out", "margin": -1})")), FormatError);
  CHECK_THROWS_AS(verdict_from_json(json::parse(R"({"state": "maybe", "margin": 0})")), FormatError);
  // Well-formed JSON with a non-Hermitian Choi matrix is a validation error.
  json bad = map_to_json(identity_map(2));
  bad["choi"]["data"][1] = {1.0, 0.0};
  CHECK_THROWS_AS(map_from_json(bad), NotHermitianError);
}
