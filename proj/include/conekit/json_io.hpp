#pragma once

// JSON wire formats.
//   ComplexMatrix    {"rows": r, "cols": c, "data": [[re, im], ...]}  row-major
//   QuantumMap       {"n": n, "choi": <ComplexMatrix>}
//   StateFunctional  {"n": n, "density": <ComplexMatrix>, "is_state": bool}
//   Verdict          {"state": "in|out|unknown", "margin": x, "witness": <ComplexMatrix>?}
//   Theorem report   {"theorem": "T10"|"T11", "cone": ..., "conditions": {"i": <Verdict>, ...},
//                     "consistent": bool}

#include <stdexcept>

#include "json.hpp"

#include "conekit/maps.hpp"
#include "conekit/separable.hpp"
#include "conekit/states.hpp"

namespace conekit {

using json = nlohmann::json;

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json map_to_json(const QuantumMap& phi);
QuantumMap map_from_json(const json& j);

json functional_to_json(const StateFunctional& rho);
StateFunctional functional_from_json(const json& j);

json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const json& j);

json decomposition_to_json(const SeparableDecomposition& d);

json report_to_json(const Theorem10Report& r);
json report_to_json(const Theorem11Report& r);

/// Either object kind, told apart by the "choi" / "density" key.
RandomObject object_from_json(const json& j);
json object_to_json(const RandomObject& o);

}  // namespace conekit
