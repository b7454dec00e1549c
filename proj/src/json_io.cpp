#include "conekit/json_io.hpp"

#include <cmath>

namespace conekit {

namespace {

template <typename T>
T field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad field '") + key + "': " + e.what());
  }
}

const json& sub(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw FormatError(std::string("missing field '") + key + "'");
  return j[key];
}

const char* roman(std::size_t i) {
  static const char* names[] = {"i", "ii", "iii", "iv", "v"};
  return names[i];
}

}  // namespace

json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      data.push_back({m(i, j).real(), m(i, j).imag()});
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const json& j) {
  const auto rows = field<long long>(j, "rows");
  const auto cols = field<long long>(j, "cols");
  if (rows <= 0 || cols <= 0) throw FormatError("matrix: rows/cols must be positive");
  const json& data = sub(j, "data");
  if (!data.is_array() || (long long)data.size() != rows * cols)
    throw FormatError("matrix: data length must equal rows * cols");
  Matrix m(rows, cols);
  for (long long k = 0; k < rows * cols; ++k) {
    const json& e = data[k];
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() ||
        !e[1].is_number())
      throw FormatError("matrix: entries must be [re, im] pairs");
    const double re = e[0].get<double>();
    const double im = e[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
      throw FormatError("matrix: entries must be finite");
    m(k / cols, k % cols) = cplx(re, im);
  }
  return m;
}

json map_to_json(const QuantumMap& phi) {
  return {{"n", phi.n()}, {"choi", matrix_to_json(phi.choi())}};
}

QuantumMap map_from_json(const json& j) {
  const int n = field<int>(j, "n");
  return QuantumMap(n, matrix_from_json(sub(j, "choi")));
}

json functional_to_json(const StateFunctional& rho) {
  return {{"n", rho.n()},
          {"density", matrix_to_json(rho.density())},
          {"is_state", rho.is_state()}};
}

StateFunctional functional_from_json(const json& j) {
  const int n = field<int>(j, "n");
  const bool is_state = j.contains("is_state") ? field<bool>(j, "is_state") : false;
  return StateFunctional(n, matrix_from_json(sub(j, "density")), is_state);
}

json verdict_to_json(const Verdict& v) {
  json j = {{"state", to_string(v.state)}, {"margin", v.margin}};
  if (v.certificate) j["witness"] = matrix_to_json(*v.certificate);
  return j;
}

Verdict verdict_from_json(const json& j) {
  const auto s = field<std::string>(j, "state");
  const double margin = field<double>(j, "margin");
  std::optional<Matrix> w;
  if (j.contains("witness")) w = matrix_from_json(sub(j, "witness"));
  if (s == "in") return Verdict::in(margin, std::move(w));
  if (s == "unknown") return Verdict::unknown(margin, std::move(w));
  if (s == "out") {
    if (!w) throw FormatError("verdict: out without witness");
    return Verdict::out(std::move(*w), margin);
  }
  throw FormatError("verdict: unknown state '" + s + "'");
}

json decomposition_to_json(const SeparableDecomposition& d) {
  json terms = json::array();
  for (std::size_t k = 0; k < d.weights.size(); ++k)
    terms.push_back({{"weight", d.weights[k]},
                     {"a", matrix_to_json(d.factors[k].first)},
                     {"b", matrix_to_json(d.factors[k].second)}});
  return {{"terms", std::move(terms)}};
}

json report_to_json(const Theorem10Report& r) {
  json cond = json::object();
  for (std::size_t i = 0; i < r.conditions.size(); ++i)
    cond[roman(i)] = verdict_to_json(r.conditions[i]);
  return {{"theorem", "T10"},
          {"cone", cone_name(r.cone)},
          {"conditions", std::move(cond)},
          {"consistent", r.consistent}};
}

json report_to_json(const Theorem11Report& r) {
  json cond = json::object();
  for (std::size_t i = 0; i < r.conditions.size(); ++i)
    cond[roman(i)] = verdict_to_json(r.conditions[i]);
  return {{"theorem", "T11"},
          {"cone", "ppt-cone"},
          {"conditions", std::move(cond)},
          {"consistent", r.consistent}};
}

RandomObject object_from_json(const json& j) {
  if (j.is_object() && j.contains("choi")) return map_from_json(j);
  if (j.is_object() && j.contains("density")) return functional_from_json(j);
  throw FormatError("expected a QuantumMap or StateFunctional object");
}

json object_to_json(const RandomObject& o) {
  if (const auto* m = std::get_if<QuantumMap>(&o)) return map_to_json(*m);
  return functional_to_json(std::get<StateFunctional>(o));
}

}  // namespace conekit
