/// @file io_json.hpp
/// JSON loading and serialization shared by the CLI and the tests: metric
/// files, ansatz files, fixtures and report assembly.

#pragma once

#include "ka/g2_structures.hpp"
#include "ka/metric_lab.hpp"
#include "ka/quadratic_space.hpp"

#include <json.hpp>

#include <fstream>
#include <string>

namespace ka {

using Json = nlohmann::json;

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw input_error("expected integer or rational string");
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw input_error("JSON parse error in " + path + ": " + e.what());
  }
  return j;
}

/// {"metric": [[...7 entries...] x7]} with integer or "p/q" entries.
inline QuadraticSpace load_metric(const Json& j) {
  if (!j.contains("metric")) throw input_error("metric file must contain \"metric\"");
  const Json& rows = j.at("metric");
  if (!rows.is_array() || rows.size() != 7) throw input_error("metric must have 7 rows");
  Mat m(7, 7);
  for (size_t i = 0; i < 7; ++i) {
    if (!rows[i].is_array() || rows[i].size() != 7)
      throw input_error("metric row " + std::to_string(i + 1) + " must have 7 entries");
    for (size_t k = 0; k < 7; ++k) m(i, k) = rational_from_json(rows[i][k]);
  }
  int orientation = j.value("orientation", 1);
  return QuadraticSpace(m, orientation);
}

inline Json metric_to_json(const QuadraticSpace& q) {
  Json rows = Json::array();
  for (size_t i = 0; i < 7; ++i) {
    Json row = Json::array();
    for (size_t k = 0; k < 7; ++k) row.push_back(to_string(q.metric()(i, k)));
    rows.push_back(row);
  }
  return Json{{"metric", rows}, {"orientation", q.orientation()}};
}

/// {"H": [p, p, p], "E": [p, p, p], "G": p} in the polynomial grammar.
inline AnsatzMetric load_ansatz(const Json& j) {
  auto poly3 = [&](const char* key) {
    if (!j.contains(key)) throw input_error(std::string("ansatz file must contain \"") + key + "\"");
    const Json& arr = j.at(key);
    if (!arr.is_array() || arr.size() != 3)
      throw input_error(std::string(key) + " must be a list of 3 polynomials");
    std::array<Poly7, 3> out;
    for (int i = 0; i < 3; ++i) out[i] = parse_poly(arr[i].get<std::string>());
    return out;
  };
  if (!j.contains("G")) throw input_error("ansatz file must contain \"G\"");
  return AnsatzMetric(poly3("H"), poly3("E"), parse_poly(j.at("G").get<std::string>()));
}

inline Json fixtures_to_json(const std::vector<G2Fixture>& fixtures) {
  Json arr = Json::array();
  for (const auto& f : fixtures)
    arr.push_back(Json{{"signature", f.signature},
                       {"l", f.l},
                       {"kappa", f.kappa},
                       {"phi", f.phi_text}});
  return Json{{"fixtures", arr}};
}

inline std::vector<G2Fixture> fixtures_from_json(const Json& j) {
  std::vector<G2Fixture> out;
  for (const auto& f : j.at("fixtures")) {
    G2Fixture g;
    g.signature = f.at("signature").get<std::string>();
    g.l = f.at("l").get<int>();
    g.kappa = f.at("kappa").get<int>();
    g.phi_text = f.at("phi").get<std::string>();
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace ka
