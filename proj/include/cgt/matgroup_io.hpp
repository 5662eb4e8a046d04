#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cgt/matrix.hpp"

namespace cgt {

// Matrix-group JSON:
//   {"p": p, "k": k, "modulus": [c0..ck], "d": d,
//    "generators": [[[entry coeffs]..]..], "name": ...}
// Entries encode GF(p^k) elements as polynomial coefficient vectors
// (c0..c_{k-1}) in the power basis of the modulus root. The modulus is
// always the deterministic one for (p, k); a file carrying a different
// modulus is rejected rather than silently reinterpreted.

inline nlohmann::json matgroup_to_json(const MatrixGroup& m,
                                       const std::string& name = "") {
  nlohmann::json j;
  const Fq& f = m.field;
  j["p"] = f.p();
  j["k"] = f.k();
  j["modulus"] = f.modulus();
  j["d"] = m.dim;
  j["generators"] = nlohmann::json::array();
  for (const auto& g : m.generators) {
    nlohmann::json rows = nlohmann::json::array();
    for (uint32_t r = 0; r < m.dim; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (uint32_t c = 0; c < m.dim; ++c) row.push_back(f.coeffs(g.at(r, c)));
      rows.push_back(row);
    }
    j["generators"].push_back(rows);
  }
  if (!name.empty()) j["name"] = name;
  if (!m.provenance.empty()) j["provenance"] = m.provenance;
  return j;
}

inline MatrixGroup matgroup_from_json(const nlohmann::json& j) {
  uint32_t p = j.at("p").get<uint32_t>();
  uint32_t k = j.at("k").get<uint32_t>();
  uint32_t d = j.at("d").get<uint32_t>();
  Fq f = Fq::make(p, k);
  if (j.contains("modulus") &&
      j.at("modulus").get<std::vector<uint32_t>>() != f.modulus())
    throw std::invalid_argument(
        "matrix group json: modulus differs from the deterministic one");
  std::vector<FqMat> gens;
  for (const auto& rows : j.at("generators")) {
    FqMat g(f, d);
    for (uint32_t r = 0; r < d; ++r)
      for (uint32_t c = 0; c < d; ++c)
        g.at(r, c) = f.from_coeffs(rows.at(r).at(c).get<std::vector<uint32_t>>());
    gens.push_back(g);
  }
  return MatrixGroup(f, d, gens, j.value("provenance", ""));
}

inline void save_matgroup(const MatrixGroup& m, const std::string& path,
                          const std::string& name = "") {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << matgroup_to_json(m, name).dump(2) << '\n';
}

inline MatrixGroup load_matgroup(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  nlohmann::json j;
  in >> j;
  return matgroup_from_json(j);
}

}  // namespace cgt
