#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "cgt/perm_group.hpp"

namespace cgt {

// Group JSON: {"degree": n, "generators": [[images...], ...], "name": "..."}.
// Points are 0-based; orders, when present, are decimal strings.

inline nlohmann::json group_to_json(const PermGroup& g, const std::string& name = "") {
  nlohmann::json j;
  j["degree"] = g.degree();
  j["generators"] = nlohmann::json::array();
  for (const auto& p : g.generators()) j["generators"].push_back(p.images());
  if (!name.empty()) j["name"] = name;
  j["order"] = g.order().to_string();
  return j;
}

inline PermGroup group_from_json(const nlohmann::json& j, std::string* name = nullptr) {
  if (!j.contains("degree") || !j.contains("generators"))
    throw std::invalid_argument("group json: missing degree or generators");
  Point n = j.at("degree").get<Point>();
  std::vector<Perm> gens;
  for (const auto& arr : j.at("generators"))
    gens.emplace_back(arr.get<std::vector<Point>>());
  if (name) *name = j.value("name", "");
  return PermGroup::from_generators(n, gens);
}

inline void save_group(const PermGroup& g, const std::string& path,
                       const std::string& name = "") {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << group_to_json(g, name).dump(2) << '\n';
}

inline PermGroup load_group(const std::string& path, std::string* name = nullptr) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  nlohmann::json j;
  in >> j;
  return group_from_json(j, name);
}

}  // namespace cgt
