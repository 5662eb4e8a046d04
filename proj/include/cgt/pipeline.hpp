#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "cgt/catalog.hpp"
#include "cgt/closure.hpp"
#include "cgt/matgroup_io.hpp"

namespace cgt {

// The verification pipeline: classify each candidate by condition (A)
// (a regular faithful orbit), condition (B) (a 2-closed orbit restriction),
// or transitivity on the nonzero vectors, and emit machine-readable reports.

struct PipelineConfig {
  Parameters parameters;
  struct {
    std::string strategy = "exhaustive";  // exhaustive | random
    uint32_t max_samples = 256;
    uint64_t seed = 0;
  } alpha_search;
  struct {
    uint64_t domain = kVectorDomainBudget;
    Point backtrack_degree = 128;
    uint64_t enum_threshold = kEnumThreshold;
  } budgets;
  std::string candidate_source = "constructed";  // constructed | <file path>
  std::string spo_path = "data/spo_subgroups.json";
};

inline PipelineConfig pipeline_config_from_json(const nlohmann::json& j) {
  PipelineConfig c;
  const auto& p = j.at("parameters");
  c.parameters = {p.at("p").get<uint32_t>(), p.at("d").get<uint32_t>(),
                  p.at("a").get<uint32_t>(), p.at("e").get<uint32_t>()};
  if (j.contains("alpha_search")) {
    const auto& a = j.at("alpha_search");
    c.alpha_search.strategy = a.value("strategy", std::string("exhaustive"));
    c.alpha_search.max_samples = a.value("max_samples", 256u);
    c.alpha_search.seed = a.value("seed", uint64_t(0));
    if (c.alpha_search.max_samples < 1)
      throw std::invalid_argument("pipeline config: max_samples must be >= 1");
  }
  if (j.contains("budgets")) {
    const auto& b = j.at("budgets");
    c.budgets.domain = b.value("domain", kVectorDomainBudget);
    c.budgets.backtrack_degree = b.value("backtrack_degree", Point{128});
    c.budgets.enum_threshold = b.value("enum_threshold", kEnumThreshold);
  }
  c.candidate_source = j.value("candidate_source", std::string("constructed"));
  c.spo_path = j.value("spo_path", std::string("data/spo_subgroups.json"));
  return c;
}

inline nlohmann::json pipeline_config_to_json(const PipelineConfig& c) {
  nlohmann::json j;
  j["parameters"] = {{"p", c.parameters.p},
                     {"d", c.parameters.d},
                     {"a", c.parameters.a},
                     {"e", c.parameters.e}};
  j["alpha_search"] = {{"strategy", c.alpha_search.strategy},
                       {"max_samples", c.alpha_search.max_samples},
                       {"seed", c.alpha_search.seed}};
  j["budgets"] = {{"domain", c.budgets.domain},
                  {"backtrack_degree", c.budgets.backtrack_degree},
                  {"enum_threshold", c.budgets.enum_threshold}};
  j["candidate_source"] = c.candidate_source;
  j["spo_path"] = c.spo_path;
  return j;
}

struct CandidateReport {
  std::string name;
  BigUint order = BigUint(0);
  std::string classification;  // A | B | transitive | unresolved | skipped | error
  std::optional<std::vector<uint32_t>> witness;  // alpha as a coefficient vector
  nlohmann::json certificate;
  std::vector<std::string> caveats;
  double ms = 0;
};

struct PipelineReport {
  Parameters parameters;
  uint64_t seed = 0;
  std::vector<CandidateReport> candidates;
  bool any_error = false;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["parameters"] = {{"p", parameters.p},
                       {"d", parameters.d},
                       {"a", parameters.a},
                       {"e", parameters.e}};
    j["seed"] = seed;
    j["candidates"] = nlohmann::json::array();
    std::map<std::string, uint32_t> counts{
        {"A", 0}, {"B", 0}, {"transitive", 0}, {"unresolved", 0},
        {"skipped", 0}, {"error", 0}};
    for (const auto& c : candidates) {
      nlohmann::json cj;
      cj["name"] = c.name;
      cj["order"] = c.order.to_string();
      cj["classification"] = c.classification;
      cj["witness"] = c.witness ? nlohmann::json(*c.witness) : nlohmann::json();
      cj["certificate"] = c.certificate;
      cj["caveats"] = c.caveats;
      cj["ms"] = c.ms;
      j["candidates"].push_back(cj);
      ++counts[c.classification];
    }
    j["summary"] = counts;
    return j;
  }
};

// Condition (A): a faithful regular orbit.
inline std::optional<Point> condition_A(const PermGroup& h, const PipelineConfig& cfg) {
  RegularOrbitOptions o;
  o.max_samples = cfg.alpha_search.max_samples;
  o.seed = cfg.alpha_search.seed;
  o.exhaustive_limit = cfg.alpha_search.strategy == "random"
                           ? 0
                           : (uint64_t(1) << 16);
  return is_partly_regular(h, o);
}

struct ConditionBResult {
  bool holds = false;
  bool faithful = true;
  BigUint restriction_order = BigUint(0);
  BigUint closure_order = BigUint(0);
};

// Condition (B): the restriction of h to the orbit of alpha is faithful and
// 2-closed. A non-faithful restriction reports false.
inline ConditionBResult condition_B(const PermGroup& h, Point alpha,
                                    const ClosureOptions& opts = {}) {
  ConditionBResult out;
  auto orb = h.orbit(alpha);
  auto [res, faithful] = h.restriction(orb);
  out.faithful = faithful;
  out.restriction_order = res.order();
  if (!faithful) return out;
  auto cl = two_closure(res, opts);
  out.closure_order = cl.closed_order;
  out.holds = cl.closed_order == cl.input_order;
  return out;
}

inline bool check_transitive_nonzero(const PermGroup& h) {
  return h.is_transitive();
}

// Huppert's exceptional degrees for solvable 2-transitive groups.
inline bool huppert_exceptional(uint64_t q) {
  if (q < 2)
    throw std::invalid_argument("huppert: " + std::to_string(q) +
                                " is not a prime power");
  uint64_t l = 2;
  while (l * l <= q && q % l != 0) ++l;
  if (l * l > q) l = q;  // q itself is prime
  uint64_t v = q;
  while (v % l == 0) v /= l;
  if (v != 1)
    throw std::invalid_argument("huppert: " + std::to_string(q) +
                                " is not a prime power");
  return q == 9 || q == 25 || q == 49 || q == 121 || q == 529 || q == 81;
}

struct SolvabilityVerdict {
  BigUint input_order, closed_order;
  uint32_t arity = 3;
  bool closed_solvable = false;
};

// The end-to-end check on a single group: compute G^(m) and test solvability.
inline SolvabilityVerdict solvability_verdict(const PermGroup& g, uint32_t m = 3,
                                              const ClosureOptions& opts = {}) {
  auto res = m_closure(g, m, opts);
  SolvabilityVerdict v;
  v.input_order = res.input_order;
  v.closed_order = res.closed_order;
  v.arity = m;
  v.closed_solvable = res.closed_group.is_solvable();
  return v;
}

// Loads candidates from a JSON file: either one matrix-group object or an
// array under "candidates".
inline std::vector<CandidateGroup> load_candidates_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read candidate file " + path);
  nlohmann::json j;
  in >> j;
  std::vector<CandidateGroup> out;
  auto add = [&](const nlohmann::json& obj) {
    CandidateGroup c;
    c.group = matgroup_from_json(obj);
    c.name = obj.value("name", "candidate" + std::to_string(out.size()));
    c.provenance = "file:" + path;
    out.push_back(std::move(c));
  };
  if (j.is_array())
    for (const auto& o : j) add(o);
  else if (j.contains("candidates"))
    for (const auto& o : j.at("candidates")) add(o);
  else
    add(j);
  return out;
}

inline PipelineReport run_pipeline(const PipelineConfig& cfg) {
  PipelineReport report;
  report.parameters = cfg.parameters;
  report.seed = cfg.alpha_search.seed;

  std::vector<CandidateGroup> candidates;
  if (cfg.candidate_source == "constructed") {
    CatalogOptions copts;
    copts.spo_path = cfg.spo_path;
    copts.domain_budget = cfg.budgets.domain;
    copts.enum_threshold = cfg.budgets.enum_threshold;
    copts.seed = cfg.alpha_search.seed + 1;
    candidates = assemble_candidates(cfg.parameters, copts);
  } else {
    candidates = load_candidates_file(cfg.candidate_source);
  }

  ClosureOptions clopts;
  clopts.backtrack_degree_budget = cfg.budgets.backtrack_degree;

  for (auto& cand : candidates) {
    CandidateReport cr;
    cr.name = cand.name;
    cr.caveats = cand.caveats;
    auto t0 = std::chrono::steady_clock::now();
    try {
      if (cand.skipped) {
        cr.classification = "skipped";
        cr.certificate = {{"reason", cand.skip_reason}};
      } else {
        const MatrixGroup& H = *cand.group;
        auto hp = mat_to_perm(H, VectorDomain::Nonzero, cfg.budgets.domain);
        cr.order = hp.order();
        auto decode_witness = [&](Point alpha) {
          return decode_vector(H.field, H.dim, uint64_t(alpha) + 1);
        };
        if (auto a = condition_A(hp, cfg)) {
          cr.classification = "A";
          cr.witness = decode_witness(*a);
          cr.certificate = {{"orbit_length", hp.orbit(*a).size()},
                            {"group_order", hp.order().to_string()}};
        } else {
          // condition B on at most max_samples distinct orbits
          bool resolved = false;
          std::vector<Point> reps;
          if (cfg.alpha_search.strategy == "exhaustive" &&
              hp.degree() <= (uint64_t(1) << 16)) {
            std::vector<bool> seen(hp.degree(), false);
            for (Point a = 0; a < hp.degree(); ++a) {
              if (seen[a]) continue;
              for (Point w : hp.orbit(a)) seen[w] = true;
              reps.push_back(a);
            }
          } else {
            std::mt19937_64 rng(cfg.alpha_search.seed);
            std::uniform_int_distribution<Point> dist(0, hp.degree() - 1);
            for (uint32_t i = 0; i < cfg.alpha_search.max_samples; ++i)
              reps.push_back(dist(rng));
          }
          uint32_t tried = 0;
          for (Point a : reps) {
            if (tried >= cfg.alpha_search.max_samples) break;
            auto orb_size = hp.orbit(a).size();
            if (orb_size > cfg.budgets.backtrack_degree) {
              cr.caveats.push_back("orbit of size " + std::to_string(orb_size) +
                                   " exceeds the backtrack budget");
              continue;
            }
            ++tried;
            auto b = condition_B(hp, a, clopts);
            if (b.holds) {
              cr.classification = "B";
              cr.witness = decode_witness(a);
              cr.certificate = {{"restriction_order", b.restriction_order.to_string()},
                                {"closure_order", b.closure_order.to_string()}};
              resolved = true;
              break;
            }
          }
          if (!resolved) {
            if (check_transitive_nonzero(hp)) {
              cr.classification = "transitive";
              cr.certificate = {{"orbit_count", 1}};
            } else {
              cr.classification = "unresolved";
              cr.certificate = {{"orbit_count", hp.orbits().size()}};
            }
          }
        }
      }
    } catch (const std::exception& ex) {
      cr.classification = "error";
      cr.certificate = {{"what", ex.what()}};
      report.any_error = true;
    }
    auto t1 = std::chrono::steady_clock::now();
    cr.ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    report.candidates.push_back(std::move(cr));
  }
  return report;
}

}  // namespace cgt
