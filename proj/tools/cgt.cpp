// Command-line surface of the toolkit: closures, product constructions,
// candidate construction, and the verification pipeline. Boolean subcommands
// (isclosed, verdict, huppert) use exit code 0 for true and 1 for false so
// they compose in scripts; errors exit with 2.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <CLI11.hpp>

#include "cgt/closure.hpp"
#include "cgt/group_io.hpp"
#include "cgt/matgroup_io.hpp"
#include "cgt/pipeline.hpp"
#include "cgt/products.hpp"

using namespace cgt;

namespace {

std::string sanitize(const std::string& name) {
  std::string out;
  for (char c : name)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.')
               ? c
               : '_';
  return out;
}

int cmd_closure(const std::string& group_path, uint32_t arity, Point budget,
                const std::string& out_path, const std::string& coloring_out) {
  PermGroup g = load_group(group_path);
  ClosureOptions opts;
  opts.backtrack_degree_budget = budget;
  opts.ternary_degree_budget = std::min<Point>(budget, 64);
  auto res = m_closure(g, arity, opts);
  std::printf("|G| = %s, |G^(%u)| = %s, method %s, nodes %llu, prunes %llu\n",
              res.input_order.to_string().c_str(), arity,
              res.closed_order.to_string().c_str(), res.method.c_str(),
              static_cast<unsigned long long>(res.nodes),
              static_cast<unsigned long long>(res.prunes));
  if (!out_path.empty())
    save_group(res.closed_group, out_path, std::to_string(arity) + "-closure");
  if (!coloring_out.empty()) {
    auto col = m_orbit_coloring(g, arity);
    col.save_binary(coloring_out);
    std::ofstream js(coloring_out + ".json");
    js << col.summary_json().dump(2) << '\n';
  }
  return 0;
}

int cmd_isclosed(const std::string& group_path, uint32_t arity) {
  PermGroup g = load_group(group_path);
  bool closed = is_m_closed(g, arity);
  std::printf("%s\n", closed ? "closed" : "not closed");
  return closed ? 0 : 1;
}

int cmd_product(const std::string& mode, const std::string& k_path,
                const std::string& l_path, const std::string& out_path) {
  PermGroup k = load_group(k_path), l = load_group(l_path);
  PermGroup g = PermGroup::trivial(0);
  if (mode == "direct")
    g = direct_sum(k, l);
  else if (mode == "wreath")
    g = wreath_imprimitive(k, l);
  else if (mode == "power")
    g = wreath_product_action(k, l);
  else
    throw CLI::ValidationError("--mode must be direct, wreath or power");
  std::printf("degree %u, order %s\n", g.degree(), g.order().to_string().c_str());
  if (!out_path.empty()) save_group(g, out_path, mode);
  return 0;
}

int cmd_construct(uint32_t p, uint32_t d, uint32_t a, uint32_t e,
                  const std::string& out_dir, const std::string& spo_path) {
  CatalogOptions opts;
  opts.spo_path = spo_path;
  auto cands = assemble_candidates({p, d, a, e}, opts);
  std::filesystem::create_directories(out_dir);
  nlohmann::json index = nlohmann::json::array();
  for (const auto& c : cands) {
    nlohmann::json entry{{"name", c.name},
                         {"skipped", c.skipped}};
    if (c.skipped) {
      entry["reason"] = c.skip_reason;
      std::printf("%-40s skipped: %s\n", c.name.c_str(), c.skip_reason.c_str());
    } else {
      std::string file = sanitize(c.name) + ".json";
      save_matgroup(*c.group, out_dir + "/" + file, c.name);
      entry["file"] = file;
      entry["order"] = c.order.to_string();
      entry["caveats"] = c.caveats;
      std::printf("%-40s order %s -> %s\n", c.name.c_str(),
                  c.order.to_string().c_str(), file.c_str());
    }
    index.push_back(entry);
  }
  std::ofstream out(out_dir + "/index.json");
  out << index.dump(2) << '\n';
  return 0;
}

int cmd_pipeline(const std::string& config_path, const std::string& report_path,
                 int64_t seed_override) {
  std::ifstream in(config_path);
  if (!in) throw std::runtime_error("cannot read config " + config_path);
  nlohmann::json cj;
  in >> cj;
  PipelineConfig cfg = pipeline_config_from_json(cj);
  if (seed_override >= 0) cfg.alpha_search.seed = static_cast<uint64_t>(seed_override);
  auto report = run_pipeline(cfg);
  auto j = report.to_json();
  if (!report_path.empty()) {
    std::ofstream out(report_path);
    out << j.dump(2) << '\n';
  }
  std::printf("%s\n", j["summary"].dump().c_str());
  for (const auto& c : report.candidates)
    std::printf("  %-40s %-12s %s\n", c.name.c_str(), c.classification.c_str(),
                c.certificate.dump().c_str());
  return report.any_error ? 2 : 0;
}

int cmd_verdict(const std::string& group_path) {
  PermGroup g = load_group(group_path);
  auto v = solvability_verdict(g, 3);
  std::printf("|G| = %s, |G^(3)| = %s, 3-closure %s\n",
              v.input_order.to_string().c_str(), v.closed_order.to_string().c_str(),
              v.closed_solvable ? "solvable" : "not solvable");
  return v.closed_solvable ? 0 : 1;
}

int cmd_huppert(uint64_t q) {
  bool exc = huppert_exceptional(q);
  std::printf("%s\n", exc ? "exceptional" : "not exceptional");
  return exc ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"closure computations for permutation groups and the solvable "
               "primitive linear group pipeline"};
  app.require_subcommand(1);

  std::string group_path, out_path, coloring_out, mode, k_path, l_path;
  std::string config_path, report_path, out_dir;
  std::string spo_path = "data/spo_subgroups.json";
  uint32_t arity = 2, p = 3, d = 2, a = 1, e = 2;
  Point budget = 128;
  int64_t seed = -1;
  uint64_t q = 2;

  auto* closure = app.add_subcommand("closure", "compute the m-closure of a group");
  closure->add_option("--group", group_path, "group JSON file")->required();
  closure->add_option("--arity", arity, "closure arity m >= 2")->required();
  closure->add_option("--budget", budget, "backtrack degree budget");
  closure->add_option("--out", out_path, "write the closed group here");
  closure->add_option("--coloring-out", coloring_out,
                      "also export the m-orbit coloring (binary + JSON summary)");

  auto* isclosed = app.add_subcommand("isclosed", "is the group m-closed?");
  isclosed->add_option("--group", group_path, "group JSON file")->required();
  isclosed->add_option("--arity", arity, "arity m >= 2")->required();

  auto* product = app.add_subcommand("product", "product constructions");
  product->add_option("--mode", mode, "direct | wreath | power")->required();
  product->add_option("--k", k_path, "first factor JSON")->required();
  product->add_option("--l", l_path, "second factor JSON")->required();
  product->add_option("--out", out_path, "write the product here");

  auto* construct = app.add_subcommand("construct", "assemble the candidate list");
  construct->add_option("--p", p)->required();
  construct->add_option("--d", d)->required();
  construct->add_option("--a", a)->required();
  construct->add_option("--e", e)->required();
  construct->add_option("--out", out_dir, "output directory")->required();
  construct->add_option("--spo-data", spo_path, "bundled subgroup data file");

  auto* pipeline = app.add_subcommand("pipeline", "run the verification pipeline");
  pipeline->add_option("--config", config_path, "pipeline config JSON")->required();
  pipeline->add_option("--report", report_path, "report JSON output");
  pipeline->add_option("--seed", seed, "override the alpha-search seed");

  auto* verdict = app.add_subcommand("verdict", "3-closure solvability verdict");
  verdict->add_option("--group", group_path, "group JSON file")->required();

  auto* huppert = app.add_subcommand("huppert", "Huppert exceptional degree test");
  huppert->add_option("--q", q, "prime power")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (closure->parsed()) return cmd_closure(group_path, arity, budget, out_path, coloring_out);
    if (isclosed->parsed()) return cmd_isclosed(group_path, arity);
    if (product->parsed()) return cmd_product(mode, k_path, l_path, out_path);
    if (construct->parsed()) return cmd_construct(p, d, a, e, out_dir, spo_path);
    if (pipeline->parsed()) return cmd_pipeline(config_path, report_path, seed);
    if (verdict->parsed()) return cmd_verdict(group_path);
    if (huppert->parsed()) return cmd_huppert(q);
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }
  return 2;
}
