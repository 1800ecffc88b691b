// Command-line surface: sparsify / verify PSD collections and Cayley graphs,
// brute-force connectivity parameters, find subset-product relations, and
// generate the benchmark instance files. All runs are seed-deterministic and
// reports contain no timestamps, so identical invocations produce
// byte-identical outputs.

#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "psdspar/cayley.hpp"
#include "psdspar/connectivity.hpp"
#include "psdspar/groups.hpp"
#include "psdspar/instances.hpp"
#include "psdspar/io.hpp"
#include "psdspar/psd_core.hpp"

namespace {

using psdspar::Error;
using psdspar::ErrorCode;
namespace cayley = psdspar::cayley;
namespace conn = psdspar::conn;
namespace core = psdspar::core;
namespace groups = psdspar::groups;
namespace instances = psdspar::instances;
namespace io = psdspar::io;
namespace linalg = psdspar::linalg;

constexpr int kExitVerifyFailure = 2;

std::string fmt(double v) { return io::format_double(v); }

struct ReportSink {
  std::string text_path;
  std::string json_path;
  bool quiet = false;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--report", text_path, "write the plain-text report to this file");
    cmd->add_option("--json-report", json_path, "write a flat key/value JSON report");
    cmd->add_flag("--quiet", quiet, "suppress the report on stdout");
  }

  void emit(const std::string& text, const nlohmann::json& json) const {
    if (!quiet) std::cout << text;
    if (!text_path.empty()) io::write_text_atomic(text_path, text);
    if (!json_path.empty()) io::write_text_atomic(json_path, json.dump(2) + "\n");
  }
};

groups::GeneratorSet load_gens(const groups::FiniteGroup& group, const std::string& gens_path,
                               bool gens_all) {
  if (gens_all) {
    std::vector<int> elements;
    for (int e = 0; e < group.order(); ++e)
      if (e != group.identity()) elements.push_back(e);
    if (elements.empty())
      throw Error(ErrorCode::Precondition, "the trivial group has no nonidentity generators");
    return groups::GeneratorSet::create(group, std::move(elements));
  }
  if (gens_path.empty())
    throw Error(ErrorCode::Precondition, "either --gens or --gens-all is required");
  return io::read_gens(gens_path, group);
}

std::string sparsify_tsv(const core::SparsifyReport& report) {
  std::ostringstream out;
  out << "tsv:\n";
  out << "index\tleverage\tweight\n";
  for (std::size_t i = 0; i < report.leverage.size(); ++i)
    out << i << '\t' << fmt(report.leverage[i]) << '\t'
        << fmt(report.weights.at(static_cast<int>(i))) << '\n';
  return out.str();
}

std::string cayley_tsv(const cayley::CayleyReport& report) {
  std::ostringstream out;
  out << "tsv:\n";
  out << "index\telement\tleverage\tweight\n";
  for (std::size_t i = 0; i < report.generator_elements.size(); ++i)
    out << i << '\t' << report.generator_elements[i] << '\t' << fmt(report.leverage[i]) << '\t'
        << fmt(report.weights.at(static_cast<int>(i))) << '\n';
  return out.str();
}

int run_sparsify(const std::string& input, const core::SparsifyConfig& config,
                 const std::string& out_path, const ReportSink& sink) {
  core::PsdCollection collection = io::read_psdc(input);
  core::SparsifyReport report = core::sparsify(collection, config);
  if (!out_path.empty()) io::write_weights(report.weights, out_path);

  std::ostringstream text;
  text << "command: sparsify\n";
  text << "input: " << input << "\n";
  text << "eps: " << fmt(report.eps) << "\n";
  text << "seed: " << report.seed << "\n";
  text << "r_constant: " << fmt(config.r_constant) << "\n";
  text << "count: " << collection.size() << "\n";
  text << "attempts: " << report.attempts << "\n";
  text << "support: " << report.support_size << "\n";
  text << "restricted_dim: " << report.restricted_dim << "\n";
  text << "margin: " << fmt(report.verified_margin) << "\n";
  text << "leverage_sum: " << fmt(report.leverage_sum) << "\n";
  text << sparsify_tsv(report);

  nlohmann::json j;
  j["command"] = "sparsify";
  j["input"] = input;
  j["eps"] = report.eps;
  j["seed"] = report.seed;
  j["r_constant"] = config.r_constant;
  j["count"] = collection.size();
  j["attempts"] = report.attempts;
  j["support"] = report.support_size;
  j["restricted_dim"] = report.restricted_dim;
  j["margin"] = report.verified_margin;
  j["leverage_sum"] = report.leverage_sum;
  sink.emit(text.str(), j);
  return 0;
}

int run_cayley(bool weighted, const std::string& group_path, const std::string& gens_path,
               bool gens_all, const cayley::CayleyConfig& config, const std::string& out_path,
               const ReportSink& sink) {
  groups::FiniteGroup group = io::read_group(group_path);
  groups::GeneratorSet gens = load_gens(group, gens_path, gens_all);
  cayley::CayleyReport report = weighted ? cayley::weighted_cayley_sparsify(gens, config)
                                         : cayley::cayley_sparsify(gens, config);
  if (!out_path.empty()) io::write_weights(report.weights, out_path);

  std::ostringstream text;
  const std::string name = weighted ? "cayley-weighted" : "cayley";
  text << "command: " << name << "\n";
  text << "group: " << group_path << "\n";
  text << "order: " << group.order() << "\n";
  text << "generators: " << gens.size() << "\n";
  text << "eps: " << fmt(report.eps) << "\n";
  text << "seed: " << report.seed << "\n";
  text << "r_constant: " << fmt(config.r_constant) << "\n";
  text << "buckets: " << report.buckets << "\n";
  text << "attempts: " << report.attempts << "\n";
  text << "support: " << report.support_size << "\n";
  text << "margin: " << fmt(report.verified_margin) << "\n";
  text << cayley_tsv(report);

  nlohmann::json j;
  j["command"] = name;
  j["group"] = group_path;
  j["order"] = group.order();
  j["generators"] = gens.size();
  j["eps"] = report.eps;
  j["seed"] = report.seed;
  j["r_constant"] = config.r_constant;
  j["buckets"] = report.buckets;
  j["attempts"] = report.attempts;
  j["support"] = report.support_size;
  j["margin"] = report.verified_margin;
  sink.emit(text.str(), j);
  return 0;
}

int run_connparam(const std::string& input, double alpha, std::uint64_t subset_cap, int max_size,
                  const ReportSink& sink) {
  core::PsdCollection collection = io::read_psdc(input);
  conn::SubsetSearchLimits limits;
  limits.query_cap = subset_cap;
  limits.max_size = max_size;
  conn::ConnectivityResult result =
      conn::connectivity_parameter(collection, alpha, limits);

  std::ostringstream text;
  text << "command: connparam\n";
  text << "input: " << input << "\n";
  text << "alpha: " << fmt(alpha) << "\n";
  text << "value: " << result.value << "\n";
  text << "exhaustive: " << (result.exhaustive ? "true" : "false") << "\n";
  text << "largest_minimal_subset:";
  for (int i : result.largest_minimal_subset.subset) text << ' ' << i;
  text << "\n";
  for (const auto& [i, w] : result.largest_minimal_subset.witnesses) {
    text << "witness " << i << ":";
    for (double v : w) text << ' ' << fmt(v);
    text << "\n";
  }

  nlohmann::json j;
  j["command"] = "connparam";
  j["input"] = input;
  j["alpha"] = alpha;
  j["value"] = result.value;
  j["exhaustive"] = result.exhaustive;
  sink.emit(text.str(), j);
  return 0;
}

int run_threshold(const std::string& input, double eps, std::uint64_t subset_cap, int max_size,
                  const ReportSink& sink) {
  core::PsdCollection collection = io::read_psdc(input);
  const double alpha = conn::alpha_eps(eps);
  conn::SubsetSearchLimits limits;
  limits.query_cap = subset_cap;
  limits.max_size = max_size;
  conn::ConnectivityResult result =
      conn::connectivity_parameter(collection, alpha, limits);

  std::ostringstream text;
  text << "command: threshold\n";
  text << "input: " << input << "\n";
  text << "eps: " << fmt(eps) << "\n";
  text << "alpha_eps: " << fmt(alpha) << "\n";
  text << "value: " << result.value << "\n";
  text << "exhaustive: " << (result.exhaustive ? "true" : "false") << "\n";

  nlohmann::json j;
  j["command"] = "threshold";
  j["input"] = input;
  j["eps"] = eps;
  j["alpha_eps"] = alpha;
  j["value"] = result.value;
  j["exhaustive"] = result.exhaustive;
  sink.emit(text.str(), j);
  return 0;
}

int run_verify(const std::string& input, const std::string& group_path,
               const std::string& gens_path, bool gens_all, const std::string& weights_path,
               double eps, const ReportSink& sink) {
  core::WeightVector weights = io::read_weights(weights_path);
  linalg::EpsApproxResult check;
  if (!input.empty()) {
    core::PsdCollection collection = io::read_psdc(input);
    if (weights.size != collection.size())
      throw Error(ErrorCode::DimensionMismatch, "weights sized for a different collection");
    linalg::SymMatrix candidate(collection.dim);
    for (const auto& [i, mu] : weights.weights) {
      if (i >= collection.size())
        throw Error(ErrorCode::DimensionMismatch, "weight index out of range");
      linalg::add_scaled_into(candidate, collection.matrices[static_cast<std::size_t>(i)], mu);
    }
    check = linalg::check_eps_approx(candidate, collection.sum(), eps);
  } else if (!group_path.empty()) {
    groups::FiniteGroup group = io::read_group(group_path);
    groups::GeneratorSet gens = load_gens(group, gens_path, gens_all);
    check = cayley::verify_weights(gens, weights, eps);
  } else {
    throw Error(ErrorCode::Precondition, "verify needs --input or --group");
  }

  const bool pass = check.ok && check.margin > 0.0;
  std::ostringstream text;
  text << "command: verify\n";
  text << "eps: " << fmt(eps) << "\n";
  text << "support: " << weights.support_size() << "\n";
  text << "margin: " << fmt(check.margin) << "\n";
  text << "verified: " << (pass ? "true" : "false") << "\n";

  nlohmann::json j;
  j["command"] = "verify";
  j["eps"] = eps;
  j["support"] = weights.support_size();
  j["margin"] = check.margin;
  j["verified"] = pass;
  sink.emit(text.str(), j);
  return pass ? 0 : kExitVerifyFailure;
}

int run_relation(const std::string& group_path, const std::vector<int>& elements, double alpha,
                 const ReportSink& sink) {
  groups::FiniteGroup group = io::read_group(group_path);
  cayley::Relation rel = cayley::find_relation(group, elements);
  const double a = alpha > 0.0 ? alpha : 1.0 / (8.0 * static_cast<double>(elements.size()));
  cayley::DominationCheck check =
      cayley::certify_domination(group, elements, rel.target, rel, a);

  std::ostringstream text;
  text << "command: relation\n";
  text << "group: " << group_path << "\n";
  text << "set:";
  for (int e : elements) text << ' ' << e;
  text << "\n";
  text << "target: " << rel.target << "\n";
  text << "factors:";
  for (int f : rel.factors) text << ' ' << f;
  text << "\n";
  text << "alpha: " << fmt(a) << "\n";
  text << "margin: " << fmt(check.margin) << "\n";
  text << "dominated: " << (check.ok ? "true" : "false") << "\n";

  nlohmann::json j;
  j["command"] = "relation";
  j["group"] = group_path;
  j["target"] = rel.target;
  j["alpha"] = a;
  j["margin"] = check.margin;
  j["dominated"] = check.ok;
  sink.emit(text.str(), j);
  return check.ok ? 0 : kExitVerifyFailure;
}

instances::Graph make_graph_family(const std::string& family, int n, double weight) {
  std::vector<instances::Graph::Edge> edges;
  if (family == "path") {
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, weight});
    return instances::Graph::create(n, std::move(edges));
  }
  if (family == "cycle") {
    for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, weight});
    edges.push_back({n - 1, 0, weight});
    return instances::Graph::create(n, std::move(edges));
  }
  if (family == "complete") {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) edges.push_back({i, j, weight});
    return instances::Graph::create(n, std::move(edges));
  }
  if (family == "star") {
    for (int i = 1; i < n; ++i) edges.push_back({0, i, weight});
    return instances::Graph::create(n, std::move(edges));
  }
  if (family == "biclique") {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) edges.push_back({i, n + j, weight});
    return instances::Graph::create(2 * n, std::move(edges));
  }
  throw Error(ErrorCode::Precondition, "unknown graph family '" + family + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral sparsification of sums of PSD matrices and Cayley graphs"};
  app.require_subcommand(1);

  // sparsify
  std::string sp_input, sp_out;
  core::SparsifyConfig sp_config;
  ReportSink sp_sink;
  {
    CLI::App* cmd = app.add_subcommand("sparsify", "sparsify a PSDC collection");
    cmd->add_option("--input", sp_input, "PSDC input file")->required();
    cmd->add_option("--eps", sp_config.eps, "approximation parameter in (0, 1]");
    cmd->add_option("--seed", sp_config.seed, "64-bit sampling seed");
    cmd->add_option("--max-attempts", sp_config.max_attempts, "draw retry limit");
    cmd->add_option("--r-constant", sp_config.r_constant, "constant in R = eps^2/(c ln 4m)");
    cmd->add_option("--out", sp_out, "write the weight vector to this WEIGHTS file");
    sp_sink.add_options(cmd);
  }

  // cayley / cayley-weighted
  std::string cy_group, cy_gens, cy_out;
  bool cy_gens_all = false;
  cayley::CayleyConfig cy_config;
  ReportSink cy_sink;
  std::string cw_group, cw_gens, cw_out;
  bool cw_gens_all = false;
  cayley::CayleyConfig cw_config;
  ReportSink cw_sink;
  {
    CLI::App* cmd = app.add_subcommand("cayley", "sparsify an unweighted Cayley graph");
    cmd->add_option("--group", cy_group, "GROUP multiplication table file")->required();
    cmd->add_option("--gens", cy_gens, "GENS symmetric generator file");
    cmd->add_flag("--gens-all", cy_gens_all, "use all nonidentity elements as generators");
    cmd->add_option("--eps", cy_config.eps, "approximation parameter in (0, 1]");
    cmd->add_option("--seed", cy_config.seed, "64-bit sampling seed");
    cmd->add_option("--max-attempts", cy_config.max_attempts, "draw retry limit");
    cmd->add_option("--r-constant", cy_config.r_constant, "constant in R = eps^2/(c ln 4m)");
    cmd->add_option("--out", cy_out, "write the weight vector (keyed by generator position)");
    cy_sink.add_options(cmd);
  }
  {
    CLI::App* cmd = app.add_subcommand("cayley-weighted", "sparsify a weighted Cayley graph");
    cmd->add_option("--group", cw_group, "GROUP multiplication table file")->required();
    cmd->add_option("--gens", cw_gens, "GENS file carrying a weights line")->required();
    cmd->add_option("--eps", cw_config.eps, "approximation parameter in (0, 1]");
    cmd->add_option("--seed", cw_config.seed, "64-bit sampling seed");
    cmd->add_option("--max-attempts", cw_config.max_attempts, "draw retry limit");
    cmd->add_option("--r-constant", cw_config.r_constant, "constant in R = eps^2/(c ln 4m)");
    cmd->add_option("--out", cw_out, "write the weight vector (keyed by generator position)");
    cw_sink.add_options(cmd);
  }

  // connparam / threshold
  std::string cp_input;
  double cp_alpha = 1.0;
  std::uint64_t cp_cap = 1ull << 20;
  int cp_max_size = 0;
  ReportSink cp_sink;
  {
    CLI::App* cmd = app.add_subcommand("connparam", "brute-force connectivity parameter");
    cmd->add_option("--input", cp_input, "PSDC input file")->required();
    cmd->add_option("--alpha", cp_alpha, "domination parameter in (0, 1]")->required();
    cmd->add_option("--subset-cap", cp_cap, "abort after this many subset queries");
    cmd->add_option("--max-size", cp_max_size, "only scan subsets up to this size (0 = all)");
    cp_sink.add_options(cmd);
  }
  std::string th_input;
  double th_eps = 0.5;
  std::uint64_t th_cap = 1ull << 20;
  int th_max_size = 0;
  ReportSink th_sink;
  {
    CLI::App* cmd = app.add_subcommand("threshold", "connectivity threshold at alpha_eps");
    cmd->add_option("--input", th_input, "PSDC input file")->required();
    cmd->add_option("--eps", th_eps, "approximation parameter in [0, 1)")->required();
    cmd->add_option("--subset-cap", th_cap, "abort after this many subset queries");
    cmd->add_option("--max-size", th_max_size, "only scan subsets up to this size (0 = all)");
    th_sink.add_options(cmd);
  }

  // verify
  std::string vf_input, vf_group, vf_gens, vf_weights;
  bool vf_gens_all = false;
  double vf_eps = 0.5;
  ReportSink vf_sink;
  {
    CLI::App* cmd = app.add_subcommand("verify", "re-verify a weight vector");
    cmd->add_option("--input", vf_input, "PSDC input file");
    cmd->add_option("--group", vf_group, "GROUP file (Cayley verification)");
    cmd->add_option("--gens", vf_gens, "GENS file");
    cmd->add_flag("--gens-all", vf_gens_all, "use all nonidentity elements as generators");
    cmd->add_option("--weights", vf_weights, "WEIGHTS file to verify")->required();
    cmd->add_option("--eps", vf_eps, "approximation parameter in (0, 1]");
    vf_sink.add_options(cmd);
  }

  // relation
  std::string rl_group;
  std::vector<int> rl_elements;
  double rl_alpha = 0.0;
  ReportSink rl_sink;
  {
    CLI::App* cmd = app.add_subcommand("relation", "subset-product relation and domination");
    cmd->add_option("--group", rl_group, "GROUP multiplication table file")->required();
    cmd->add_option("--elements", rl_elements, "comma-separated element list")
        ->required()
        ->delimiter(',');
    cmd->add_option("--alpha", rl_alpha, "domination parameter (default 1/(8|T|))");
    rl_sink.add_options(cmd);
  }

  // gen
  CLI::App* gen = app.add_subcommand("gen", "generate instance files");
  gen->require_subcommand(1);
  std::string gg_family;
  int gg_n = 4;
  double gg_weight = 1.0;
  std::string gg_graph, gg_psdc;
  {
    CLI::App* cmd = gen->add_subcommand("graph", "path/cycle/complete/star/biclique families");
    cmd->add_option("--family", gg_family, "path|cycle|complete|star|biclique")->required();
    cmd->add_option("--n", gg_n, "vertex count (per side for biclique)")->required();
    cmd->add_option("--weight", gg_weight, "uniform edge weight");
    cmd->add_option("--graph", gg_graph, "write the GRAPH file here");
    cmd->add_option("--psdc", gg_psdc, "write the edge Laplacian PSDC here");
  }
  std::string gc_group, gc_gens;
  int gc_n = 0;
  {
    CLI::App* cmd = gen->add_subcommand("cyclic", "cyclic group Z_n");
    cmd->add_option("--n", gc_n, "group order")->required();
    cmd->add_option("--group", gc_group, "write the GROUP file here")->required();
    cmd->add_option("--gens", gc_gens, "write all nonidentity elements as a GENS file");
  }
  std::string gb_group, gb_gens;
  int gb_n = 0;
  {
    CLI::App* cmd = gen->add_subcommand("cube", "boolean cube F_2^n");
    cmd->add_option("--n", gb_n, "dimension")->required();
    cmd->add_option("--group", gb_group, "write the GROUP file here")->required();
    cmd->add_option("--gens", gb_gens, "write all nonidentity elements as a GENS file");
  }
  std::vector<int> gd_orders;
  std::string gd_group, gd_gens;
  {
    CLI::App* cmd = gen->add_subcommand("dsum", "direct sum of cyclic groups");
    cmd->add_option("--orders", gd_orders, "comma-separated cyclic orders")
        ->required()
        ->delimiter(',');
    cmd->add_option("--group", gd_group, "write the GROUP file here")->required();
    cmd->add_option("--gens", gd_gens, "write all nonidentity elements as a GENS file");
  }
  int gs_n = 0;
  std::string gs_action;
  ReportSink gs_sink;
  {
    CLI::App* cmd = gen->add_subcommand("schreier", "matching-based unsparsifiable instance");
    cmd->add_option("--n", gs_n, "matchings count (>= 3)")->required();
    cmd->add_option("--action", gs_action, "write the involution ACTION file here");
    gs_sink.add_options(cmd);
  }
  std::uint64_t gz_modulus = 0;
  double gz_alpha = 1.0;
  ReportSink gz_sink;
  {
    CLI::App* cmd = gen->add_subcommand("zn", "alpha-minimal power set in Z_N");
    cmd->add_option("--modulus", gz_modulus, "N >= 2")->required();
    cmd->add_option("--alpha", gz_alpha, "domination parameter in (0, 1]");
    gz_sink.add_options(cmd);
  }
  int gk_n = 0;
  ReportSink gk_sink;
  {
    CLI::App* cmd = gen->add_subcommand("knn", "transversal partition of K_{n,n}");
    cmd->add_option("--n", gk_n, "side size (>= 3)")->required();
    gk_sink.add_options(cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (app.got_subcommand("sparsify"))
      return run_sparsify(sp_input, sp_config, sp_out, sp_sink);
    if (app.got_subcommand("cayley"))
      return run_cayley(false, cy_group, cy_gens, cy_gens_all, cy_config, cy_out, cy_sink);
    if (app.got_subcommand("cayley-weighted"))
      return run_cayley(true, cw_group, cw_gens, cw_gens_all, cw_config, cw_out, cw_sink);
    if (app.got_subcommand("connparam"))
      return run_connparam(cp_input, cp_alpha, cp_cap, cp_max_size, cp_sink);
    if (app.got_subcommand("threshold"))
      return run_threshold(th_input, th_eps, th_cap, th_max_size, th_sink);
    if (app.got_subcommand("verify"))
      return run_verify(vf_input, vf_group, vf_gens, vf_gens_all, vf_weights, vf_eps, vf_sink);
    if (app.got_subcommand("relation"))
      return run_relation(rl_group, rl_elements, rl_alpha, rl_sink);

    if (app.got_subcommand("gen")) {
      if (gen->got_subcommand("graph")) {
        instances::Graph g = make_graph_family(gg_family, gg_n, gg_weight);
        if (gg_graph.empty() && gg_psdc.empty())
          throw Error(ErrorCode::Precondition, "nothing to do: pass --graph and/or --psdc");
        if (!gg_graph.empty()) io::write_graph(g, gg_graph);
        if (!gg_psdc.empty()) io::write_psdc(instances::graph_edge_collection(g), gg_psdc);
        return 0;
      }
      auto emit_group = [](const groups::FiniteGroup& g, const std::string& group_path,
                           const std::string& gens_path) {
        io::write_group(g, group_path);
        if (!gens_path.empty()) {
          std::vector<int> elements;
          for (int e = 0; e < g.order(); ++e)
            if (e != g.identity()) elements.push_back(e);
          io::write_gens(groups::GeneratorSet::create(g, std::move(elements)), gens_path);
        }
      };
      if (gen->got_subcommand("cyclic")) {
        emit_group(groups::FiniteGroup::cyclic(gc_n), gc_group, gc_gens);
        return 0;
      }
      if (gen->got_subcommand("cube")) {
        emit_group(groups::FiniteGroup::boolean_cube(gb_n), gb_group, gb_gens);
        return 0;
      }
      if (gen->got_subcommand("dsum")) {
        std::vector<groups::FiniteGroup> parts;
        for (int k : gd_orders) parts.push_back(groups::FiniteGroup::cyclic(k));
        emit_group(groups::FiniteGroup::direct_sum(parts), gd_group, gd_gens);
        return 0;
      }
      if (gen->got_subcommand("schreier")) {
        instances::SchreierInstance inst = instances::schreier_unsparsifiable(gs_n);
        if (!gs_action.empty()) io::write_action(inst.action, gs_action);
        std::ostringstream text;
        text << "command: gen schreier\n";
        text << "n: " << inst.n << "\n";
        text << "points: " << inst.matchings.vertices << "\n";
        text << "matchings: " << inst.matchings.matchings.size() << "\n";
        text << "certificate: true\n";
        nlohmann::json j;
        j["command"] = "gen schreier";
        j["n"] = inst.n;
        j["points"] = inst.matchings.vertices;
        j["matchings"] = inst.matchings.matchings.size();
        j["certificate"] = true;
        gs_sink.emit(text.str(), j);
        return 0;
      }
      if (gen->got_subcommand("zn")) {
        instances::ZnMinimalSet set = instances::zn_alpha_minimal(gz_modulus, gz_alpha);
        std::ostringstream text;
        text << "command: gen zn\n";
        text << "modulus: " << set.modulus << "\n";
        text << "alpha: " << fmt(set.alpha) << "\n";
        text << "base_k: " << set.base_k << "\n";
        text << "elements:";
        for (std::uint64_t e : set.elements) text << ' ' << e;
        text << "\n";
        text << "witness_chars:";
        for (std::uint64_t g : set.witness_chars) text << ' ' << g;
        text << "\n";
        text << "relative_margins:";
        for (double m : set.relative_margins) text << ' ' << fmt(m);
        text << "\n";
        nlohmann::json j;
        j["command"] = "gen zn";
        j["modulus"] = set.modulus;
        j["alpha"] = set.alpha;
        j["base_k"] = set.base_k;
        j["size"] = set.elements.size();
        gz_sink.emit(text.str(), j);
        return 0;
      }
      if (gen->got_subcommand("knn")) {
        instances::MatchingPartition part = instances::knn_transversal_partition(gk_n);
        std::ostringstream text;
        text << "command: gen knn\n";
        text << "n: " << gk_n << "\n";
        text << "vertices: " << part.vertices << "\n";
        for (std::size_t i = 0; i < part.matchings.size(); ++i) {
          text << "matching " << i << ":";
          for (const auto& [u, v] : part.matchings[i]) text << ' ' << u << '-' << v;
          text << "\n";
        }
        text << "transversal:";
        for (const auto& [u, v] : *part.transversal) text << ' ' << u << '-' << v;
        text << "\n";
        nlohmann::json j;
        j["command"] = "gen knn";
        j["n"] = gk_n;
        j["vertices"] = part.vertices;
        j["matchings"] = part.matchings.size();
        gk_sink.emit(text.str(), j);
        return 0;
      }
    }
    throw Error(ErrorCode::Precondition, "no subcommand selected");
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const ErrorCode c = e.code();
    if (c == ErrorCode::ExhaustedAttempts || c == ErrorCode::NotMinimal) return kExitVerifyFailure;
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
