// Copyright 2026 The greedymrf Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// greedymrf: structure learning, oracle runs, experiments and bound reports.
//
// Exit codes: 0 ok, 1 unexpected failure, 2 usage, 3 input data, 4 capacity.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "greedymrf.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInput = 3;
constexpr int kExitCapacity = 4;

const char* kModelHelp =
    "Model: grid:K | chain:P | cycle:P | star:K | tree:ARITY:DEPTH | counterexample:D | "
    "er:P:PROB:SEED | randtree:P:SEED[:MAXDEG]";
const char* kThetaHelp =
    "Edge weights: const:T | uniform:LO:HI:SEED | sign:T:SEED (a bare number means const)";

std::ofstream open_out(const fs::path& dir, const std::string& name) {
  fs::create_directories(dir);
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw gmrf::Error("cannot write '" + (dir / name).string() + "'");
  return out;
}

gmrf::WeightRule parse_theta(const std::string& text) {
  if (!text.empty() && (std::isdigit(static_cast<unsigned char>(text[0])) || text[0] == '-' ||
                        text[0] == '+' || text[0] == '.')) {
    return gmrf::parse_weights("const:" + text);
  }
  return gmrf::parse_weights(text);
}

gmrf::Symmetrization parse_symmetrization(const std::string& s) {
  return s == "or" ? gmrf::Symmetrization::Or : gmrf::Symmetrization::And;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Sample counts accept scientific notation (1e6) as long as they are integral.
std::size_t parse_count(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !(v >= 1.0) || v != std::floor(v) || v > 1e15) {
    throw gmrf::ArgumentError("bad sample count '" + s + "'");
  }
  return static_cast<std::size_t>(v);
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size()) throw gmrf::ArgumentError("bad " + what + " '" + s + "'");
  return v;
}

struct LearnerFlags {
  double epsilon = 0.1;
  bool prune = false;
  std::string symmetrize = "and";
  std::optional<std::size_t> max_neighborhood;
  bool chow_liu = false;
  std::size_t threads = 1;

  void attach(CLI::App* cmd, bool with_epsilon = true) {
    if (with_epsilon) {
      cmd->add_option("--epsilon", epsilon, "Greedy threshold; a pick must lower H by more than eps/2")
          ->check(CLI::PositiveNumber);
    }
    cmd->add_flag("--prune", prune, "Prune each greedy neighborhood before symmetrization");
    cmd->add_option("--symmetrize", symmetrize, "Edge rule: and (both ends agree) or or")
        ->check(CLI::IsMember({"and", "or"}));
    cmd->add_option("--max-neighborhood", max_neighborhood, "Cap on picks per vertex (default: none)")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--chow-liu", chow_liu, "Output the Chow-Liu tree instead of the greedy graph");
    cmd->add_option("--threads", threads, "Worker threads over vertices (0 = all cores)");
  }

  gmrf::LearnerConfig config() const {
    gmrf::LearnerConfig cfg;
    cfg.epsilon = epsilon;
    cfg.prune = prune;
    cfg.symmetrization = parse_symmetrization(symmetrize);
    cfg.max_neighborhood = max_neighborhood;
    return cfg;
  }
};

gmrf::Json chow_liu_json(const gmrf::DistributionSource& src, const gmrf::Graph& tree,
                         const std::vector<std::string>& names) {
  gmrf::Json j;
  j["method"] = "chow_liu";
  j["num_vars"] = src.num_vars();
  if (!names.empty()) j["names"] = names;
  j["edges"] = gmrf::to_json(tree);
  return j;
}

void write_graph_files(const fs::path& out_dir, const gmrf::Graph& g,
                       const std::vector<std::string>& names) {
  auto edges = open_out(out_dir, "graph.edges");
  gmrf::write_edge_list(edges, g);
  auto dot = open_out(out_dir, "graph.dot");
  gmrf::write_dot(dot, g, names);
}

// ---------------------------------------------------------------- learn

struct LearnArgs {
  std::string input;
  std::string out = ".";
  std::vector<std::string> maps;
  std::string map_file;
  std::string alphabet;
  std::string missing;
  std::optional<double> participation;
  LearnerFlags learner;
};

int cmd_learn(const LearnArgs& a) {
  gmrf::IngestOptions opts;
  if (!a.map_file.empty()) {
    std::ifstream in(a.map_file);
    if (!in) throw gmrf::ParseError("cannot open '" + a.map_file + "'", 0);
    opts.mappings = gmrf::read_mappings(in);
  }
  for (const auto& m : a.maps) opts.mappings.push_back(gmrf::parse_mapping(m));
  if (!a.alphabet.empty()) opts.alphabet = split_list(a.alphabet);

  // Participation is measured on raw tokens, before any mapping.
  gmrf::DiscreteDataset data = gmrf::load_csv(a.input);
  if (a.participation) {
    if (a.missing.empty()) throw gmrf::ArgumentError("--participation needs --missing");
    data = gmrf::filter_participation(data, a.missing, *a.participation);
  }
  data = gmrf::remap(data, opts);
  if (data.num_vars() < 2) throw gmrf::ArgumentError("need at least 2 columns to learn a graph");

  const auto src = gmrf::DistributionSource::empirical(data);
  const fs::path out_dir(a.out);
  const auto cfg = a.learner.config();
  gmrf::Graph graph;
  gmrf::Json doc;
  if (a.learner.chow_liu) {
    graph = gmrf::chow_liu(src);
    doc = chow_liu_json(src, graph, data.names());
  } else {
    auto result = gmrf::learn_structure(src, cfg, a.learner.threads);
    graph = result.graph;
    doc = gmrf::to_json(result, cfg, data.names());
    doc["num_samples"] = data.num_samples();
  }
  auto json_out = open_out(out_dir, "result.json");
  json_out << doc.dump(2) << '\n';
  write_graph_files(out_dir, graph, data.names());
  std::cout << graph.num_vertices() << " variables, " << data.num_samples() << " samples, "
            << graph.num_edges() << " edges\n";
  return 0;
}

// ---------------------------------------------------------------- oracle

struct OracleArgs {
  std::string model;
  std::string theta = "const:0.5";
  std::optional<double> epsilon;
  bool auto_epsilon = false;
  std::string out = ".";
  LearnerFlags learner;
};

int cmd_oracle(const OracleArgs& a) {
  const gmrf::ModelSpec spec{gmrf::parse_family(a.model), parse_theta(a.theta)};
  const auto model = gmrf::build(spec);
  const auto joint = gmrf::exact_joint(model);
  const auto src = gmrf::DistributionSource::exact(joint);
  const fs::path out_dir(a.out);

  if (a.learner.chow_liu) {
    const auto tree = gmrf::chow_liu(src);
    auto json_out = open_out(out_dir, "result.json");
    json_out << chow_liu_json(src, tree, {}).dump(2) << '\n';
    auto trace = open_out(out_dir, "trace.txt");
    for (const auto& e : tree.edges()) {
      trace << "edge " << e.first << ' ' << e.second
            << "  I=" << gmrf::detail::fixed12(gmrf::mutual_information(src, e.first, e.second))
            << '\n';
    }
    std::cout << "chow-liu: " << tree.num_edges() << " edges\n";
    return 0;
  }

  auto cfg = a.learner.config();
  double gap = 0.0;
  if (a.auto_epsilon) {
    gap = gmrf::model_nondegeneracy(src, model.graph());
    if (!std::isfinite(gap) || !(gap > 0.0)) {
      throw gmrf::ArgumentError("model has no positive non-degeneracy gap; pass --epsilon");
    }
    cfg.epsilon = gap / 2.0;
  } else {
    cfg.epsilon = *a.epsilon;
  }
  const auto result = gmrf::learn_structure(src, cfg, a.learner.threads);
  auto doc = gmrf::to_json(result, cfg);
  doc["model"] = gmrf::to_string(spec.family);
  doc["weights"] = gmrf::to_string(spec.weights);
  if (a.auto_epsilon) doc["nondegeneracy_gap"] = gap;
  doc["recovered"] = result.graph.edges() == model.graph().edges();
  auto json_out = open_out(out_dir, "result.json");
  json_out << doc.dump(2) << '\n';
  auto trace = open_out(out_dir, "trace.txt");
  gmrf::write_trace(trace, result);
  std::cout << "epsilon " << gmrf::format_number(cfg.epsilon) << ": " << result.graph.num_edges()
            << " edges, " << (doc["recovered"].get<bool>() ? "exact recovery" : "differs from model")
            << '\n';
  return 0;
}

// ---------------------------------------------------------------- experiment

struct ExperimentArgs {
  std::string model;
  std::string theta = "const:0.5";
  std::string n_values;
  std::string epsilons = "0.1";
  std::size_t trials = 50;
  double target = 0.95;
  std::uint64_t seed = 1;
  std::string sampler = "exact";
  std::optional<std::size_t> burn_in;
  std::size_t thinning = 10;
  std::string timing = "off";
  std::string out = ".";
  LearnerFlags learner;
};

int cmd_experiment(const ExperimentArgs& a) {
  gmrf::ExperimentSpec spec;
  spec.model = {gmrf::parse_family(a.model), parse_theta(a.theta)};
  spec.n_values.clear();
  for (const auto& s : split_list(a.n_values)) spec.n_values.push_back(parse_count(s));
  spec.epsilons.clear();
  for (const auto& s : split_list(a.epsilons)) spec.epsilons.push_back(parse_double(s, "epsilon"));
  spec.trials = a.trials;
  spec.success_target = a.target;
  spec.seed = a.seed;
  spec.sampler = a.sampler == "gibbs" ? gmrf::Sampler::Gibbs : gmrf::Sampler::Exact;
  spec.gibbs.burn_in = a.burn_in;
  spec.gibbs.thinning = a.thinning;
  spec.symmetrization = parse_symmetrization(a.learner.symmetrize);
  spec.prune = a.learner.prune;
  spec.max_neighborhood = a.learner.max_neighborhood;
  spec.timing = a.timing == "wall";
  spec.threads = a.learner.threads;
  spec.validate();

  const fs::path out_dir(a.out);
  auto csv = open_out(out_dir, "results.csv");
  csv << gmrf::kResultsHeader << '\n' << std::flush;
  auto result = gmrf::run_experiment(spec, [&](const std::vector<gmrf::ExperimentRow>& rows) {
    gmrf::write_results_rows(csv, rows);
    csv.flush();
    for (const auto& r : rows) {
      std::cerr << "n=" << r.n << " eps=" << gmrf::format_number(r.epsilon)
                << " success=" << r.successes << "/" << r.trials << '\n';
    }
  });
  auto summary = open_out(out_dir, "summary.json");
  summary << gmrf::summary_json(spec, result).dump(2) << '\n';
  for (double e : spec.epsilons) {
    auto n = result.minimal_n(e, spec.success_target);
    std::cout << "epsilon " << gmrf::format_number(e) << ": minimal n "
              << (n ? std::to_string(*n) : std::string("not reached")) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- bounds

struct BoundsArgs {
  std::size_t degree = 0;
  std::optional<double> epsilon, beta, gamma, delta;
  std::size_t alphabet_size = 2;
  std::optional<std::size_t> p;
  std::string log_base = "2";
  bool json = false;
};

int cmd_bounds(const BoundsArgs& a) {
  std::vector<gmrf::BoundReport> reports;
  const auto D = static_cast<double>(a.degree);
  if (a.epsilon) reports.push_back(gmrf::theorem1_h(*a.epsilon, a.degree, a.alphabet_size));
  if (a.epsilon && a.p && a.delta) {
    reports.push_back(gmrf::lemma5_sample_bound(
        *a.epsilon, a.degree, a.alphabet_size, *a.p, *a.delta,
        a.log_base == "e" ? gmrf::LogBase::Nats : gmrf::LogBase::Bits));
  }
  // With --gamma the β range of the girth guarantee does not apply to the
  // lemma6_epsilon report, so an out-of-range β only skips the former.
  const bool girth_in_range = a.beta && a.degree > 0 && *a.beta > 0.0 &&
                              *a.beta < std::numbers::ln2 / (2.0 * D);
  if (a.beta && (girth_in_range || !a.gamma)) {
    const auto g = gmrf::theorem2_params(*a.beta, a.degree);
    reports.push_back({"theorem2_epsilon", {{"beta", *a.beta}, {"D", D}}, g.epsilon,
                       "2^-10 sinh^2(2 beta)"});
    reports.push_back({"theorem2_girth", {{"beta", *a.beta}, {"D", D}}, g.girth_bound,
                       "(2^15 / ln 2)(D^2 ln 2 - ln sinh(2 beta))"});
  }
  if (a.beta && a.gamma) {
    reports.push_back({"lemma6_epsilon",
                       {{"beta", *a.beta}, {"gamma", *a.gamma}, {"D", D}},
                       gmrf::lemma6_epsilon(*a.beta, *a.gamma, a.degree),
                       "2^-7 e^(-6 gamma D) sinh^2(2 beta)"});
  }
  if (a.gamma && !a.beta) throw gmrf::ArgumentError("--gamma needs --beta");
  if (reports.empty()) {
    throw gmrf::ArgumentError("nothing to compute: pass --epsilon and/or --beta");
  }
  if (a.json) {
    gmrf::Json arr = gmrf::Json::array();
    for (const auto& r : reports) arr.push_back(gmrf::to_json(r));
    std::cout << arr.dump(2) << '\n';
    return 0;
  }
  std::size_t width = 0;
  for (const auto& r : reports) width = std::max(width, r.name.size());
  for (const auto& r : reports) {
    char value[64];
    std::snprintf(value, sizeof value, "%.10e", r.value);
    std::cout << r.name << std::string(width - r.name.size() + 2, ' ') << value
              << (r.underflow ? " (underflow)" : "") << "   " << r.formula << "   [";
    for (std::size_t k = 0; k < r.inputs.size(); ++k) {
      std::cout << (k ? ", " : "") << r.inputs[k].first << "=" << gmrf::format_number(r.inputs[k].second);
    }
    std::cout << "]\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Greedy structure learning for discrete Markov random fields", "greedymrf"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "greedymrf 1.0.0");

  LearnArgs learn;
  auto* learn_cmd = app.add_subcommand("learn", "Learn a graph from a CSV dataset");
  learn_cmd->add_option("--input", learn.input, "CSV file: header row, one sample per line")
      ->required()
      ->check(CLI::ExistingFile);
  learn_cmd->add_option("--out", learn.out, "Output directory (result.json, graph.dot, graph.edges)");
  learn_cmd->add_option("--map", learn.maps, "Token rewrite FROM=TO (repeatable, first match wins)");
  learn_cmd->add_option("--map-file", learn.map_file, "File of FROM=TO lines")->check(CLI::ExistingFile);
  learn_cmd->add_option("--alphabet", learn.alphabet, "Comma-separated symbols fixing the value order");
  learn_cmd->add_option("--missing", learn.missing, "Raw token marking a missing entry");
  learn_cmd->add_option("--participation", learn.participation,
                        "Keep columns with at least this fraction of non-missing entries")
      ->check(CLI::Range(0.0, 1.0));
  learn.learner.attach(learn_cmd);

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Run the learner on an exact model distribution");
  oracle_cmd->add_option("--model", oracle.model, kModelHelp)->required();
  oracle_cmd->add_option("--theta", oracle.theta, kThetaHelp);
  oracle_cmd->add_option("--out", oracle.out, "Output directory (result.json, trace.txt)");
  auto* eps_opt = oracle_cmd->add_option("--epsilon", oracle.epsilon, "Greedy threshold")
                      ->check(CLI::PositiveNumber);
  auto* auto_opt = oracle_cmd->add_flag("--auto-epsilon", oracle.auto_epsilon,
                                        "Use half the measured non-degeneracy gap");
  eps_opt->excludes(auto_opt);
  oracle.learner.attach(oracle_cmd, false);

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "Success probability versus sample count");
  exp_cmd->add_option("--model", exp.model, kModelHelp)->required();
  exp_cmd->add_option("--theta", exp.theta, kThetaHelp);
  exp_cmd->add_option("--n", exp.n_values, "Ascending comma-separated sample counts (1e4 allowed)")
      ->required();
  exp_cmd->add_option("--epsilon", exp.epsilons, "Comma-separated epsilon values (sweep)");
  exp_cmd->add_option("--trials", exp.trials, "Trials per (n, epsilon)")->check(CLI::PositiveNumber);
  exp_cmd->add_option("--target", exp.target, "Success rate defining the minimal n");
  exp_cmd->add_option("--seed", exp.seed, "Base seed; trial k uses seed XOR k");
  exp_cmd->add_option("--sampler", exp.sampler, "exact (p <= 24) or gibbs")
      ->check(CLI::IsMember({"exact", "gibbs"}));
  exp_cmd->add_option("--burn-in", exp.burn_in, "Gibbs burn-in sweeps (default 1000 p)");
  exp_cmd->add_option("--thinning", exp.thinning, "Gibbs sweeps between samples")
      ->check(CLI::PositiveNumber);
  exp_cmd->add_option("--timing", exp.timing, "wall records learning time; off writes 0 (reproducible)")
      ->check(CLI::IsMember({"wall", "off"}));
  exp_cmd->add_option("--out", exp.out, "Output directory (results.csv, summary.json)");
  exp.learner.threads = 0;
  exp.learner.attach(exp_cmd, false);

  BoundsArgs bounds;
  auto* bounds_cmd = app.add_subcommand("bounds", "Evaluate the recovery bound formulas");
  bounds_cmd->add_option("--degree", bounds.degree, "Maximum degree D")->required();
  bounds_cmd->add_option("--epsilon", bounds.epsilon, "Non-degeneracy constant")
      ->check(CLI::PositiveNumber);
  bounds_cmd->add_option("--beta", bounds.beta, "Lower bound on |theta| (Ising)");
  bounds_cmd->add_option("--gamma", bounds.gamma, "Upper bound on |theta| (Ising)");
  bounds_cmd->add_option("--alphabet-size", bounds.alphabet_size, "|X|");
  bounds_cmd->add_option("--p", bounds.p, "Number of variables");
  bounds_cmd->add_option("--delta", bounds.delta, "Failure probability");
  bounds_cmd->add_option("--log-base", bounds.log_base, "Log base of the sample bound: 2 or e")
      ->check(CLI::IsMember({"2", "e"}));
  bounds_cmd->add_flag("--json", bounds.json, "Print JSON instead of text");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*oracle_cmd && !oracle.learner.chow_liu && !oracle.epsilon && !oracle.auto_epsilon) {
      throw gmrf::ArgumentError("oracle needs --epsilon or --auto-epsilon");
    }
    if (*learn_cmd) return cmd_learn(learn);
    if (*oracle_cmd) return cmd_oracle(oracle);
    if (*exp_cmd) return cmd_experiment(exp);
    return cmd_bounds(bounds);
  } catch (const gmrf::ArgumentError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const gmrf::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const gmrf::ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const gmrf::DomainError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const gmrf::EmptyDatasetError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
