// Copyright 2026 The advsgm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iterator>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "advsgm/checkpoint.h"
#include "advsgm/embedding.h"
#include "advsgm/errors.h"
#include "advsgm/eval.h"
#include "advsgm/graph.h"
#include "advsgm/privacy.h"
#include "advsgm/trainer.h"

#ifndef ADVSGM_VERSION_STRING
#define ADVSGM_VERSION_STRING "unknown"
#endif

namespace advsgm::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Raised for usage and I/O problems that map to exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr const char* kGraphFile = "graph.txt";
constexpr const char* kIdMapFile = "idmap.txt";
constexpr const char* kLabelsFile = "labels.txt";
constexpr const char* kTrainFile = "train.txt";
constexpr const char* kTestPosFile = "test_pos.txt";
constexpr const char* kTestNegFile = "test_neg.txt";
constexpr const char* kDatasetFile = "dataset.json";
constexpr const char* kManifestFile = "manifest.json";
constexpr const char* kEmbeddingsFile = "embeddings.txt";
constexpr const char* kReportFile = "report.json";

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path.string());
  return std::string(std::istreambuf_iterator<char>(in), {});
}

std::ifstream OpenInput(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path.string());
  return in;
}

void WriteFile(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !out.write(contents.data(),
                         static_cast<std::streamsize>(contents.size()))) {
    throw UsageError("cannot write " + path.string());
  }
}

std::string Hex(std::uint64_t value) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << value;
  return out.str();
}

std::uint64_t Fnv1a(std::string_view bytes,
                    std::uint64_t hash = 1469598103934665603ULL) {
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

// Seed precedence: explicit flag, then ADVSGM_SEED, then 0.
std::uint64_t ResolveSeed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("ADVSGM_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long value = std::stoull(env, &used);
      if (used == std::string_view(env).size()) return value;
    } catch (const std::exception&) {
    }
    throw ConfigError(std::string("ADVSGM_SEED is not an integer: ") + env);
  }
  return 0;
}

void RefuseOverwrite(const fs::path& dir, std::initializer_list<const char*> files,
                     bool force) {
  if (force) return;
  for (const char* f : files) {
    if (fs::exists(dir / f)) {
      throw UsageError((dir / f).string() +
                       " already exists; pass --force to overwrite");
    }
  }
}

json NumberOrNull(double value) {
  return std::isfinite(value) ? json(value) : json(nullptr);
}

// ---------------------------------------------------------------- bundle

struct Bundle {
  Graph graph;
  EdgeSplit split;
  json meta;
};

Graph ReadGraphFile(const fs::path& path) {
  std::ifstream in = OpenInput(path);
  return ReadGraph(in);
}

Bundle LoadBundle(const fs::path& dir) {
  if (!fs::is_directory(dir)) {
    throw UsageError("dataset bundle " + dir.string() + " does not exist");
  }
  Bundle bundle;
  bundle.meta = json::parse(ReadFile(dir / kDatasetFile), nullptr, false);
  if (bundle.meta.is_discarded()) {
    throw IntegrityError(dir.string() + "/" + kDatasetFile + " is not JSON");
  }
  Graph graph = ReadGraphFile(dir / kGraphFile);
  {
    std::ifstream in = OpenInput(dir / kIdMapFile);
    graph = graph.WithOriginalIds(ReadIdMap(in, graph.num_nodes()));
  }
  if (fs::exists(dir / kLabelsFile)) {
    std::ifstream in = OpenInput(dir / kLabelsFile);
    graph = LoadLabels(in, graph);
  }
  Graph train = ReadGraphFile(dir / kTrainFile);
  if (train.num_nodes() != graph.num_nodes()) {
    throw IntegrityError("train graph node count differs from the graph");
  }
  std::vector<Edge> train_edges(train.edges().begin(), train.edges().end());
  bundle.split.train_graph = graph.WithEdges(std::move(train_edges));
  {
    std::ifstream in = OpenInput(dir / kTestPosFile);
    bundle.split.test_pos = ReadPairs(in);
  }
  {
    std::ifstream in = OpenInput(dir / kTestNegFile);
    bundle.split.test_neg = ReadPairs(in);
  }
  bundle.split.seed = bundle.meta.value("split_seed", std::uint64_t{0});
  bundle.graph = std::move(graph);
  return bundle;
}

std::string DatasetHash(const fs::path& dir) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (const char* f : {kGraphFile, kIdMapFile, kTrainFile, kTestPosFile,
                        kTestNegFile, kLabelsFile}) {
    if (fs::exists(dir / f)) hash = Fnv1a(ReadFile(dir / f), hash);
  }
  return Hex(hash);
}

// ---------------------------------------------------------------- ingest

struct IngestArgs {
  std::string edges;
  std::string labels;
  std::string out;
  std::string sbm;
  double p_in = 0.15;
  double p_out = 0.01;
  double train_fraction = 0.9;
  std::optional<std::uint64_t> seed;
  bool force = false;
};

std::vector<std::size_t> ParseBlocks(const std::string& spec) {
  std::vector<std::size_t> blocks;
  std::stringstream in(spec);
  std::string token;
  while (std::getline(in, token, ',')) {
    try {
      std::size_t used = 0;
      blocks.push_back(std::stoull(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ConfigError("invalid block size '" + token + "' in --sbm");
    }
  }
  if (blocks.empty()) throw ConfigError("--sbm needs at least one block");
  return blocks;
}

int RunIngest(const IngestArgs& args, std::ostream& out) {
  const std::uint64_t seed = ResolveSeed(args.seed);
  Graph graph;
  std::string source;
  if (!args.sbm.empty()) {
    graph = GenerateSbm(ParseBlocks(args.sbm), args.p_in, args.p_out, seed);
    source = "sbm:" + args.sbm;
  } else {
    if (!fs::exists(args.edges)) {
      throw UsageError("edge file " + args.edges + " does not exist");
    }
    try {
      graph = LoadEdgeListFile(args.edges);
    } catch (const ParseError& e) {
      throw ParseError(args.edges + ": " + e.what(), 0);
    }
    source = args.edges;
  }
  if (!args.labels.empty()) {
    std::ifstream in = OpenInput(args.labels);
    try {
      graph = LoadLabels(in, graph);
    } catch (const Error& e) {
      throw ValidationError(args.labels + ": " + e.what());
    }
  }
  const EdgeSplit split = SplitEdges(graph, args.train_fraction, seed);

  const fs::path dir(args.out);
  fs::create_directories(dir);
  RefuseOverwrite(dir, {kGraphFile, kDatasetFile}, args.force);
  auto write = [&](const char* name, auto&& writer) {
    std::ostringstream buf;
    writer(buf);
    WriteFile(dir / name, buf.str());
  };
  write(kGraphFile, [&](std::ostream& o) { WriteGraph(graph, o); });
  write(kIdMapFile, [&](std::ostream& o) { WriteIdMap(graph, o); });
  if (graph.has_labels()) {
    write(kLabelsFile, [&](std::ostream& o) { WriteLabels(graph, o); });
  } else if (fs::exists(dir / kLabelsFile)) {
    fs::remove(dir / kLabelsFile);
  }
  write(kTrainFile, [&](std::ostream& o) { WriteGraph(split.train_graph, o); });
  write(kTestPosFile, [&](std::ostream& o) { WritePairs(split.test_pos, o); });
  write(kTestNegFile, [&](std::ostream& o) { WritePairs(split.test_neg, o); });
  const json meta = {
      {"source", source},
      {"nodes", graph.num_nodes()},
      {"edges", graph.num_edges()},
      {"train_edges", split.train_graph.num_edges()},
      {"test_pairs", split.test_pos.size()},
      {"train_fraction", args.train_fraction},
      {"split_seed", seed},
      {"labeled", graph.has_labels()},
  };
  WriteFile(dir / kDatasetFile, meta.dump(2) + "\n");

  out << "nodes: " << graph.num_nodes() << "\n"
      << "edges: " << graph.num_edges() << "\n"
      << "train edges: " << split.train_graph.num_edges() << "\n"
      << "test pairs: " << split.test_pos.size() << " positive, "
      << split.test_neg.size() << " negative\n"
      << "bundle: " << dir.string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- train

struct TrainArgs {
  std::string data;
  std::string out;
  std::string algo = "advsgm";
  TrainConfig config;
  std::optional<std::uint64_t> seed;
  bool use_full_graph = false;
  bool force = false;
  std::string checkpoint;
  std::uint64_t checkpoint_every = 0;
  std::string resume;
};

json ConfigJson(const TrainConfig& c) {
  return {
      {"algo", AlgoName(c.algo)},
      {"B", c.batch_size},
      {"k", c.negatives},
      {"r", c.dim},
      {"C", c.clip_norm},
      {"sigma", c.noise_multiplier},
      {"sigma_g", c.sigma_g},
      {"eta_d", c.eta_d},
      {"eta_g", c.eta_g},
      {"epochs", c.epochs},
      {"nD", c.disc_iters},
      {"nG", c.gen_iters},
      {"eps", c.target_eps},
      {"delta", c.target_delta},
      {"a", c.clip_lower},
      {"b", c.clip_upper},
      {"seed", c.seed},
      {"lambda", c.fixed_lambda},
      {"plain_sigmoid", c.plain_sigmoid},
      {"project_rows", c.project_rows},
  };
}

json ReportJson(const TrainReport& r, const Trainer& trainer) {
  json ledger = nullptr;
  if (const auto& l = trainer.ledger()) {
    ledger = {{"alpha", l->alpha_grid()},
              {"spent", l->spent()},
              {"steps_recorded", l->steps_recorded()}};
  }
  return {
      {"algo", AlgoName(trainer.config().algo)},
      {"stopped_by", StopReasonName(r.stopped_by)},
      {"epochs_completed", r.epochs_completed},
      {"disc_iterations", r.disc_iterations},
      {"gen_iterations", r.gen_iterations},
      {"steps_recorded", r.steps_recorded},
      {"target_eps", trainer.config().target_eps},
      {"target_delta", trainer.config().target_delta},
      {"final_eps_at_delta", NumberOrNull(r.final_eps_at_delta)},
      {"stop_delta_hat", r.stop_delta_hat},
      {"disc_loss_trace", r.disc_loss_trace},
      {"adv_loss_trace", r.adv_loss_trace},
      {"gen_loss_trace", r.gen_loss_trace},
      {"wall_seconds", r.wall_seconds},
      {"ledger", ledger},
  };
}

int RunTrain(TrainArgs args, bool sigma_given, std::ostream& out,
             std::ostream& err) {
  if (args.checkpoint_every > 0 && args.checkpoint.empty()) {
    throw UsageError("--checkpoint-every needs --checkpoint");
  }
  const fs::path data(args.data);
  const Bundle bundle = LoadBundle(data);
  const Graph& graph =
      args.use_full_graph ? bundle.graph : bundle.split.train_graph;

  std::optional<TrainerState> resumed;
  if (!args.resume.empty()) {
    try {
      resumed = LoadCheckpoint(fs::path(args.resume));
    } catch (const std::ios_base::failure& e) {
      throw UsageError(e.what());
    }
    args.config = resumed->config;
  } else {
    args.config.algo = ParseAlgo(args.algo);
    args.config.seed = ResolveSeed(args.seed);
  }
  const TrainConfig& config = args.config;
  if (config.algo == Algo::kSgm && sigma_given) {
    err << "warning: --sigma is unused by the non-private sgm baseline\n";
  }
  Trainer trainer = resumed ? Trainer::FromState(graph, *resumed)
                            : Trainer(graph, config);

  const fs::path dir(args.out);
  fs::create_directories(dir);
  RefuseOverwrite(dir, {kManifestFile, kEmbeddingsFile, kReportFile},
                  args.force);
  const json manifest = {
      {"version", ADVSGM_VERSION_STRING},
      {"command", "train"},
      {"config", ConfigJson(config)},
      {"config_hash", Hex(config.Hash())},
      {"seed", config.seed},
      {"dataset", {{"path", data.string()},
                   {"hash", DatasetHash(data)},
                   {"graph", args.use_full_graph ? "full" : "train"}}},
      {"resumed_from", args.resume.empty() ? json(nullptr) : json(args.resume)},
      {"outputs", {{"embeddings", (dir / kEmbeddingsFile).string()},
                   {"report", (dir / kReportFile).string()}}},
  };
  WriteFile(dir / kManifestFile, manifest.dump(2) + "\n");

  while (!trainer.finished()) {
    trainer.Run(args.checkpoint_every > 0 ? args.checkpoint_every
                                          : std::numeric_limits<std::uint64_t>::max());
    if (!args.checkpoint.empty()) SaveCheckpoint(trainer.State(), fs::path(args.checkpoint));
  }

  std::ostringstream emb;
  WriteEmbeddings(trainer.embeddings().in, graph, emb);
  WriteFile(dir / kEmbeddingsFile, emb.str());
  const TrainReport report = trainer.Report();
  WriteFile(dir / kReportFile, ReportJson(report, trainer).dump(2) + "\n");

  out << "algo: " << AlgoName(config.algo) << "\n"
      << "stopped by: " << StopReasonName(report.stopped_by) << "\n"
      << "discriminator iterations: " << report.disc_iterations << "\n"
      << "epochs completed: " << report.epochs_completed << "\n";
  if (trainer.ledger()) {
    out << "final eps at delta=" << config.target_delta << ": "
        << report.final_eps_at_delta << "\n";
  } else {
    out << "non-private run (no privacy accounting)\n";
  }
  out << "embeddings: " << (dir / kEmbeddingsFile).string() << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------- account

struct AccountArgs {
  double sigma = 5.0;
  std::size_t batch_size = 128;
  std::size_t negatives = 5;
  std::size_t edges = 0;
  std::size_t nodes = 0;
  double eps = 6.0;
  double delta = 1e-5;
  int alpha_max = kDefaultMaxAlpha;
};

int RunAccount(const AccountArgs& args, std::ostream& out) {
  if (args.batch_size < 1 || args.negatives < 1) {
    throw ConfigError("B and k must be at least 1");
  }
  if (args.edges < args.batch_size) {
    throw ConfigError("B exceeds the edge count; sampling is without replacement");
  }
  if (args.nodes < args.batch_size * args.negatives) {
    throw ConfigError("B*k exceeds the node count; sampling is without replacement");
  }
  if (!(args.sigma > 0.0)) throw ConfigError("sigma must be positive");
  const double gamma_pos = static_cast<double>(args.batch_size) /
                           static_cast<double>(args.edges);
  const double gamma_neg =
      static_cast<double>(args.batch_size * args.negatives) /
      static_cast<double>(args.nodes);
  const std::vector<int> grid = AlphaGrid(kDefaultMinAlpha, args.alpha_max);
  const std::uint64_t steps =
      MaxSteps(args.sigma, gamma_pos, gamma_neg, args.eps, args.delta, grid);

  PrivacyLedger ledger(args.sigma, args.eps, args.delta, grid);
  for (std::uint64_t n = 0; n < steps; ++n) {
    ledger.RecordStep(gamma_pos, 0.0);
    ledger.RecordStep(0.0, gamma_neg);
  }
  out << "gamma_pos: " << gamma_pos << "\n"
      << "gamma_neg: " << gamma_neg << "\n"
      << "max discriminator iterations: " << steps << "\n";
  out << std::setw(6) << "alpha" << std::setw(16) << "spent" << std::setw(16)
      << "eps_at_delta" << "\n";
  const double log_inv_delta = std::log(1.0 / args.delta);
  for (std::size_t x = 0; x < grid.size(); ++x) {
    out << std::setw(6) << grid[x] << std::setw(16) << std::setprecision(8)
        << ledger.spent()[x] << std::setw(16)
        << ledger.spent()[x] + log_inv_delta / (grid[x] - 1) << "\n";
  }
  const DpGuarantee best = ledger.ToDp(args.delta);
  out << "eps at delta after " << steps << " iterations: " << best.eps
      << " (alpha " << best.best_alpha << ")\n";
  return kExitOk;
}

// ---------------------------------------------------------------- eval

struct EvalArgs {
  std::string data;
  std::string embeddings;
  std::string task = "lp";
  std::string algo;
  std::optional<double> eps;
  std::optional<std::uint64_t> seed;
  AffinityOptions affinity;
};

int RunEval(const EvalArgs& args, std::ostream& out) {
  const fs::path data(args.data);
  const Bundle bundle = LoadBundle(data);
  EmbeddingMatrix emb;
  {
    std::ifstream in = OpenInput(args.embeddings);
    emb = ReadEmbeddings(in, bundle.graph);
  }
  // Defaults from the run manifest beside the embeddings, when present.
  std::string algo = args.algo;
  json eps = args.eps ? json(*args.eps) : json(nullptr);
  std::optional<std::uint64_t> seed = args.seed;
  const fs::path manifest_path =
      fs::path(args.embeddings).parent_path() / kManifestFile;
  if (fs::exists(manifest_path)) {
    const json manifest =
        json::parse(ReadFile(manifest_path), nullptr, false);
    if (!manifest.is_discarded() && manifest.contains("config")) {
      const json& c = manifest["config"];
      if (algo.empty()) algo = c.value("algo", "");
      if (eps.is_null() && c.value("algo", "") != "sgm" &&
          c.value("sigma", 0.0) > 0.0) {
        eps = c.value("eps", 0.0);
      }
      if (!seed) seed = c.value("seed", std::uint64_t{0});
    }
  }
  json record = {
      {"task", args.task},
      {"dataset", bundle.meta.value("source", data.string())},
      {"algo", algo.empty() ? json(nullptr) : json(algo)},
      {"eps", eps},
      {"seed", ResolveSeed(seed)},
  };
  if (args.task == "lp") {
    record["value"] = LinkPredictionAuc(emb, bundle.split);
    record["metric"] = "auc";
  } else if (args.task == "cluster") {
    if (!bundle.graph.has_labels()) {
      throw ValidationError(
          "clustering evaluation needs labels; ingest with --labels");
    }
    const ClusteringScore score =
        ClusterAndScore(emb, bundle.graph, args.affinity);
    record["value"] = score.mutual_information;
    record["metric"] = "mutual_information_nats";
    record["clusters"] = score.clustering.exemplars.size();
    record["converged"] = score.clustering.converged;
    record["iterations"] = score.clustering.iterations_run;
  } else {
    throw UsageError("--task must be lp or cluster");
  }
  out << record.dump() << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Differentially private skip-gram graph embeddings", "advsgm"};
  app.set_version_flag("--version", std::string(ADVSGM_VERSION_STRING));
  app.require_subcommand(1);

  IngestArgs ingest;
  auto* ingest_cmd =
      app.add_subcommand("ingest", "Validate a graph and write a dataset bundle");
  auto* edges_opt =
      ingest_cmd->add_option("--edges", ingest.edges, "Edge list file");
  auto* sbm_opt = ingest_cmd->add_option(
      "--sbm", ingest.sbm, "Generate an SBM instead, e.g. 100,100,100,100");
  edges_opt->excludes(sbm_opt);
  ingest_cmd->add_option("--labels", ingest.labels, "Node label file");
  ingest_cmd->add_option("--p-in", ingest.p_in, "SBM within-block probability");
  ingest_cmd->add_option("--p-out", ingest.p_out, "SBM cross-block probability");
  ingest_cmd->add_option("--out", ingest.out, "Bundle directory")->required();
  ingest_cmd->add_option("--train-fraction", ingest.train_fraction,
                         "Fraction of edges kept for training");
  ingest_cmd->add_option("--seed", ingest.seed, "Split / generator seed");
  ingest_cmd->add_flag("--force", ingest.force, "Overwrite an existing bundle");

  TrainArgs train;
  TrainConfig& tc = train.config;
  auto* train_cmd = app.add_subcommand("train", "Train embeddings");
  train_cmd->add_option("--data", train.data, "Dataset bundle")->required();
  train_cmd->add_option("--out", train.out, "Run directory")->required();
  train_cmd->add_option("--algo", train.algo, "advsgm | sgm | dp-sgm | dp-asgm");
  train_cmd->add_option("--eps", tc.target_eps, "Target epsilon");
  train_cmd->add_option("--delta", tc.target_delta, "Target delta");
  auto* sigma_opt = train_cmd->add_option(
      "--sigma", tc.noise_multiplier, "Noise multiplier; 0 disables DP");
  train_cmd->add_option("--B", tc.batch_size, "Batch size");
  train_cmd->add_option("--k", tc.negatives, "Negatives per positive");
  train_cmd->add_option("--r", tc.dim, "Embedding dimension");
  train_cmd->add_option("--C", tc.clip_norm, "Clip bound");
  train_cmd->add_option("--epochs", tc.epochs, "Epochs");
  train_cmd->add_option("--nD", tc.disc_iters, "Discriminator iterations per epoch");
  train_cmd->add_option("--nG", tc.gen_iters, "Generator iterations per epoch");
  train_cmd->add_option("--eta-d", tc.eta_d, "Discriminator learning rate");
  train_cmd->add_option("--eta-g", tc.eta_g, "Generator learning rate");
  train_cmd->add_option("--sigma-g", tc.sigma_g, "Generator latent std");
  train_cmd->add_option("--a", tc.clip_lower, "Sigmoid clip lower bound");
  train_cmd->add_option("--b", tc.clip_upper, "Sigmoid clip upper bound");
  train_cmd->add_option("--lambda", tc.fixed_lambda, "dp-asgm adversarial weight");
  train_cmd->add_flag("--plain-sigmoid", tc.plain_sigmoid,
                      "Use the logistic sigmoid (sgm only)");
  train_cmd->add_flag("--project-rows", tc.project_rows,
                      "Re-project touched rows onto the unit ball each step");
  train_cmd->add_option("--seed", train.seed, "Seed (falls back to ADVSGM_SEED)");
  train_cmd->add_flag("--use-full-graph", train.use_full_graph,
                      "Train on every edge instead of the training split");
  train_cmd->add_option("--checkpoint", train.checkpoint,
                        "Write a checkpoint here when training ends");
  train_cmd->add_option("--checkpoint-every", train.checkpoint_every,
                        "Also checkpoint every N iterations");
  train_cmd->add_option("--resume", train.resume,
                        "Continue from a checkpoint (its config wins)");
  train_cmd->add_flag("--force", train.force, "Overwrite an existing run");

  AccountArgs account;
  auto* account_cmd = app.add_subcommand(
      "account", "Iteration budget and per-order RDP spend");
  account_cmd->add_option("--sigma", account.sigma, "Noise multiplier");
  account_cmd->add_option("--B", account.batch_size, "Batch size");
  account_cmd->add_option("--k", account.negatives, "Negatives per positive");
  account_cmd->add_option("--edges", account.edges, "Training edge count")
      ->required();
  account_cmd->add_option("--nodes", account.nodes, "Node count")->required();
  account_cmd->add_option("--eps", account.eps, "Target epsilon");
  account_cmd->add_option("--delta", account.delta, "Target delta");
  account_cmd->add_option("--alpha-max", account.alpha_max,
                          "Largest integer RDP order");

  EvalArgs eval;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate embeddings");
  eval_cmd->add_option("--data", eval.data, "Dataset bundle")->required();
  eval_cmd->add_option("--embeddings", eval.embeddings, "Embedding file")
      ->required();
  eval_cmd->add_option("--task", eval.task, "lp | cluster");
  eval_cmd->add_option("--algo", eval.algo, "Algorithm label for the record");
  eval_cmd->add_option("--eps", eval.eps, "Epsilon label for the record");
  eval_cmd->add_option("--seed", eval.seed, "Seed label for the record");
  eval_cmd->add_option("--damping", eval.affinity.damping,
                       "Affinity propagation damping");
  eval_cmd->add_option("--max-iter", eval.affinity.max_iter,
                       "Affinity propagation iteration cap");
  eval_cmd->add_option("--convergence-window",
                       eval.affinity.convergence_window,
                       "Iterations with a stable exemplar set");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << ADVSGM_VERSION_STRING << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    for (const auto* sub : app.get_subcommands()) {
      err << sub->help();
    }
    return kExitUsage;
  }

  try {
    if (ingest_cmd->parsed()) {
      if (ingest.edges.empty() && ingest.sbm.empty()) {
        throw UsageError("ingest needs --edges or --sbm");
      }
      return RunIngest(ingest, out);
    }
    if (train_cmd->parsed()) {
      return RunTrain(train, sigma_opt->count() > 0, out, err);
    }
    if (account_cmd->parsed()) return RunAccount(account, out);
    if (eval_cmd->parsed()) return RunEval(eval, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitUsage;
}

}  // namespace advsgm::cli
