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

#include "advsgm/trainer.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "advsgm/baselines.h"
#include "advsgm/errors.h"
#include "advsgm/sampling.h"

namespace advsgm {
namespace {

enum Stream : std::uint32_t {
  kInitStream = 0,
  kSamplingStream = 1,
  kNoiseStream = 2,
  kGeneratorStream = 3,
};

std::string SaveRng(const Rng& rng) {
  std::ostringstream out;
  out << rng;
  return out.str();
}

Rng LoadRng(const std::string& text) {
  Rng rng;
  std::istringstream in(text);
  in >> rng;
  if (!in) throw IntegrityError("unreadable random engine state");
  return rng;
}

std::uint64_t Fnv1a(std::string_view bytes) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

BaselineKind ToBaseline(Algo algo) {
  switch (algo) {
    case Algo::kSgm:
      return BaselineKind::kSgm;
    case Algo::kDpAsgm:
      return BaselineKind::kDpAsgm;
    default:
      return BaselineKind::kDpSgm;
  }
}

double Mean(double sum, std::uint64_t count) {
  return count == 0 ? 0.0 : sum / static_cast<double>(count);
}

}  // namespace

std::string_view AlgoName(Algo algo) {
  switch (algo) {
    case Algo::kAdvSgm:
      return "advsgm";
    case Algo::kSgm:
      return "sgm";
    case Algo::kDpSgm:
      return "dp-sgm";
    case Algo::kDpAsgm:
      return "dp-asgm";
  }
  return "unknown";
}

Algo ParseAlgo(std::string_view name) {
  for (Algo algo : {Algo::kAdvSgm, Algo::kSgm, Algo::kDpSgm, Algo::kDpAsgm}) {
    if (AlgoName(algo) == name) return algo;
  }
  throw ConfigError("unknown algorithm '" + std::string(name) +
                    "' (expected advsgm, sgm, dp-sgm or dp-asgm)");
}

std::string_view StopReasonName(StopReason reason) {
  return reason == StopReason::kBudget ? "budget" : "schedule";
}

bool TrainConfig::IsPrivate() const {
  return algo != Algo::kSgm && noise_multiplier > 0.0;
}

bool TrainConfig::HasGenerator() const {
  return algo == Algo::kAdvSgm || algo == Algo::kDpAsgm;
}

void TrainConfig::Validate(const Graph& graph) const {
  auto fail = [](const std::string& what) { throw ConfigError(what); };
  if (batch_size == 0) fail("batch size B must be positive");
  if (batch_size > graph.num_edges()) {
    fail("batch size B=" + std::to_string(batch_size) +
         " exceeds the training edge count " +
         std::to_string(graph.num_edges()));
  }
  if (negatives == 0) fail("negatives per positive k must be positive");
  if (batch_size * negatives > graph.num_nodes()) {
    fail("B*k=" + std::to_string(batch_size * negatives) +
         " exceeds the node count " + std::to_string(graph.num_nodes()) +
         "; negative sampling is without replacement");
  }
  if (dim == 0) fail("embedding dimension r must be positive");
  if (!(clip_norm > 0.0)) fail("clip bound C must be positive");
  if (!(noise_multiplier >= 0.0)) fail("sigma must be nonnegative");
  if (!(sigma_g >= 0.0)) fail("generator noise std must be nonnegative");
  if (!(eta_d > 0.0) || !(eta_g > 0.0)) fail("learning rates must be positive");
  if (epochs == 0 || disc_iters == 0) {
    fail("epoch and discriminator iteration counts must be positive");
  }
  if (!(target_eps > 0.0)) fail("target epsilon must be positive");
  if (!(target_delta > 0.0 && target_delta < 1.0)) {
    fail("target delta must lie in (0, 1)");
  }
  if (!(clip_lower > 0.0 && clip_lower < clip_upper)) {
    fail("sigmoid bounds must satisfy 0 < a < b");
  }
  if (!(fixed_lambda >= 0.0)) fail("fixed lambda must be nonnegative");
  if (plain_sigmoid && algo != Algo::kSgm) {
    fail("the plain sigmoid is only available for sgm");
  }
}

std::uint64_t TrainConfig::Hash() const {
  std::ostringstream out;
  out << std::hexfloat << AlgoName(algo) << '|' << batch_size << '|'
      << negatives << '|' << dim << '|' << clip_norm << '|'
      << noise_multiplier << '|' << sigma_g << '|' << eta_d << '|' << eta_g
      << '|' << epochs << '|' << disc_iters << '|' << gen_iters << '|'
      << target_eps << '|' << target_delta << '|' << clip_lower << '|'
      << clip_upper << '|' << seed << '|' << fixed_lambda << '|'
      << plain_sigmoid << '|' << project_rows;
  return Fnv1a(out.str());
}

Sigmoid TrainConfig::MakeSigmoid() const {
  if (plain_sigmoid) return Sigmoid::Plain();
  return Sigmoid(ClipBounds::Make(clip_lower, clip_upper));
}

Rng MakeStream(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32), stream};
  return Rng(seq);
}

Trainer::Trainer(const Graph& graph, const TrainConfig& config)
    : Trainer(graph, config, true) {}

Trainer::Trainer(const Graph& graph, const TrainConfig& config,
                 bool initialize)
    : graph_(&graph),
      config_(config),
      sigmoid_((config.Validate(graph), config.MakeSigmoid())),
      sampling_rng_(MakeStream(config.seed, kSamplingStream)),
      noise_rng_(MakeStream(config.seed, kNoiseStream)),
      generator_rng_(MakeStream(config.seed, kGeneratorStream)) {
  gamma_pos_ = static_cast<double>(config.batch_size) /
               static_cast<double>(graph.num_edges());
  gamma_neg_ = static_cast<double>(config.batch_size * config.negatives) /
               static_cast<double>(graph.num_nodes());
  if (config.IsPrivate()) {
    ledger_.emplace(config.noise_multiplier, config.target_eps,
                    config.target_delta);
  }
  if (initialize) {
    Rng init = MakeStream(config.seed, kInitStream);
    emb_ = InitEmbeddings(graph.num_nodes(), config.dim, init);
    gen_ = GeneratorParams::Init(config.dim, config.sigma_g, init);
  }
}

Trainer Trainer::FromState(const Graph& graph, const TrainerState& state) {
  Trainer trainer(graph, state.config, false);
  const TrainConfig& config = state.config;
  const Embeddings& emb = state.embeddings;
  if (emb.in.rows() != graph.num_nodes() ||
      emb.out.rows() != graph.num_nodes() || emb.in.dim() != config.dim ||
      emb.out.dim() != config.dim) {
    throw IntegrityError("checkpoint embeddings do not match the graph");
  }
  if (state.generator.theta_for_vj_fake.dim() != config.dim ||
      state.generator.theta_for_vi_fake.dim() != config.dim) {
    throw IntegrityError("checkpoint generator does not match the config");
  }
  trainer.emb_ = emb;
  trainer.gen_ = state.generator;
  if (trainer.ledger_) {
    if (state.ledger_spent.size() != trainer.ledger_->alpha_grid().size()) {
      throw IntegrityError("checkpoint ledger does not match the alpha grid");
    }
    trainer.ledger_->Restore(state.ledger_spent, state.ledger_steps);
  } else if (!state.ledger_spent.empty()) {
    throw IntegrityError("checkpoint ledger present for a non-private run");
  }
  trainer.sampling_rng_ = LoadRng(state.sampling_rng);
  trainer.noise_rng_ = LoadRng(state.noise_rng);
  trainer.generator_rng_ = LoadRng(state.generator_rng);
  trainer.position_ = state.position;
  trainer.finished_ = state.finished;
  trainer.report_ = state.report;
  trainer.epoch_disc_loss_ = state.epoch_disc_loss;
  trainer.epoch_adv_loss_ = state.epoch_adv_loss;
  trainer.epoch_gen_loss_ = state.epoch_gen_loss;
  trainer.epoch_disc_batches_ = state.epoch_disc_batches;
  trainer.epoch_gen_steps_ = state.epoch_gen_steps;
  return trainer;
}

TrainerState Trainer::State() const {
  TrainerState state;
  state.config = config_;
  state.embeddings = emb_;
  state.generator = gen_;
  if (ledger_) {
    state.ledger_spent = ledger_->spent();
    state.ledger_steps = ledger_->steps_recorded();
  }
  state.sampling_rng = SaveRng(sampling_rng_);
  state.noise_rng = SaveRng(noise_rng_);
  state.generator_rng = SaveRng(generator_rng_);
  state.position = position_;
  state.finished = finished_;
  state.report = report_;
  state.epoch_disc_loss = epoch_disc_loss_;
  state.epoch_adv_loss = epoch_adv_loss_;
  state.epoch_gen_loss = epoch_gen_loss_;
  state.epoch_disc_batches = epoch_disc_batches_;
  state.epoch_gen_steps = epoch_gen_steps_;
  return state;
}

bool Trainer::Step() {
  if (finished_) return false;
  if (position_.phase == 0) {
    DiscriminatorIteration();
  } else {
    GeneratorIteration();
  }
  if (finished_) return false;
  Advance();
  return !finished_;
}

void Trainer::Run(std::uint64_t max_iterations) {
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t n = 0; n < max_iterations && Step(); ++n) {
  }
  report_.wall_seconds +=
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
}

void Trainer::DiscriminatorIteration() {
  if (ledger_) {
    // Stop before releasing anything that would push delta_hat to delta.
    PrivacyLedger trial = *ledger_;
    trial.RecordStep(gamma_pos_, 0.0);
    trial.RecordStep(0.0, gamma_neg_);
    if (trial.Exhausted()) {
      report_.stopped_by = StopReason::kBudget;
      report_.stop_delta_hat = trial.DeltaHat();
      finished_ = true;
      return;
    }
  }
  const Batch positive =
      SamplePositiveBatch(*graph_, config_.batch_size, sampling_rng_);
  const Batch negative =
      SampleNegativeBatch(*graph_, positive, config_.negatives, sampling_rng_);
  RunBatch(positive);
  if (ledger_) ledger_->RecordStep(positive.gamma, 0.0);
  RunBatch(negative);
  if (ledger_) ledger_->RecordStep(0.0, negative.gamma);
  ++report_.disc_iterations;
}

StepReport Trainer::RunBatch(const Batch& batch) {
  DiscriminatorOptions options;
  options.clip_norm = config_.clip_norm;
  options.noise_multiplier = config_.noise_multiplier;
  options.learning_rate = config_.eta_d;
  options.project_rows = config_.project_rows;
  const std::size_t count = batch.pairs.size();

  StepReport report;
  if (config_.algo == Algo::kAdvSgm) {
    const FakeNeighbors fakes =
        GenerateFakeNeighbors(gen_, count, generator_rng_, sigmoid_);
    const StepNoise noise = StepNoise::Draw(
        config_.dim, config_.clip_norm * config_.noise_multiplier, noise_rng_);
    report = DiscriminatorStep(batch, emb_, fakes, noise, options, noise_rng_,
                               sigmoid_);
  } else {
    BaselineOptions baseline{ToBaseline(config_.algo), config_.fixed_lambda};
    std::optional<FakeNeighbors> fakes;
    if (config_.algo == Algo::kDpAsgm) {
      fakes = GenerateFakeNeighbors(gen_, count, generator_rng_, sigmoid_);
    }
    report = DpsgdBatchStep(batch, emb_, baseline,
                            fakes ? &*fakes : nullptr, options, noise_rng_,
                            sigmoid_);
  }
  epoch_disc_loss_ -= report.mean_sgm_loss;
  epoch_adv_loss_ += report.mean_adv_loss;
  ++epoch_disc_batches_;
  return report;
}

void Trainer::GeneratorIteration() {
  const std::size_t count =
      std::min(config_.batch_size * (config_.negatives + 1),
               graph_->num_edges());
  const Batch real = SamplePositiveBatch(*graph_, count, generator_rng_);
  const double noise_std = config_.algo == Algo::kAdvSgm
                               ? config_.clip_norm * config_.noise_multiplier
                               : 0.0;
  const GeneratorLossGrad grad = GeneratorLossAndGrad(
      real.pairs, emb_, gen_, noise_std, generator_rng_, sigmoid_);
  ApplyGeneratorStep(gen_, grad, config_.eta_g);
  epoch_gen_loss_ += grad.loss;
  ++epoch_gen_steps_;
  ++report_.gen_iterations;
}

void Trainer::Advance() {
  ++position_.iteration;
  if (position_.phase == 0 && position_.iteration >= config_.disc_iters) {
    position_.phase = 1;
    position_.iteration = 0;
  }
  if (position_.phase == 1 &&
      (!config_.HasGenerator() || position_.iteration >= config_.gen_iters)) {
    CloseEpoch();
    position_.phase = 0;
    position_.iteration = 0;
    ++position_.epoch;
    if (position_.epoch >= config_.epochs) {
      finished_ = true;
      report_.stopped_by = StopReason::kSchedule;
    }
  }
}

void Trainer::CloseEpoch() {
  report_.disc_loss_trace.push_back(Mean(epoch_disc_loss_, epoch_disc_batches_));
  if (config_.algo == Algo::kAdvSgm) {
    report_.adv_loss_trace.push_back(
        Mean(epoch_adv_loss_, epoch_disc_batches_));
  }
  if (config_.HasGenerator()) {
    report_.gen_loss_trace.push_back(Mean(epoch_gen_loss_, epoch_gen_steps_));
  }
  ++report_.epochs_completed;
  epoch_disc_loss_ = epoch_adv_loss_ = epoch_gen_loss_ = 0.0;
  epoch_disc_batches_ = epoch_gen_steps_ = 0;
}

TrainReport Trainer::Report() const {
  TrainReport report = report_;
  if (ledger_) {
    report.steps_recorded = ledger_->steps_recorded();
    report.final_eps_at_delta = ledger_->ToDp(config_.target_delta).eps;
  } else {
    report.steps_recorded = 0;
    report.final_eps_at_delta = std::numeric_limits<double>::infinity();
  }
  return report;
}

TrainResult Train(const Graph& graph, const TrainConfig& config) {
  Trainer trainer(graph, config);
  trainer.Run();
  return TrainResult{trainer.embeddings(), trainer.generator(),
                     trainer.ledger(), trainer.Report()};
}

}  // namespace advsgm
