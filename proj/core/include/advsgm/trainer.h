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

// Alternating discriminator/generator training with budget-based stopping.

#ifndef ADVSGM_TRAINER_H_
#define ADVSGM_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "advsgm/adversarial.h"
#include "advsgm/embedding.h"
#include "advsgm/graph.h"
#include "advsgm/numerics.h"
#include "advsgm/privacy.h"

namespace advsgm {

enum class Algo { kAdvSgm, kSgm, kDpSgm, kDpAsgm };

std::string_view AlgoName(Algo algo);
// Accepts "advsgm", "sgm", "dp-sgm", "dp-asgm". Throws ConfigError.
Algo ParseAlgo(std::string_view name);

struct TrainConfig {
  Algo algo = Algo::kAdvSgm;
  std::size_t batch_size = 128;         // B
  std::size_t negatives = 5;            // k
  std::size_t dim = 128;                // r
  double clip_norm = 1.0;               // C
  double noise_multiplier = 5.0;        // sigma; 0 disables the mechanism
  double sigma_g = 1.0;                 // generator latent std
  double eta_d = 0.1;
  double eta_g = 0.1;
  std::size_t epochs = 50;
  std::size_t disc_iters = 15;          // per epoch
  std::size_t gen_iters = 5;            // per epoch
  double target_eps = 6.0;
  double target_delta = 1e-5;
  double clip_lower = kDefaultLowerBound;  // a
  double clip_upper = kDefaultUpperBound;  // b
  std::uint64_t seed = 0;
  double fixed_lambda = 1.0;            // dp-asgm adversarial weight
  bool plain_sigmoid = false;           // sgm only
  bool project_rows = false;

  // True when training consumes privacy budget: every algo except sgm, with
  // sigma > 0.
  bool IsPrivate() const;
  bool HasGenerator() const;

  // Throws ConfigError when the configuration cannot run on `graph`.
  void Validate(const Graph& graph) const;

  // Stable digest of every field, for checkpoints and manifests.
  std::uint64_t Hash() const;

  Sigmoid MakeSigmoid() const;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

enum class StopReason { kSchedule, kBudget };
std::string_view StopReasonName(StopReason reason);

struct TrainReport {
  std::size_t epochs_completed = 0;
  std::uint64_t disc_iterations = 0;
  std::uint64_t gen_iterations = 0;
  std::uint64_t steps_recorded = 0;
  StopReason stopped_by = StopReason::kSchedule;
  // (eps, delta)-DP guarantee of the released embeddings at target_delta;
  // infinite for non-private runs.
  double final_eps_at_delta = 0.0;
  // delta_hat the next iteration would have reached; set on budget stops.
  double stop_delta_hat = 0.0;
  std::vector<double> disc_loss_trace;  // per epoch, mean -log S terms
  std::vector<double> adv_loss_trace;   // per epoch, advsgm only
  std::vector<double> gen_loss_trace;   // per epoch
  double wall_seconds = 0.0;
};

// Position in the epoch / phase / iteration schedule.
struct SchedulePosition {
  std::uint64_t epoch = 0;
  std::uint32_t phase = 0;  // 0 discriminator, 1 generator
  std::uint64_t iteration = 0;

  friend bool operator==(const SchedulePosition&,
                         const SchedulePosition&) = default;
};

// Everything needed to resume a run bit-for-bit.
struct TrainerState {
  TrainConfig config;
  Embeddings embeddings;
  GeneratorParams generator;
  std::vector<double> ledger_spent;
  std::uint64_t ledger_steps = 0;
  std::string sampling_rng;   // textual engine state
  std::string noise_rng;
  std::string generator_rng;
  SchedulePosition position;
  bool finished = false;
  TrainReport report;  // wall time excluded from comparisons
  // Running per-epoch loss sums.
  double epoch_disc_loss = 0.0;
  double epoch_adv_loss = 0.0;
  double epoch_gen_loss = 0.0;
  std::uint64_t epoch_disc_batches = 0;
  std::uint64_t epoch_gen_steps = 0;
};

class Trainer {
 public:
  // Validates the config and initializes embeddings and the generator.
  Trainer(const Graph& graph, const TrainConfig& config);

  // Resumes from a saved state. Throws IntegrityError if the state does not
  // fit the graph.
  static Trainer FromState(const Graph& graph, const TrainerState& state);

  // Runs one discriminator or generator iteration. Returns false once
  // training has finished, either by schedule or by budget.
  bool Step();

  // Runs until finished, or for at most `max_iterations` iterations.
  void Run(std::uint64_t max_iterations = UINT64_MAX);

  bool finished() const { return finished_; }
  const Embeddings& embeddings() const { return emb_; }
  const GeneratorParams& generator() const { return gen_; }
  // Absent for non-private runs.
  const std::optional<PrivacyLedger>& ledger() const { return ledger_; }
  const TrainConfig& config() const { return config_; }
  const SchedulePosition& position() const { return position_; }

  TrainReport Report() const;
  TrainerState State() const;

 private:
  Trainer(const Graph& graph, const TrainConfig& config, bool initialize);

  void DiscriminatorIteration();
  void GeneratorIteration();
  void Advance();
  void CloseEpoch();
  StepReport RunBatch(const Batch& batch);

  const Graph* graph_;
  TrainConfig config_;
  Sigmoid sigmoid_;
  Embeddings emb_;
  GeneratorParams gen_;
  std::optional<PrivacyLedger> ledger_;
  Rng sampling_rng_;
  Rng noise_rng_;
  Rng generator_rng_;
  SchedulePosition position_;
  bool finished_ = false;
  TrainReport report_;
  double epoch_disc_loss_ = 0.0;
  double epoch_adv_loss_ = 0.0;
  double epoch_gen_loss_ = 0.0;
  std::uint64_t epoch_disc_batches_ = 0;
  std::uint64_t epoch_gen_steps_ = 0;
  double gamma_pos_ = 0.0;
  double gamma_neg_ = 0.0;
};

struct TrainResult {
  Embeddings embeddings;
  GeneratorParams generator;
  std::optional<PrivacyLedger> ledger;
  TrainReport report;
};

TrainResult Train(const Graph& graph, const TrainConfig& config);

// Engine seeded from (seed, stream); distinct streams are independent.
Rng MakeStream(std::uint64_t seed, std::uint32_t stream);

}  // namespace advsgm

#endif  // ADVSGM_TRAINER_H_
