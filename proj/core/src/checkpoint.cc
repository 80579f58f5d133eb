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

#include "advsgm/checkpoint.h"

#include <algorithm>
#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>

#include <cereal/archives/portable_binary.hpp>
#include <cereal/types/string.hpp>
#include <cereal/types/vector.hpp>

#include "advsgm/errors.h"

namespace advsgm {

template <class Archive>
void serialize(Archive& ar, TrainConfig& c) {
  ar(c.algo, c.batch_size, c.negatives, c.dim, c.clip_norm,
     c.noise_multiplier, c.sigma_g, c.eta_d, c.eta_g, c.epochs, c.disc_iters,
     c.gen_iters, c.target_eps, c.target_delta, c.clip_lower, c.clip_upper,
     c.seed, c.fixed_lambda, c.plain_sigmoid, c.project_rows);
}

template <class Archive>
void save(Archive& ar, const EmbeddingMatrix& m) {
  const std::vector<double> data(m.data().begin(), m.data().end());
  ar(static_cast<std::uint64_t>(m.rows()), static_cast<std::uint64_t>(m.dim()),
     m.role(), data);
}

template <class Archive>
void load(Archive& ar, EmbeddingMatrix& m) {
  std::uint64_t rows = 0;
  std::uint64_t dim = 0;
  EmbeddingRole role{};
  std::vector<double> data;
  ar(rows, dim, role, data);
  if (data.size() != rows * dim) {
    throw IntegrityError("embedding payload has the wrong size");
  }
  m = EmbeddingMatrix(rows, dim, role);
  std::copy(data.begin(), data.end(), m.data().begin());
}

template <class Archive>
void serialize(Archive& ar, Embeddings& e) {
  ar(e.in, e.out);
}

template <class Archive>
void save(Archive& ar, const SquareMatrix& m) {
  const std::vector<double> data(m.data().begin(), m.data().end());
  ar(static_cast<std::uint64_t>(m.dim()), data);
}

template <class Archive>
void load(Archive& ar, SquareMatrix& m) {
  std::uint64_t dim = 0;
  std::vector<double> data;
  ar(dim, data);
  if (data.size() != dim * dim) {
    throw IntegrityError("generator payload has the wrong size");
  }
  m = SquareMatrix(dim);
  std::copy(data.begin(), data.end(), m.data().begin());
}

template <class Archive>
void serialize(Archive& ar, GeneratorParams& g) {
  ar(g.theta_for_vj_fake, g.theta_for_vi_fake, g.sigma_g);
}

template <class Archive>
void serialize(Archive& ar, SchedulePosition& p) {
  ar(p.epoch, p.phase, p.iteration);
}

template <class Archive>
void serialize(Archive& ar, TrainReport& r) {
  ar(r.epochs_completed, r.disc_iterations, r.gen_iterations,
     r.steps_recorded, r.stopped_by, r.final_eps_at_delta, r.stop_delta_hat,
     r.disc_loss_trace, r.adv_loss_trace, r.gen_loss_trace, r.wall_seconds);
}

template <class Archive>
void serialize(Archive& ar, TrainerState& s) {
  ar(s.config, s.embeddings, s.generator, s.ledger_spent, s.ledger_steps,
     s.sampling_rng, s.noise_rng, s.generator_rng, s.position, s.finished,
     s.report, s.epoch_disc_loss, s.epoch_adv_loss, s.epoch_gen_loss,
     s.epoch_disc_batches, s.epoch_gen_steps);
}

namespace {

constexpr std::array<char, 8> kMagic = {'A', 'D', 'V', 'S', 'G', 'M', 'C', 'K'};

std::uint64_t Checksum(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

template <typename T>
void PutLe(std::ostream& out, T value) {
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    out.put(static_cast<char>((value >> (8 * b)) & 0xff));
  }
}

template <typename T>
T GetLe(std::istream& in) {
  T value = 0;
  for (std::size_t b = 0; b < sizeof(T); ++b) {
    const int c = in.get();
    if (c == std::char_traits<char>::eof()) {
      throw IntegrityError("checkpoint header is truncated");
    }
    value |= static_cast<T>(static_cast<unsigned char>(c)) << (8 * b);
  }
  return value;
}

}  // namespace

void SaveCheckpoint(const TrainerState& state, std::ostream& out) {
  std::ostringstream payload_stream(std::ios::binary);
  {
    cereal::PortableBinaryOutputArchive archive(payload_stream);
    archive(state);
  }
  const std::string payload = payload_stream.str();
  out.write(kMagic.data(), kMagic.size());
  PutLe<std::uint32_t>(out, kCheckpointVersion);
  PutLe<std::uint64_t>(out, state.config.Hash());
  PutLe<std::uint64_t>(out, payload.size());
  PutLe<std::uint64_t>(out, Checksum(payload));
  out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  if (!out) throw std::ios_base::failure("failed to write checkpoint");
}

void SaveCheckpoint(const TrainerState& state,
                    const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw std::ios_base::failure("cannot open " + path.string() +
                                 " for writing");
  }
  SaveCheckpoint(state, out);
}

TrainerState LoadCheckpoint(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), magic.size()) || magic != kMagic) {
    throw IntegrityError("not a checkpoint file");
  }
  const auto version = GetLe<std::uint32_t>(in);
  if (version != kCheckpointVersion) {
    throw IntegrityError("checkpoint format version " +
                         std::to_string(version) + " is not supported");
  }
  const auto config_hash = GetLe<std::uint64_t>(in);
  const auto size = GetLe<std::uint64_t>(in);
  const auto checksum = GetLe<std::uint64_t>(in);
  // Bounded chunks; the size field is untrusted until the checksum passes.
  constexpr std::uint64_t kChunk = 1 << 20;
  std::string payload;
  while (payload.size() < size) {
    const std::uint64_t want = std::min(kChunk, size - payload.size());
    const std::size_t at = payload.size();
    payload.resize(at + want);
    if (!in.read(payload.data() + at, static_cast<std::streamsize>(want))) {
      throw IntegrityError("checkpoint payload is truncated");
    }
  }
  if (Checksum(payload) != checksum) {
    throw IntegrityError("checkpoint checksum mismatch");
  }
  TrainerState state;
  try {
    std::istringstream payload_stream(payload, std::ios::binary);
    cereal::PortableBinaryInputArchive archive(payload_stream);
    archive(state);
  } catch (const cereal::Exception& e) {
    throw IntegrityError(std::string("corrupt checkpoint payload: ") +
                         e.what());
  }
  if (state.config.Hash() != config_hash) {
    throw IntegrityError("checkpoint config hash mismatch");
  }
  return state;
}

TrainerState LoadCheckpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path.string());
  return LoadCheckpoint(in);
}

}  // namespace advsgm
