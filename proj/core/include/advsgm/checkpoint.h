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

// Versioned binary checkpoints of a training run.
//
// Layout: 8-byte magic, u32 format version, u64 config hash, u64 payload
// size, u64 payload checksum, then the payload. Integers are little endian.

#ifndef ADVSGM_CHECKPOINT_H_
#define ADVSGM_CHECKPOINT_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "advsgm/trainer.h"

namespace advsgm {

inline constexpr std::uint32_t kCheckpointVersion = 1;

void SaveCheckpoint(const TrainerState& state, std::ostream& out);
void SaveCheckpoint(const TrainerState& state,
                    const std::filesystem::path& path);

// Throws IntegrityError on a bad magic, version mismatch, truncation,
// checksum mismatch or a config hash that disagrees with the payload.
TrainerState LoadCheckpoint(std::istream& in);
TrainerState LoadCheckpoint(const std::filesystem::path& path);

}  // namespace advsgm

#endif  // ADVSGM_CHECKPOINT_H_
