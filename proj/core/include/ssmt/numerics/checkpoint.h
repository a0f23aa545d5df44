// Copyright 2026 The SSMT Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SSMT_NUMERICS_CHECKPOINT_H_
#define SSMT_NUMERICS_CHECKPOINT_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ssmt/numerics/param_store.h"
#include "ssmt/numerics/tensor.h"

namespace ssmt {

// Container layout (all integers little-endian):
//   "SSMTCKPT" u32 version u64 header_bytes header
//   u32 num_arrays
//   per array: u32 name_bytes name u8 type u32 rows u32 cols data
// type 1 = float32, 2 = float64. Model weights ship as float32; training
// state (for exact resume) uses float64.
enum class ArrayType : uint8_t { kFloat32 = 1, kFloat64 = 2 };

struct NamedArray {
  std::string name;
  ArrayType type = ArrayType::kFloat32;
  // float32 arrays hold float-rounded values.
  Tensor values;
};

struct CheckpointData {
  static constexpr uint32_t kVersion = 1;

  uint32_t version = kVersion;
  std::string header;
  std::vector<NamedArray> arrays;

  const NamedArray* Find(const std::string& name) const;
};

void WriteCheckpoint(std::ostream& out, const CheckpointData& data);
// Throws DataError on a malformed or truncated stream.
CheckpointData ReadCheckpoint(std::istream& in);
void WriteCheckpointFile(const std::string& path, const CheckpointData& data);
CheckpointData ReadCheckpointFile(const std::string& path);

// Parameter values, plus "<name>@adam_m"/"<name>@adam_v" when
// with_optimizer_state is set.
CheckpointData SnapshotParams(const ParamStore& store, std::string header,
                              ArrayType type, bool with_optimizer_state);
// Throws DataError on missing arrays or shape mismatch.
void RestoreParams(const CheckpointData& data, ParamStore& store,
                   bool with_optimizer_state);

}  // namespace ssmt

#endif  // SSMT_NUMERICS_CHECKPOINT_H_
