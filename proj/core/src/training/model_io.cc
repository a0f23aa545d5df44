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

#include "ssmt/training/model_io.h"

#include "ssmt/common/errors.h"

namespace ssmt {

void SaveModel(const std::string& path, const SegmentalModel& model,
               ArrayType type) {
  WriteCheckpointFile(path, SnapshotParams(model.params(),
                                           model.config().ToText(), type,
                                           /*with_optimizer_state=*/false));
}

void LoadModelWeights(const std::string& path, SegmentalModel& model) {
  const CheckpointData data = ReadCheckpointFile(path);
  const ModelConfig stored = ModelConfig::FromText(data.header);
  if (!(stored == model.config())) {
    throw DataError(path + ": checkpoint configuration differs from the model");
  }
  RestoreParams(data, model.params(), /*with_optimizer_state=*/false);
}

ModelConfig ReadModelConfig(const std::string& path) {
  return ModelConfig::FromText(ReadCheckpointFile(path).header);
}

}  // namespace ssmt
