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

#ifndef SSMT_TRAINING_MODEL_IO_H_
#define SSMT_TRAINING_MODEL_IO_H_

#include <string>

#include "ssmt/model/model_config.h"
#include "ssmt/model/segmental_model.h"
#include "ssmt/numerics/checkpoint.h"

namespace ssmt {

// Weights with the model configuration as the header.
void SaveModel(const std::string& path, const SegmentalModel& model,
               ArrayType type = ArrayType::kFloat32);

// Throws DataError if the file is unreadable or its configuration differs
// from the model's.
void LoadModelWeights(const std::string& path, SegmentalModel& model);

ModelConfig ReadModelConfig(const std::string& path);

}  // namespace ssmt

#endif  // SSMT_TRAINING_MODEL_IO_H_
