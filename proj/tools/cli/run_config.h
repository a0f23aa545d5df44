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

#ifndef SSMT_TOOLS_CLI_RUN_CONFIG_H_
#define SSMT_TOOLS_CLI_RUN_CONFIG_H_

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ssmt/decoder/dynamic_decoder.h"
#include "ssmt/decoder/neural_decoding_model.h"
#include "ssmt/model/model_config.h"
#include "ssmt/training/pipeline.h"
#include "ssmt/training/trainer.h"

namespace ssmt::cli {

struct PathsConfig {
  std::string train_source;
  std::string train_target;
  std::string valid_source;
  std::string valid_target;
  // Artifacts, checkpoints, logs and manifests.
  std::string work_dir = "work";
};

struct DecodeConfig {
  BeamConfig beam;
  ContinueReading reading = ContinueReading::kPartition;
};

// Everything a run needs. Keys are "section.key"; see Keys() for the list.
struct RunConfig {
  PathsConfig paths;
  ModelConfig model;
  PreprocessOptions preprocess;
  TrainOptions train;
  bool resume = false;
  DecodeConfig decode;

  // Reads an INI file; unknown sections or keys are UsageErrors, unreadable
  // files DataErrors.
  static RunConfig FromFile(const std::string& path);
  static RunConfig FromText(const std::string& text);

  // Sets one "section.key" value. Throws UsageError on unknown keys or
  // malformed values.
  void Set(const std::string& key, const std::string& value);
  std::string Get(const std::string& key) const;

  // All keys in canonical order.
  static const std::vector<std::string>& Keys();
  // "section.key=value" lines in canonical order.
  std::string Canonical() const;
  // FNV-1a of Canonical().
  uint64_t Hash() const;

  std::string ArtifactPath(const std::string& name) const;
};

uint64_t Fnv1a(const std::string& bytes);
std::string HexHash(uint64_t hash);

}  // namespace ssmt::cli

#endif  // SSMT_TOOLS_CLI_RUN_CONFIG_H_
