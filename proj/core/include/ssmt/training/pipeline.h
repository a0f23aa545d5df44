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

#ifndef SSMT_TRAINING_PIPELINE_H_
#define SSMT_TRAINING_PIPELINE_H_

#include <memory>
#include <string>
#include <vector>

#include "ssmt/model/model_config.h"
#include "ssmt/model/segmental_model.h"
#include "ssmt/textproc/bpe.h"
#include "ssmt/textproc/char_vocab.h"
#include "ssmt/textproc/lexicon.h"
#include "ssmt/training/trainer.h"

namespace ssmt {

struct PreprocessOptions {
  int source_merges = 5000;
  int lexicon_size = 5000;
  int max_segment_length = 5;
};

// Source BPE, target character vocabulary and subword lexicon.
struct Artifacts {
  BpeModel bpe;
  CharVocab vocab;
  Lexicon lexicon;
};

// Throws DataError on empty or misaligned corpora.
Artifacts BuildArtifacts(const std::vector<std::string>& source,
                         const std::vector<std::string>& target,
                         const PreprocessOptions& options);

// base with the vocabulary sizes and segment length taken from artifacts.
ModelConfig ConfigureModel(const Artifacts& artifacts, ModelConfig base);

std::unique_ptr<SegmentalModel> MakeModel(const Artifacts& artifacts,
                                          const ModelConfig& config);

std::vector<int> EncodeSource(const Artifacts& artifacts,
                              const std::string& line);

// Throws DataError on misaligned corpora or empty source lines.
std::vector<TrainingExample> MakeExamples(
    const Artifacts& artifacts, const std::vector<std::string>& source,
    const std::vector<std::string>& target);

}  // namespace ssmt

#endif  // SSMT_TRAINING_PIPELINE_H_
