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

#include "ssmt/training/pipeline.h"

#include "ssmt/common/errors.h"

namespace ssmt {
namespace {

void CheckAligned(const std::vector<std::string>& source,
                  const std::vector<std::string>& target) {
  if (source.size() != target.size()) {
    throw DataError("source and target line counts differ: " +
                    std::to_string(source.size()) + " vs " +
                    std::to_string(target.size()));
  }
}

}  // namespace

Artifacts BuildArtifacts(const std::vector<std::string>& source,
                         const std::vector<std::string>& target,
                         const PreprocessOptions& options) {
  CheckAligned(source, target);
  if (source.empty()) throw DataError("empty training corpus");
  Artifacts a;
  a.bpe = BpeModel::Train(source, options.source_merges);
  a.vocab = CharVocab::Build(target);
  a.lexicon = Lexicon::Build(target, options.lexicon_size,
                             options.max_segment_length);
  return a;
}

ModelConfig ConfigureModel(const Artifacts& artifacts, ModelConfig base) {
  base.source_vocab_size = artifacts.bpe.vocab_size();
  base.char_vocab_size = artifacts.vocab.size();
  base.lexicon_size = artifacts.lexicon.size();
  base.max_segment_length = artifacts.lexicon.max_len();
  return base;
}

std::unique_ptr<SegmentalModel> MakeModel(const Artifacts& artifacts,
                                          const ModelConfig& config) {
  return std::make_unique<SegmentalModel>(config, artifacts.vocab,
                                          artifacts.lexicon);
}

std::vector<int> EncodeSource(const Artifacts& artifacts,
                              const std::string& line) {
  return artifacts.bpe.Encode(line);
}

std::vector<TrainingExample> MakeExamples(
    const Artifacts& artifacts, const std::vector<std::string>& source,
    const std::vector<std::string>& target) {
  CheckAligned(source, target);
  std::vector<TrainingExample> out;
  for (size_t i = 0; i < source.size(); ++i) {
    TrainingExample ex{EncodeSource(artifacts, source[i]),
                       artifacts.vocab.EncodeTarget(target[i])};
    if (ex.source.empty()) {
      throw DataError("empty source sentence on line " + std::to_string(i + 1));
    }
    for (int id : ex.target) {
      if (id == CharVocab::kUnk) {
        throw DataError("unknown target character on line " +
                        std::to_string(i + 1));
      }
    }
    out.push_back(std::move(ex));
  }
  return out;
}

}  // namespace ssmt
