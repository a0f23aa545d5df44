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

#ifndef SSMT_DECODER_NEURAL_DECODING_MODEL_H_
#define SSMT_DECODER_NEURAL_DECODING_MODEL_H_

#include <memory>
#include <span>
#include <vector>

#include "ssmt/decoder/decoding_model.h"
#include "ssmt/model/segmental_model.h"

namespace ssmt {

// How the character-model term of the two "continue" cases is read.
enum class ContinueReading {
  // p_char(u y) (1 - p_char(EOS | u y)): mass of char-path subwords that
  // strictly extend u y. End and continue masses partition the char model.
  kPartition,
  // p_char(u y) alone, i.e. the prefix probability without the EOS factor.
  // Overlaps with the end case.
  kVerbatim,
};

// Next-character probabilities of the four boundary cases for a trained
// SegmentalModel and one source sentence. The gate and the lexicon
// distribution of an open subword come from the state at its start.
class NeuralDecodingModel : public DecodingModel {
 public:
  NeuralDecodingModel(const SegmentalModel& model, std::span<const int> source,
                      ContinueReading reading = ContinueReading::kPartition);

  std::span<const int> candidates() const override { return candidates_; }
  int end_of_translation() const override { return CharVocab::kEot; }
  int max_len() const override { return model_.max_len(); }

  std::shared_ptr<const DecodeNode> Root() const override;
  NextCharScores Expand(const DecodeNode& node) const override;
  std::shared_ptr<const DecodeNode> Child(const DecodeNode& node, int char_id,
                                          bool ends) const override;

  const SegmentalModel& model() const { return model_; }
  const SourceEncoding& encoding() const { return encoding_; }

 private:
  struct Node;
  std::shared_ptr<const Node> AtBoundary(DecoderState state) const;

  const SegmentalModel& model_;
  SourceEncoding encoding_;
  ContinueReading reading_;
  std::vector<int> candidates_;
};

}  // namespace ssmt

#endif  // SSMT_DECODER_NEURAL_DECODING_MODEL_H_
