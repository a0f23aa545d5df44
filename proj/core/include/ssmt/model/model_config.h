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

#ifndef SSMT_MODEL_MODEL_CONFIG_H_
#define SSMT_MODEL_MODEL_CONFIG_H_

#include <cstdint>
#include <string>

namespace ssmt {

// Architecture hyperparameters. Defaults are desk scale: 2+2 layers, width
// 64, 2 heads, char LSTM width 64, segments up to 5 characters.
struct ModelConfig {
  int source_vocab_size = 0;
  int char_vocab_size = 0;
  int lexicon_size = 0;
  int max_segment_length = 5;
  int dim = 64;
  int ff_dim = 256;
  int encoder_layers = 2;
  int decoder_layers = 2;
  int heads = 2;
  int char_lstm_dim = 64;
  uint64_t seed = 1;

  // Throws UsageError describing the first violated constraint.
  void Validate() const;

  // INI text with a single [model] section; round-trips through FromText.
  std::string ToText() const;
  static ModelConfig FromText(const std::string& text);

  bool operator==(const ModelConfig&) const = default;
};

}  // namespace ssmt

#endif  // SSMT_MODEL_MODEL_CONFIG_H_
