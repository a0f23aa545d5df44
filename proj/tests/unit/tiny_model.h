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

#ifndef SSMT_TESTS_UNIT_TINY_MODEL_H_
#define SSMT_TESTS_UNIT_TINY_MODEL_H_

#include <memory>
#include <vector>

#include "ssmt/model/model_config.h"
#include "ssmt/model/segmental_model.h"
#include "ssmt/textproc/char_vocab.h"
#include "ssmt/textproc/lexicon.h"

namespace ssmt {

// Alphabet {' ', a, b} plus EOT, lexicon {a, b, ab, ba, aa} cut to length m,
// m = 2 unless overridden. Small enough for exhaustive enumeration and finite
// differences.
inline std::unique_ptr<SegmentalModel> MakeTinyModel(int max_len = 2,
                                                     uint64_t seed = 1,
                                                     int dim = 4) {
  CharVocab vocab = CharVocab::FromCodepoints({U' ', U'a', U'b'});
  std::vector<Lexicon::Entry> entries;
  for (const Lexicon::Entry& e : std::vector<Lexicon::Entry>{
           {U"a", 5}, {U"b", 4}, {U"ab", 3}, {U"ba", 2}, {U"aa", 1}}) {
    if (static_cast<int>(e.text.size()) <= max_len) entries.push_back(e);
  }
  Lexicon lexicon(std::move(entries), max_len);
  ModelConfig config;
  config.source_vocab_size = 6;
  config.char_vocab_size = vocab.size();
  config.lexicon_size = lexicon.size();
  config.max_segment_length = max_len;
  config.dim = dim;
  config.ff_dim = 2 * dim;
  config.encoder_layers = 1;
  config.decoder_layers = 1;
  config.heads = 2;
  config.char_lstm_dim = dim;
  config.seed = seed;
  return std::make_unique<SegmentalModel>(config, std::move(vocab),
                                          std::move(lexicon));
}

// Every segment of length 1..m over the model's segment characters.
inline std::vector<std::vector<int>> AllSegments(const SegmentalModel& model) {
  std::vector<int> chars;
  for (int id = CharVocab::kEos + 1; id < model.vocab().size(); ++id) {
    chars.push_back(id);
  }
  std::vector<std::vector<int>> out;
  std::vector<std::vector<int>> frontier = {{}};
  for (int len = 1; len <= model.max_len(); ++len) {
    std::vector<std::vector<int>> next;
    for (const auto& prefix : frontier) {
      for (int c : chars) {
        std::vector<int> seg = prefix;
        seg.push_back(c);
        out.push_back(seg);
        next.push_back(std::move(seg));
      }
    }
    frontier = std::move(next);
  }
  return out;
}

}  // namespace ssmt

#endif  // SSMT_TESTS_UNIT_TINY_MODEL_H_
