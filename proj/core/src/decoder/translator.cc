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

#include "ssmt/decoder/translator.h"

#include "ssmt/lattice/segmentation_format.h"

namespace ssmt {
namespace {

// Boundaries among the characters before EOT, rendered with the delimiter.
std::string Render(const CharVocab& vocab, std::span<const int> ids,
                   const std::vector<int>& ends, const std::string& delimiter) {
  int n = static_cast<int>(ids.size());
  while (n > 0 && ids[n - 1] == CharVocab::kEot) --n;
  const std::u32string text = vocab.Decode(ids.first(n));
  std::vector<int> inner;
  for (int e : ends) {
    if (e < n) inner.push_back(e);
  }
  inner.push_back(n);
  return FormatSegmentation(text, inner, delimiter);
}

}  // namespace

Translation Translate(const SegmentalModel& model, std::span<const int> source,
                      const BeamConfig& config, DecodeAlgorithm algorithm,
                      ContinueReading reading) {
  const NeuralDecodingModel decoding(model, source, reading);
  Translation out;
  out.result = algorithm == DecodeAlgorithm::kDynamic
                   ? DynamicDecode(decoding, config)
                   : MixtureBeamSearch(decoding, config);
  out.text = model.vocab().DecodeUtf8(out.result.chars);
  out.segmented = Render(model.vocab(), out.result.chars,
                         out.result.boundaries, config.delimiter);
  return out;
}

ViterbiResult SegmentTarget(const SegmentalModel& model,
                            std::span<const int> source,
                            std::span<const int> target) {
  Graph g(/*record=*/false);
  const ScoredGrid grid = model.ScoreGrid(g, source, target);
  return Viterbi(grid.lattice);
}

std::string SegmentSentence(const SegmentalModel& model,
                            std::span<const int> source,
                            const std::string& target,
                            const std::string& delimiter) {
  const std::vector<int> ids = model.vocab().EncodeTarget(target);
  const ViterbiResult best = SegmentTarget(model, source, ids);
  return Render(model.vocab(), ids, best.ends, delimiter);
}

}  // namespace ssmt
