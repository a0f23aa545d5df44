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

#ifndef SSMT_DECODER_TRANSLATOR_H_
#define SSMT_DECODER_TRANSLATOR_H_

#include <span>
#include <string>
#include <vector>

#include "ssmt/decoder/dynamic_decoder.h"
#include "ssmt/decoder/neural_decoding_model.h"
#include "ssmt/lattice/segment_lattice.h"
#include "ssmt/model/segmental_model.h"

namespace ssmt {

enum class DecodeAlgorithm { kDynamic, kMixtureBeam };

struct Translation {
  std::string text;
  // Text with the delimiter between adjacent subwords of a word.
  std::string segmented;
  DecodeResult result;
};

Translation Translate(const SegmentalModel& model, std::span<const int> source,
                      const BeamConfig& config,
                      DecodeAlgorithm algorithm = DecodeAlgorithm::kDynamic,
                      ContinueReading reading = ContinueReading::kPartition);

// Highest scoring segmentation of target (ids ending with EOT) given source.
ViterbiResult SegmentTarget(const SegmentalModel& model,
                            std::span<const int> source,
                            std::span<const int> target);

// The Viterbi segmentation of a UTF-8 sentence rendered with the delimiter,
// EOT excluded.
std::string SegmentSentence(const SegmentalModel& model,
                            std::span<const int> source,
                            const std::string& target,
                            const std::string& delimiter = "-");

}  // namespace ssmt

#endif  // SSMT_DECODER_TRANSLATOR_H_
