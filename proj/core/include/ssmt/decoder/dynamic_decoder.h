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

#ifndef SSMT_DECODER_DYNAMIC_DECODER_H_
#define SSMT_DECODER_DYNAMIC_DECODER_H_

#include <memory>
#include <string>
#include <vector>

#include "ssmt/decoder/decoding_model.h"

namespace ssmt {

enum class Flavor { kEnd, kCon };

// A partial translation. For kEnd the last character closes a subword; for
// kCon the characters from cur_start onwards form an open subword u.
struct Hypothesis {
  std::vector<int> chars;
  // Exclusive end positions of the closed subwords, ascending.
  std::vector<int> boundaries;
  Flavor flavor = Flavor::kEnd;
  int cur_start = 0;
  // Chain-rule log probability of the closed subwords.
  double closed_logprob = 0.0;
  // log of the mass of subwords that strictly extend u; 0 for kEnd.
  double open_logmass = 0.0;
  std::shared_ptr<const DecodeNode> node;

  double cum_logprob() const { return closed_logprob + open_logmass; }
  bool finished() const { return node != nullptr && node->finished(); }
};

enum class StopRule {
  // Stop as soon as the best end-flavored hypothesis has produced EOT.
  kBestEndFinished,
  // Additionally require that it outscores every continuing hypothesis, whose
  // score bounds all of its completions. Unfinished end hypotheses mid-word
  // can be worse than an early EOT on a confident model; this rule keeps
  // decoding in that case.
  kBound,
};

struct BeamConfig {
  int beam_size = 5;
  int max_chars = 400;
  // Ranks by log probability per character instead of the raw sum.
  bool length_normalize = false;
  std::string delimiter = "-";
  StopRule stop_rule = StopRule::kBound;
};

struct DecodeResult {
  // Generated ids; ends with EOT unless truncated.
  std::vector<int> chars;
  std::vector<int> boundaries;
  double log_prob = 0.0;
  bool truncated = false;
};

// Character-level generation that keeps, at every step, the B best
// hypotheses whose last character ends a subword and the B best whose last
// character continues one. Each step extends both sets by one character
// under the four boundary cases and then re-selects both sets from the
// union, which revisits the boundary decision for the previous character.
// Stops according to config.stop_rule once the best end hypothesis has
// produced EOT. Ties prefer extensions of end-flavored parents.
DecodeResult DynamicDecode(const DecodingModel& model,
                           const BeamConfig& config);

// Baseline: beam search over whole subwords. Each hypothesis is extended by
// its B most probable complete subwords under the mixture, found with a
// prefix beam inside the subword.
DecodeResult MixtureBeamSearch(const DecodingModel& model,
                               const BeamConfig& config);

// A complete subword proposal.
struct SubwordCandidate {
  std::vector<int> chars;
  double log_prob = 0.0;
};

// The (approximately) k most probable complete subwords starting at a
// boundary node, best first.
std::vector<SubwordCandidate> TopSubwords(const DecodingModel& model,
                                          const DecodeNode& boundary, int k);

}  // namespace ssmt

#endif  // SSMT_DECODER_DYNAMIC_DECODER_H_
