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

#ifndef SSMT_METRICS_SEGMENTATION_METRICS_H_
#define SSMT_METRICS_SEGMENTATION_METRICS_H_

#include <string>
#include <string_view>
#include <vector>

namespace ssmt {

// A word and its internal split points (code point offsets, 0 < b < |word|,
// ascending).
struct SegmentedWord {
  std::u32string word;
  std::vector<int> boundaries;

  // Morphemes as (start, end) spans.
  std::vector<std::pair<int, int>> Spans() const;
  std::string ToString(std::string_view delimiter = "-") const;
  bool operator==(const SegmentedWord&) const = default;
};

// "ndi-ya-qonda" -> {"ndiyaqonda", {3, 5}}. Throws DataError on empty
// morphemes.
SegmentedWord ParseSegmentedWord(std::string_view text,
                                 std::string_view delimiter = "-");

// Reads "surface<TAB>segmented" lines (or a bare segmented word per line).
// Throws DataError if the segmentation does not spell the surface form.
std::vector<SegmentedWord> ParseGoldLines(const std::vector<std::string>& lines,
                                          std::string_view delimiter = "-");

// Percentages with the counts they came from. F1 is 0 when P + R = 0.
struct ScoreReport {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  long true_positives = 0;
  long false_positives = 0;
  long false_negatives = 0;

  static ScoreReport FromCounts(long tp, long fp, long fn);
};

// Micro-averaged over all internal boundary positions. Throws DataError if
// the lists differ in length or in their words.
ScoreReport BoundaryPrf(const std::vector<SegmentedWord>& pred,
                        const std::vector<SegmentedWord>& gold);

// A predicted subword is a true positive when its exact span is a gold
// morpheme span of the same word.
ScoreReport MorphemePrf(const std::vector<SegmentedWord>& pred,
                        const std::vector<SegmentedWord>& gold);

}  // namespace ssmt

#endif  // SSMT_METRICS_SEGMENTATION_METRICS_H_
