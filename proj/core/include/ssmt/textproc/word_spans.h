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

#ifndef SSMT_TEXTPROC_WORD_SPANS_H_
#define SSMT_TEXTPROC_WORD_SPANS_H_

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "ssmt/textproc/char_vocab.h"

namespace ssmt {

enum class SpanKind { kWord, kSeparator };

struct Span {
  int start = 0;
  int end = 0;  // exclusive
  SpanKind kind = SpanKind::kWord;

  int length() const { return end - start; }
  bool operator==(const Span&) const = default;
};

// Partition of a character sequence into maximal word runs and one-character
// separator spans. Segments never cross a span.
class WordSpanMap {
 public:
  WordSpanMap() = default;

  static WordSpanMap Build(std::span<const int> ids, const CharVocab& vocab);
  static WordSpanMap Build(std::u32string_view text);
  static WordSpanMap Build(int length,
                           const std::function<bool(int)>& is_separator);

  const std::vector<Span>& spans() const { return spans_; }
  int length() const { return static_cast<int>(span_of_.size()); }
  const Span& SpanAt(int pos) const { return spans_[span_of_[pos]]; }
  int SpanIndex(int pos) const { return span_of_[pos]; }
  bool IsSeparator(int pos) const {
    return SpanAt(pos).kind == SpanKind::kSeparator;
  }

 private:
  std::vector<Span> spans_;
  std::vector<int> span_of_;
};

// Earliest legal start of a segment ending at k (inclusive):
// max(k - m + 1, start of k's span). Separator positions return k.
// Throws UsageError if k is out of range or m < 1.
int LongestSegmentStart(const WordSpanMap& spans, int k, int max_len);

}  // namespace ssmt

#endif  // SSMT_TEXTPROC_WORD_SPANS_H_
