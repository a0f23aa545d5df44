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

#include "ssmt/textproc/word_spans.h"

#include <algorithm>
#include <string>

#include "ssmt/common/errors.h"
#include "ssmt/textproc/unicode.h"

namespace ssmt {

WordSpanMap WordSpanMap::Build(int length,
                               const std::function<bool(int)>& is_separator) {
  WordSpanMap map;
  map.span_of_.resize(length);
  int pos = 0;
  while (pos < length) {
    Span span;
    span.start = pos;
    if (is_separator(pos)) {
      span.kind = SpanKind::kSeparator;
      span.end = pos + 1;
    } else {
      span.kind = SpanKind::kWord;
      int end = pos + 1;
      while (end < length && !is_separator(end)) ++end;
      span.end = end;
    }
    for (int i = span.start; i < span.end; ++i) {
      map.span_of_[i] = static_cast<int>(map.spans_.size());
    }
    map.spans_.push_back(span);
    pos = span.end;
  }
  return map;
}

WordSpanMap WordSpanMap::Build(std::span<const int> ids,
                               const CharVocab& vocab) {
  return Build(static_cast<int>(ids.size()),
               [&](int i) { return vocab.IsSeparator(ids[i]); });
}

WordSpanMap WordSpanMap::Build(std::u32string_view text) {
  return Build(static_cast<int>(text.size()),
               [&](int i) { return IsSeparatorCodepoint(text[i]); });
}

int LongestSegmentStart(const WordSpanMap& spans, int k, int max_len) {
  if (k < 0 || k >= spans.length()) {
    throw UsageError("position " + std::to_string(k) + " out of range [0, " +
                     std::to_string(spans.length()) + ")");
  }
  if (max_len < 1) throw UsageError("max segment length must be >= 1");
  return std::max(k - max_len + 1, spans.SpanAt(k).start);
}

}  // namespace ssmt
