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

#include "ssmt/lattice/segmentation_format.h"

#include <unordered_set>

#include "ssmt/textproc/unicode.h"

namespace ssmt {

std::string FormatSegmentation(std::u32string_view text,
                               const std::vector<int>& ends,
                               std::string_view delimiter) {
  const std::unordered_set<int> cuts(ends.begin(), ends.end());
  std::string out;
  for (size_t i = 0; i < text.size(); ++i) {
    out += EncodeUtf8(text[i]);
    const size_t next = i + 1;
    if (next < text.size() && cuts.count(static_cast<int>(next)) &&
        !IsSeparatorCodepoint(text[i]) && !IsSeparatorCodepoint(text[next])) {
      out += delimiter;
    }
  }
  return out;
}

}  // namespace ssmt
