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

#ifndef SSMT_LATTICE_SEGMENTATION_FORMAT_H_
#define SSMT_LATTICE_SEGMENTATION_FORMAT_H_

#include <string>
#include <string_view>
#include <vector>

namespace ssmt {

// Renders text with a delimiter at every segment boundary that falls between
// two word characters, e.g. "Ndi-ya-qonda." for ends {3, 5, 10, 11}.
// Boundaries next to separators are implied and left unmarked. ends are
// exclusive end positions into text (code points); positions beyond the
// text are ignored.
std::string FormatSegmentation(std::u32string_view text,
                               const std::vector<int>& ends,
                               std::string_view delimiter = "-");

}  // namespace ssmt

#endif  // SSMT_LATTICE_SEGMENTATION_FORMAT_H_
