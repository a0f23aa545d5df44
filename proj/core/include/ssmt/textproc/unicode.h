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

#ifndef SSMT_TEXTPROC_UNICODE_H_
#define SSMT_TEXTPROC_UNICODE_H_

#include <string>
#include <string_view>
#include <vector>

namespace ssmt {

// Decodes UTF-8 into code points. Throws DataError on malformed input.
std::u32string DecodeUtf8(std::string_view text);

std::string EncodeUtf8(std::u32string_view text);
std::string EncodeUtf8(char32_t c);

// Canonical composition (NFC).
std::string NormalizeNfc(std::string_view text);

// Unicode whitespace or any punctuation general category (Pc Pd Ps Pe Pi Pf
// Po). Separators always form one-character segments.
bool IsSeparatorCodepoint(char32_t c);

bool IsWhitespaceCodepoint(char32_t c);

// Reads a UTF-8 file line by line (NFC-normalized, trailing CR stripped).
// Throws DataError naming the path if it cannot be opened.
std::vector<std::string> ReadLines(const std::string& path);

void WriteLines(const std::string& path, const std::vector<std::string>& lines);

}  // namespace ssmt

#endif  // SSMT_TEXTPROC_UNICODE_H_
