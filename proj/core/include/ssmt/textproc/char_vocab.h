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

#ifndef SSMT_TEXTPROC_CHAR_VOCAB_H_
#define SSMT_TEXTPROC_CHAR_VOCAB_H_

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ssmt {

// Target-side character alphabet. Indices are dense: the four specials occupy
// the reserved block [0, kNumSpecials), characters follow in code point
// order. UNK is only ever produced by Encode() for unseen input characters;
// generation draws from emittable ids (>= kEos) only.
class CharVocab {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kEos = 2;  // end of subword
  static constexpr int kEot = 3;  // end of translation
  static constexpr int kNumSpecials = 4;

  CharVocab() = default;

  // Collects every distinct code point in the corpus. Throws DataError on an
  // empty corpus.
  static CharVocab Build(const std::vector<std::string>& corpus);
  static CharVocab FromCodepoints(std::vector<char32_t> chars);

  int size() const { return kNumSpecials + static_cast<int>(chars_.size()); }
  int num_chars() const { return static_cast<int>(chars_.size()); }

  // kUnk for unseen characters.
  int Id(char32_t c) const;
  // 0 for specials.
  char32_t Codepoint(int id) const;

  // EOT and every whitespace/punctuation character.
  bool IsSeparator(int id) const;
  bool IsEmittable(int id) const { return id >= kEos && id < size(); }

  std::vector<int> Encode(std::u32string_view text) const;
  // UTF-8 sentence -> ids with EOT appended.
  std::vector<int> EncodeTarget(std::string_view utf8) const;
  // Drops specials.
  std::u32string Decode(std::span<const int> ids) const;
  std::string DecodeUtf8(std::span<const int> ids) const;

  void Save(std::ostream& out) const;
  static CharVocab Load(std::istream& in);
  void SaveFile(const std::string& path) const;
  static CharVocab LoadFile(const std::string& path);

  bool operator==(const CharVocab& other) const {
    return chars_ == other.chars_;
  }

 private:
  std::vector<char32_t> chars_;
  std::unordered_map<char32_t, int> index_;
  std::vector<bool> separator_;
};

}  // namespace ssmt

#endif  // SSMT_TEXTPROC_CHAR_VOCAB_H_
