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

#include "ssmt/textproc/char_vocab.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "ssmt/common/errors.h"
#include "ssmt/textproc/unicode.h"

namespace ssmt {

CharVocab CharVocab::Build(const std::vector<std::string>& corpus) {
  if (corpus.empty()) throw DataError("cannot build vocabulary: empty corpus");
  std::set<char32_t> seen;
  for (const auto& line : corpus) {
    for (char32_t c : ssmt::DecodeUtf8(line)) seen.insert(c);
  }
  return FromCodepoints(std::vector<char32_t>(seen.begin(), seen.end()));
}

CharVocab CharVocab::FromCodepoints(std::vector<char32_t> chars) {
  std::sort(chars.begin(), chars.end());
  chars.erase(std::unique(chars.begin(), chars.end()), chars.end());
  CharVocab vocab;
  vocab.chars_ = std::move(chars);
  vocab.separator_.assign(vocab.size(), false);
  vocab.separator_[kEot] = true;
  for (int i = 0; i < vocab.num_chars(); ++i) {
    vocab.index_[vocab.chars_[i]] = kNumSpecials + i;
    vocab.separator_[kNumSpecials + i] = IsSeparatorCodepoint(vocab.chars_[i]);
  }
  return vocab;
}

int CharVocab::Id(char32_t c) const {
  auto it = index_.find(c);
  return it == index_.end() ? kUnk : it->second;
}

char32_t CharVocab::Codepoint(int id) const {
  if (id < kNumSpecials || id >= size()) return 0;
  return chars_[id - kNumSpecials];
}

bool CharVocab::IsSeparator(int id) const {
  return id >= 0 && id < size() && separator_[id];
}

std::vector<int> CharVocab::Encode(std::u32string_view text) const {
  std::vector<int> ids;
  ids.reserve(text.size());
  for (char32_t c : text) ids.push_back(Id(c));
  return ids;
}

std::vector<int> CharVocab::EncodeTarget(std::string_view utf8) const {
  std::vector<int> ids = Encode(ssmt::DecodeUtf8(utf8));
  ids.push_back(kEot);
  return ids;
}

std::u32string CharVocab::Decode(std::span<const int> ids) const {
  std::u32string out;
  for (int id : ids) {
    if (id >= kNumSpecials && id < size()) out.push_back(Codepoint(id));
  }
  return out;
}

std::string CharVocab::DecodeUtf8(std::span<const int> ids) const {
  return EncodeUtf8(Decode(ids));
}

void CharVocab::Save(std::ostream& out) const {
  out << "#charvocab v1 size=" << num_chars() << '\n';
  char buf[16];
  for (char32_t c : chars_) {
    std::snprintf(buf, sizeof(buf), "U+%04X", static_cast<unsigned>(c));
    out << buf << '\n';
  }
}

CharVocab CharVocab::Load(std::istream& in) {
  std::string header;
  int count = -1;
  if (!std::getline(in, header) ||
      std::sscanf(header.c_str(), "#charvocab v1 size=%d", &count) != 1 ||
      count < 0) {
    throw DataError("bad character vocabulary header: " + header);
  }
  std::vector<char32_t> chars;
  std::string line;
  while (static_cast<int>(chars.size()) < count && std::getline(in, line)) {
    unsigned cp = 0;
    if (std::sscanf(line.c_str(), "U+%X", &cp) != 1) {
      throw DataError("bad character vocabulary entry: " + line);
    }
    chars.push_back(static_cast<char32_t>(cp));
  }
  if (static_cast<int>(chars.size()) != count) {
    throw DataError("truncated character vocabulary");
  }
  return FromCodepoints(std::move(chars));
}

void CharVocab::SaveFile(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  Save(out);
}

CharVocab CharVocab::LoadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  return Load(in);
}

}  // namespace ssmt
