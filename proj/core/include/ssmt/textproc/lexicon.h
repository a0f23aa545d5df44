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

#ifndef SSMT_TEXTPROC_LEXICON_H_
#define SSMT_TEXTPROC_LEXICON_H_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ssmt {

// The subword lexicon: the V most frequent within-word character n-grams of
// length <= max_len, ranked by (frequency desc, code points asc). Every
// single character that occurs inside a word is guaranteed an entry.
//
// A prefix tree over the entries answers "which entries start with p" by
// storing, at every node, the sorted ids of the entries below it.
class Lexicon {
 public:
  struct Entry {
    std::u32string text;
    int64_t freq = 0;
  };

  static constexpr int kRoot = 0;
  static constexpr int kNone = -1;

  Lexicon() : Lexicon(std::vector<Entry>{}, 1) {}

  // Throws UsageError if max_len < 1, DataError if the corpus is empty or
  // size is below the number of distinct in-word characters.
  static Lexicon Build(const std::vector<std::string>& corpus, int size,
                       int max_len);
  // Entry order defines ids.
  Lexicon(std::vector<Entry> entries, int max_len);

  int size() const { return static_cast<int>(entries_.size()); }
  int max_len() const { return max_len_; }
  const Entry& entry(int id) const { return entries_[id]; }
  const std::vector<Entry>& entries() const { return entries_; }

  // kNone if absent.
  int Find(std::u32string_view text) const;

  // Ids (ascending) of all entries having the prefix; optionally without
  // the entry equal to the prefix itself.
  std::vector<int> PrefixIds(std::u32string_view prefix,
                             bool exclude_exact) const;

  // Trie walking.
  int Child(int node, char32_t c) const;
  int EntryAt(int node) const { return nodes_[node].entry; }
  std::span<const int> IdsBelow(int node) const { return nodes_[node].below; }

  void Save(std::ostream& out) const;
  static Lexicon Load(std::istream& in);
  void SaveFile(const std::string& path) const;
  static Lexicon LoadFile(const std::string& path);

 private:
  struct Node {
    std::map<char32_t, int> children;
    int entry = kNone;
    std::vector<int> below;
  };

  int max_len_ = 1;
  std::vector<Entry> entries_;
  std::vector<Node> nodes_;
};

}  // namespace ssmt

#endif  // SSMT_TEXTPROC_LEXICON_H_
