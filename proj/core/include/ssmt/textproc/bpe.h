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

#ifndef SSMT_TEXTPROC_BPE_H_
#define SSMT_TEXTPROC_BPE_H_

#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace ssmt {

// Byte-pair encoding for the source side. Words are whitespace-delimited;
// the last symbol of each word carries the "</w>" marker. Merge ties go to
// the pair that occurs first when scanning words in first-seen order.
class BpeModel {
 public:
  static constexpr std::string_view kEndOfWord = "</w>";
  static constexpr std::string_view kUnkSymbol = "<unk>";
  static constexpr int kPadId = 0;
  static constexpr int kUnkId = 1;

  BpeModel() = default;

  // Throws DataError on an empty corpus, UsageError if num_merges < 0.
  // Stops early once no pair occurs.
  static BpeModel Train(const std::vector<std::string>& corpus,
                        int num_merges);

  std::vector<std::string> Apply(std::string_view sentence) const;
  std::vector<int> Encode(std::string_view sentence) const;
  static std::string Detokenize(const std::vector<std::string>& tokens);

  const std::vector<std::pair<std::string, std::string>>& merges() const {
    return merges_;
  }
  // Initial symbols (sorted) followed by merge results in merge order.
  const std::vector<std::string>& tokens() const { return tokens_; }
  // Token ids start after PAD and UNK.
  int vocab_size() const { return 2 + static_cast<int>(tokens_.size()); }
  int TokenId(std::string_view token) const;

  void Save(std::ostream& out) const;
  static BpeModel Load(std::istream& in);
  void SaveFile(const std::string& path) const;
  static BpeModel LoadFile(const std::string& path);

 private:
  void Index();

  std::vector<std::string> initial_;
  std::vector<std::pair<std::string, std::string>> merges_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> token_ids_;
  std::unordered_map<std::string, int> merge_rank_;
};

// Splits on Unicode whitespace.
std::vector<std::u32string> SplitWords(std::u32string_view text);

}  // namespace ssmt

#endif  // SSMT_TEXTPROC_BPE_H_
