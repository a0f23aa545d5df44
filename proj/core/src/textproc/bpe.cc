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

#include "ssmt/textproc/bpe.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <set>

#include "ssmt/common/errors.h"
#include "ssmt/textproc/unicode.h"

namespace ssmt {
namespace {

// Pairs are keyed as "left<SEP>right"; '\x1f' never occurs in a symbol.
constexpr char kPairSep = '\x1f';

std::string PairKey(const std::string& a, const std::string& b) {
  std::string key;
  key.reserve(a.size() + b.size() + 1);
  key += a;
  key += kPairSep;
  key += b;
  return key;
}

std::vector<std::string> WordSymbols(std::u32string_view word) {
  std::vector<std::string> symbols;
  symbols.reserve(word.size());
  for (char32_t c : word) symbols.push_back(EncodeUtf8(c));
  symbols.back() += BpeModel::kEndOfWord;
  return symbols;
}

void MergePair(std::vector<std::string>& symbols, const std::string& a,
               const std::string& b) {
  std::vector<std::string> out;
  out.reserve(symbols.size());
  for (size_t i = 0; i < symbols.size(); ++i) {
    if (i + 1 < symbols.size() && symbols[i] == a && symbols[i + 1] == b) {
      out.push_back(a + b);
      ++i;
    } else {
      out.push_back(std::move(symbols[i]));
    }
  }
  symbols = std::move(out);
}

}  // namespace

std::vector<std::u32string> SplitWords(std::u32string_view text) {
  std::vector<std::u32string> words;
  std::u32string current;
  for (char32_t c : text) {
    if (IsWhitespaceCodepoint(c)) {
      if (!current.empty()) words.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

BpeModel BpeModel::Train(const std::vector<std::string>& corpus,
                         int num_merges) {
  if (corpus.empty()) throw DataError("cannot train BPE: empty corpus");
  if (num_merges < 0) throw UsageError("number of merges must be >= 0");

  struct WordType {
    std::vector<std::string> symbols;
    long freq = 0;
  };
  std::vector<WordType> words;
  std::unordered_map<std::u32string, int> word_index;
  std::set<std::string> initial;
  for (const auto& line : corpus) {
    for (auto& word : SplitWords(DecodeUtf8(line))) {
      auto [it, inserted] =
          word_index.emplace(word, static_cast<int>(words.size()));
      if (inserted) {
        words.push_back({WordSymbols(word), 0});
        for (const auto& s : words.back().symbols) initial.insert(s);
      }
      ++words[it->second].freq;
    }
  }

  BpeModel model;
  model.initial_.assign(initial.begin(), initial.end());
  for (int merge = 0; merge < num_merges; ++merge) {
    struct PairStat {
      long count = 0;
      long first_seen = 0;
      int word = 0;
      int pos = 0;
    };
    std::unordered_map<std::string, PairStat> stats;
    long order = 0;
    for (int w = 0; w < static_cast<int>(words.size()); ++w) {
      const auto& symbols = words[w].symbols;
      for (int i = 0; i + 1 < static_cast<int>(symbols.size()); ++i) {
        auto [it, inserted] =
            stats.try_emplace(PairKey(symbols[i], symbols[i + 1]));
        if (inserted) it->second = {0, order, w, i};
        it->second.count += words[w].freq;
        ++order;
      }
    }
    if (stats.empty()) break;
    const PairStat* best = nullptr;
    for (const auto& [key, stat] : stats) {
      if (best == nullptr || stat.count > best->count ||
          (stat.count == best->count && stat.first_seen < best->first_seen)) {
        best = &stat;
      }
    }
    const std::string a = words[best->word].symbols[best->pos];
    const std::string b = words[best->word].symbols[best->pos + 1];
    model.merges_.emplace_back(a, b);
    for (auto& word : words) MergePair(word.symbols, a, b);
  }
  model.Index();
  return model;
}

void BpeModel::Index() {
  tokens_.clear();
  token_ids_.clear();
  auto add = [this](const std::string& token) {
    if (token_ids_.emplace(token, vocab_size()).second) {
      tokens_.push_back(token);
    }
  };
  for (const auto& s : initial_) add(s);
  for (const auto& [a, b] : merges_) add(a + b);
  merge_rank_.clear();
  for (int i = 0; i < static_cast<int>(merges_.size()); ++i) {
    merge_rank_.emplace(PairKey(merges_[i].first, merges_[i].second), i);
  }
}

std::vector<std::string> BpeModel::Apply(std::string_view sentence) const {
  std::vector<std::string> out;
  const std::set<std::string> initial(initial_.begin(), initial_.end());
  for (const auto& word : SplitWords(DecodeUtf8(sentence))) {
    std::vector<std::string> symbols = WordSymbols(word);
    for (size_t i = 0; i < symbols.size(); ++i) {
      if (!initial.contains(symbols[i])) {
        symbols[i] = std::string(kUnkSymbol);
        if (i + 1 == symbols.size()) symbols[i] += kEndOfWord;
      }
    }
    while (symbols.size() > 1) {
      int best_rank = std::numeric_limits<int>::max();
      for (size_t i = 0; i + 1 < symbols.size(); ++i) {
        auto it = merge_rank_.find(PairKey(symbols[i], symbols[i + 1]));
        if (it != merge_rank_.end()) best_rank = std::min(best_rank, it->second);
      }
      if (best_rank == std::numeric_limits<int>::max()) break;
      MergePair(symbols, merges_[best_rank].first, merges_[best_rank].second);
    }
    for (auto& s : symbols) out.push_back(std::move(s));
  }
  return out;
}

std::vector<int> BpeModel::Encode(std::string_view sentence) const {
  std::vector<int> ids;
  for (const auto& token : Apply(sentence)) ids.push_back(TokenId(token));
  return ids;
}

int BpeModel::TokenId(std::string_view token) const {
  auto it = token_ids_.find(std::string(token));
  return it == token_ids_.end() ? kUnkId : it->second;
}

std::string BpeModel::Detokenize(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& token : tokens) {
    if (token.size() >= kEndOfWord.size() &&
        token.compare(token.size() - kEndOfWord.size(), kEndOfWord.size(),
                      kEndOfWord) == 0) {
      out.append(token, 0, token.size() - kEndOfWord.size());
      out += ' ';
    } else {
      out += token;
    }
  }
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

void BpeModel::Save(std::ostream& out) const {
  out << "#bpe v1 symbols=" << initial_.size() << " merges=" << merges_.size()
      << '\n';
  for (const auto& s : initial_) out << s << '\n';
  for (const auto& [a, b] : merges_) out << a << '\t' << b << '\n';
}

BpeModel BpeModel::Load(std::istream& in) {
  std::string header;
  int num_symbols = -1;
  int num_merges = -1;
  if (!std::getline(in, header) ||
      std::sscanf(header.c_str(), "#bpe v1 symbols=%d merges=%d", &num_symbols,
                  &num_merges) != 2 ||
      num_symbols < 0 || num_merges < 0) {
    throw DataError("bad BPE header: " + header);
  }
  BpeModel model;
  std::string line;
  for (int i = 0; i < num_symbols; ++i) {
    if (!std::getline(in, line)) throw DataError("truncated BPE symbols");
    model.initial_.push_back(line);
  }
  for (int i = 0; i < num_merges; ++i) {
    if (!std::getline(in, line)) throw DataError("truncated BPE merges");
    const size_t tab = line.find('\t');
    if (tab == std::string::npos) throw DataError("bad BPE merge: " + line);
    model.merges_.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  model.Index();
  return model;
}

void BpeModel::SaveFile(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  Save(out);
}

BpeModel BpeModel::LoadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  return Load(in);
}

}  // namespace ssmt
