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

#include "ssmt/textproc/lexicon.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "ssmt/common/errors.h"
#include "ssmt/textproc/unicode.h"
#include "ssmt/textproc/word_spans.h"

namespace ssmt {
namespace {

bool RanksBefore(const Lexicon::Entry& a, const Lexicon::Entry& b) {
  if (a.freq != b.freq) return a.freq > b.freq;
  return a.text < b.text;
}

}  // namespace

Lexicon Lexicon::Build(const std::vector<std::string>& corpus, int size,
                       int max_len) {
  if (max_len < 1) throw UsageError("lexicon max length must be >= 1");
  if (corpus.empty()) throw DataError("cannot build lexicon: empty corpus");

  std::unordered_map<std::u32string, int64_t> counts;
  for (const auto& line : corpus) {
    const std::u32string text = DecodeUtf8(line);
    const WordSpanMap spans = WordSpanMap::Build(text);
    for (const Span& span : spans.spans()) {
      if (span.kind != SpanKind::kWord) continue;
      for (int start = span.start; start < span.end; ++start) {
        const int longest = std::min(max_len, span.end - start);
        for (int len = 1; len <= longest; ++len) {
          ++counts[text.substr(start, len)];
        }
      }
    }
  }

  std::vector<Entry> singles;
  std::vector<Entry> longer;
  for (auto& [text, freq] : counts) {
    (text.size() == 1 ? singles : longer).push_back({text, freq});
  }
  if (size < static_cast<int>(singles.size())) {
    throw DataError("lexicon size " + std::to_string(size) +
                    " is smaller than the " + std::to_string(singles.size()) +
                    " distinct in-word characters");
  }
  std::sort(longer.begin(), longer.end(), RanksBefore);
  const size_t keep =
      std::min(longer.size(), static_cast<size_t>(size) - singles.size());
  std::vector<Entry> entries = std::move(singles);
  entries.insert(entries.end(), longer.begin(), longer.begin() + keep);
  std::sort(entries.begin(), entries.end(), RanksBefore);
  return Lexicon(std::move(entries), max_len);
}

Lexicon::Lexicon(std::vector<Entry> entries, int max_len)
    : max_len_(max_len), entries_(std::move(entries)) {
  if (max_len_ < 1) throw UsageError("lexicon max length must be >= 1");
  nodes_.emplace_back();
  for (int id = 0; id < size(); ++id) {
    const std::u32string& text = entries_[id].text;
    if (text.empty() || static_cast<int>(text.size()) > max_len_) {
      throw DataError("lexicon entry length out of range [1, max_len]");
    }
    int node = kRoot;
    nodes_[node].below.push_back(id);
    for (char32_t c : text) {
      auto it = nodes_[node].children.find(c);
      if (it == nodes_[node].children.end()) {
        const int child = static_cast<int>(nodes_.size());
        nodes_[node].children.emplace(c, child);
        nodes_.emplace_back();
        node = child;
      } else {
        node = it->second;
      }
      nodes_[node].below.push_back(id);
    }
    if (nodes_[node].entry != kNone) {
      throw DataError("duplicate lexicon entry: " + EncodeUtf8(text));
    }
    nodes_[node].entry = id;
  }
}

int Lexicon::Child(int node, char32_t c) const {
  if (node == kNone) return kNone;
  const auto& children = nodes_[node].children;
  auto it = children.find(c);
  return it == children.end() ? kNone : it->second;
}

int Lexicon::Find(std::u32string_view text) const {
  int node = kRoot;
  for (char32_t c : text) {
    node = Child(node, c);
    if (node == kNone) return kNone;
  }
  return text.empty() ? kNone : nodes_[node].entry;
}

std::vector<int> Lexicon::PrefixIds(std::u32string_view prefix,
                                    bool exclude_exact) const {
  int node = kRoot;
  for (char32_t c : prefix) {
    node = Child(node, c);
    if (node == kNone) return {};
  }
  std::vector<int> ids(nodes_[node].below.begin(), nodes_[node].below.end());
  if (exclude_exact && nodes_[node].entry != kNone) {
    ids.erase(std::find(ids.begin(), ids.end(), nodes_[node].entry));
  }
  return ids;
}

void Lexicon::Save(std::ostream& out) const {
  out << "#lexicon v1 V=" << size() << " m=" << max_len_ << '\n';
  for (const Entry& e : entries_) {
    out << EncodeUtf8(e.text) << '\t' << e.freq << '\n';
  }
}

Lexicon Lexicon::Load(std::istream& in) {
  std::string header;
  int count = -1;
  int max_len = 0;
  if (!std::getline(in, header) ||
      std::sscanf(header.c_str(), "#lexicon v1 V=%d m=%d", &count,
                  &max_len) != 2 ||
      count < 0) {
    throw DataError("bad lexicon header: " + header);
  }
  std::vector<Entry> entries;
  std::string line;
  while (static_cast<int>(entries.size()) < count && std::getline(in, line)) {
    const size_t tab = line.rfind('\t');
    if (tab == std::string::npos) {
      throw DataError("bad lexicon entry: " + line);
    }
    Entry e;
    e.text = DecodeUtf8(std::string_view(line).substr(0, tab));
    e.freq = std::stoll(line.substr(tab + 1));
    entries.push_back(std::move(e));
  }
  if (static_cast<int>(entries.size()) != count) {
    throw DataError("truncated lexicon");
  }
  return Lexicon(std::move(entries), max_len);
}

void Lexicon::SaveFile(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write file: " + path);
  Save(out);
}

Lexicon Lexicon::LoadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path);
  return Load(in);
}

}  // namespace ssmt
