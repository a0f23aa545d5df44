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

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "ssmt/common/errors.h"
#include "ssmt/textproc/bpe.h"
#include "ssmt/textproc/char_vocab.h"
#include "ssmt/textproc/lexicon.h"
#include "ssmt/textproc/unicode.h"
#include "ssmt/textproc/word_spans.h"

namespace ssmt {
namespace {

std::u32string U(const std::string& s) { return DecodeUtf8(s); }

std::vector<std::string> EntryTexts(const Lexicon& lex) {
  std::vector<std::string> out;
  for (const auto& e : lex.entries()) out.push_back(EncodeUtf8(e.text));
  return out;
}

TEST(CharVocabTest, CollectsDistinctCharacters) {
  const CharVocab vocab = CharVocab::Build({"ab", "ba"});
  EXPECT_EQ(vocab.num_chars(), 2);
  EXPECT_EQ(vocab.Id(U'a'), CharVocab::kNumSpecials);
  EXPECT_EQ(vocab.Id(U'b'), CharVocab::kNumSpecials + 1);
  EXPECT_EQ(vocab.Id(U'z'), CharVocab::kUnk);
}

TEST(CharVocabTest, IncludesSpace) {
  const CharVocab vocab = CharVocab::Build({"a a"});
  EXPECT_EQ(vocab.num_chars(), 2);
  EXPECT_TRUE(vocab.IsSeparator(vocab.Id(U' ')));
  EXPECT_FALSE(vocab.IsSeparator(vocab.Id(U'a')));
  EXPECT_TRUE(vocab.IsSeparator(CharVocab::kEot));
}

TEST(CharVocabTest, FrequencyIndependent) {
  std::vector<std::string> many(1000, "x");
  many.push_back("y");
  EXPECT_EQ(CharVocab::Build(many), CharVocab::Build({"xy"}));
}

TEST(CharVocabTest, EmptyCorpusFails) {
  EXPECT_THROW(CharVocab::Build({}), DataError);
}

TEST(CharVocabTest, SaveLoadRoundTrip) {
  const CharVocab vocab = CharVocab::Build({"héllo, wörld!"});
  std::stringstream buffer;
  vocab.Save(buffer);
  const CharVocab loaded = CharVocab::Load(buffer);
  EXPECT_EQ(loaded, vocab);
  for (int id = 0; id < vocab.size(); ++id) {
    EXPECT_EQ(loaded.Codepoint(id), vocab.Codepoint(id));
  }
}

TEST(CharVocabTest, EncodeTargetAppendsEot) {
  const CharVocab vocab = CharVocab::Build({"ab"});
  const std::vector<int> ids = vocab.EncodeTarget("ba");
  ASSERT_EQ(ids.size(), 3u);
  EXPECT_EQ(ids.back(), CharVocab::kEot);
  EXPECT_EQ(vocab.DecodeUtf8(ids), "ba");
}

TEST(UnicodeTest, NfcComposes) {
  // "e" + combining acute composes to U+00E9.
  EXPECT_EQ(NormalizeNfc("e\xCC\x81"), "\xC3\xA9");
}

TEST(UnicodeTest, MalformedUtf8Fails) {
  EXPECT_THROW(DecodeUtf8("\xC3"), DataError);
}

TEST(UnicodeTest, SeparatorClasses) {
  EXPECT_TRUE(IsSeparatorCodepoint(U' '));
  EXPECT_TRUE(IsSeparatorCodepoint(U'　'));
  EXPECT_TRUE(IsSeparatorCodepoint(U'.'));
  EXPECT_TRUE(IsSeparatorCodepoint(U'¿'));
  EXPECT_FALSE(IsSeparatorCodepoint(U'q'));
  EXPECT_FALSE(IsSeparatorCodepoint(U'é'));
}

TEST(WordSpansTest, TwoWords) {
  const WordSpanMap spans = WordSpanMap::Build(U("hi yo"));
  const std::vector<Span> expected = {{0, 2, SpanKind::kWord},
                                      {2, 3, SpanKind::kSeparator},
                                      {3, 5, SpanKind::kWord}};
  EXPECT_EQ(spans.spans(), expected);
}

TEST(WordSpansTest, TrailingPunctuation) {
  const std::vector<Span> expected = {{0, 1, SpanKind::kWord},
                                      {1, 2, SpanKind::kSeparator}};
  EXPECT_EQ(WordSpanMap::Build(U("a!")).spans(), expected);
  const std::vector<Span> sentence = {{0, 10, SpanKind::kWord},
                                      {10, 11, SpanKind::kSeparator}};
  EXPECT_EQ(WordSpanMap::Build(U("Ndiyaqonda.")).spans(), sentence);
}

TEST(WordSpansTest, AdjacentSeparatorsAreSeparateSpans) {
  const WordSpanMap spans = WordSpanMap::Build(U("a, b"));
  ASSERT_EQ(spans.spans().size(), 4u);
  EXPECT_EQ(spans.spans()[1].length(), 1);
  EXPECT_EQ(spans.spans()[2].length(), 1);
}

TEST(WordSpansTest, FromIdsTreatsEotAsSeparator) {
  const CharVocab vocab = CharVocab::Build({"ab"});
  const std::vector<int> ids = vocab.EncodeTarget("ab");
  const WordSpanMap spans = WordSpanMap::Build(ids, vocab);
  ASSERT_EQ(spans.spans().size(), 2u);
  EXPECT_TRUE(spans.IsSeparator(2));
}

TEST(WordSpansTest, LongestSegmentStart) {
  const WordSpanMap hi = WordSpanMap::Build(U("hi yo"));
  EXPECT_EQ(LongestSegmentStart(hi, 1, 3), 0);
  EXPECT_EQ(LongestSegmentStart(hi, 4, 3), 3);
  EXPECT_EQ(LongestSegmentStart(hi, 2, 3), 2);
  const WordSpanMap abc = WordSpanMap::Build(U("abcdef"));
  EXPECT_EQ(LongestSegmentStart(abc, 5, 2), 4);
  EXPECT_THROW(LongestSegmentStart(abc, 6, 2), UsageError);
  EXPECT_THROW(LongestSegmentStart(abc, -1, 2), UsageError);
}

TEST(WordSpansTest, LongestStartStaysInSpan) {
  std::mt19937 rng(7);
  const std::u32string alphabet = U"ab .";
  for (int trial = 0; trial < 200; ++trial) {
    std::u32string text;
    const int n = 1 + rng() % 12;
    for (int i = 0; i < n; ++i) text.push_back(alphabet[rng() % 4]);
    const WordSpanMap spans = WordSpanMap::Build(text);
    const int m = 1 + rng() % 4;
    for (int k = 0; k < n; ++k) {
      const int start = LongestSegmentStart(spans, k, m);
      EXPECT_EQ(spans.SpanIndex(start), spans.SpanIndex(k));
      EXPECT_LE(k - start + 1, m);
    }
  }
}

TEST(LexiconTest, CountsWithinWordNgrams) {
  const Lexicon lex = Lexicon::Build({"aa aa ab"}, 4, 2);
  // a:5, aa:2, ab:1, b:1; the space-crossing "a a" never counts.
  EXPECT_EQ(EntryTexts(lex),
            (std::vector<std::string>{"a", "aa", "ab", "b"}));
  EXPECT_EQ(lex.entry(0).freq, 5);
  EXPECT_EQ(lex.entry(1).freq, 2);
}

TEST(LexiconTest, KeepsSingletonsWhenTruncating) {
  const Lexicon lex = Lexicon::Build({"aa aa ab"}, 2, 2);
  EXPECT_EQ(EntryTexts(lex), (std::vector<std::string>{"a", "b"}));
  EXPECT_THROW(Lexicon::Build({"abc"}, 2, 2), DataError);
}

TEST(LexiconTest, MaxLenOneGivesCharacterInventory) {
  const Lexicon lex = Lexicon::Build({"banana split"}, 100, 1);
  EXPECT_EQ(EntryTexts(lex),
            (std::vector<std::string>{"a", "n", "b", "i", "l", "p", "s",
                                      "t"}));
}

TEST(LexiconTest, EntryLengthsBounded) {
  const Lexicon lex = Lexicon::Build({"abcdefg hij", "abab"}, 50, 3);
  for (const auto& e : lex.entries()) {
    EXPECT_GE(e.text.size(), 1u);
    EXPECT_LE(e.text.size(), 3u);
  }
}

TEST(LexiconTest, PrefixIds) {
  const Lexicon lex({{U"a", 5}, {U"aa", 2}, {U"ab", 1}, {U"b", 1}}, 2);
  EXPECT_EQ(lex.PrefixIds(U"a", true), (std::vector<int>{1, 2}));
  EXPECT_EQ(lex.PrefixIds(U"b", true), std::vector<int>{});
  EXPECT_EQ(lex.PrefixIds(U"aa", false), std::vector<int>{1});
  EXPECT_EQ(lex.PrefixIds(U"a", false), (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(lex.Find(U"ab"), 2);
  EXPECT_EQ(lex.Find(U"ba"), Lexicon::kNone);
}

TEST(LexiconTest, PrefixIdsMatchLinearScan) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<std::string> corpus;
    for (int s = 0; s < 5; ++s) {
      std::string line;
      const int n = 1 + rng() % 15;
      for (int i = 0; i < n; ++i) line.push_back("abc "[rng() % 4]);
      corpus.push_back(line);
    }
    Lexicon lex;
    try {
      lex = Lexicon::Build(corpus, 3 + rng() % 10, 1 + rng() % 4);
    } catch (const DataError&) {
      continue;
    }
    for (const std::u32string prefix :
         {U"a", U"b", U"c", U"ab", U"ba", U"cc", U"abc", U"aaa"}) {
      for (bool exclude : {false, true}) {
        std::vector<int> expected;
        for (int id = 0; id < lex.size(); ++id) {
          const std::u32string& t = lex.entry(id).text;
          if (t.compare(0, prefix.size(), prefix) != 0) continue;
          if (exclude && t == prefix) continue;
          expected.push_back(id);
        }
        EXPECT_EQ(lex.PrefixIds(prefix, exclude), expected);
      }
    }
  }
}

TEST(LexiconTest, EveryTrainingWordIsCovered) {
  const std::vector<std::string> corpus = {"umntu abantu", "ndiyaqonda."};
  const Lexicon lex = Lexicon::Build(corpus, 12, 3);
  for (const std::string& line : corpus) {
    for (char32_t c : DecodeUtf8(line)) {
      if (IsSeparatorCodepoint(c)) continue;
      EXPECT_NE(lex.Find(std::u32string(1, c)), Lexicon::kNone);
    }
  }
}

TEST(LexiconTest, SaveLoadRoundTrip) {
  const Lexicon lex = Lexicon::Build({"isiXhosa siyathetha"}, 20, 3);
  std::stringstream buffer;
  lex.Save(buffer);
  const Lexicon loaded = Lexicon::Load(buffer);
  ASSERT_EQ(loaded.size(), lex.size());
  EXPECT_EQ(loaded.max_len(), lex.max_len());
  for (int id = 0; id < lex.size(); ++id) {
    EXPECT_EQ(loaded.entry(id).text, lex.entry(id).text);
    EXPECT_EQ(loaded.entry(id).freq, lex.entry(id).freq);
  }
}

TEST(BpeTest, FirstMergeIsMostFrequentPair) {
  const BpeModel bpe = BpeModel::Train({"aaab"}, 1);
  ASSERT_EQ(bpe.merges().size(), 1u);
  EXPECT_EQ(bpe.merges()[0],
            (std::pair<std::string, std::string>("a", "a")));
  EXPECT_EQ(bpe.Apply("aaab"),
            (std::vector<std::string>{"aa", "a", "b</w>"}));
}

TEST(BpeTest, NoMergesKeepsCharacters) {
  const BpeModel bpe = BpeModel::Train({"ab"}, 0);
  EXPECT_TRUE(bpe.merges().empty());
  EXPECT_EQ(bpe.Apply("ab"), (std::vector<std::string>{"a", "b</w>"}));
  EXPECT_EQ(bpe.tokens(), (std::vector<std::string>{"a", "b</w>"}));
}

TEST(BpeTest, UnknownCharacterMapsToUnk) {
  const BpeModel bpe = BpeModel::Train({"ab"}, 0);
  const std::vector<int> ids = bpe.Encode("az");
  ASSERT_EQ(ids.size(), 2u);
  EXPECT_EQ(ids[1], BpeModel::kUnkId);
}

TEST(BpeTest, RoundTripAndIdempotence) {
  const std::vector<std::string> corpus = {
      "the cat sat on the mat", "a cat and a hat", "that hat is flat"};
  const BpeModel bpe = BpeModel::Train(corpus, 20);
  for (const std::string& line : corpus) {
    const std::vector<std::string> once = bpe.Apply(line);
    EXPECT_EQ(BpeModel::Detokenize(once), line);
    EXPECT_EQ(bpe.Apply(BpeModel::Detokenize(once)), once);
  }
}

TEST(BpeTest, SaveLoadRoundTrip) {
  const BpeModel bpe = BpeModel::Train({"low lower lowest newer wider"}, 10);
  std::stringstream buffer;
  bpe.Save(buffer);
  const BpeModel loaded = BpeModel::Load(buffer);
  EXPECT_EQ(loaded.merges(), bpe.merges());
  EXPECT_EQ(loaded.tokens(), bpe.tokens());
  EXPECT_EQ(loaded.Encode("lowest newest"), bpe.Encode("lowest newest"));
}

TEST(BpeTest, EmptyCorpusFails) {
  EXPECT_THROW(BpeModel::Train({}, 3), DataError);
  EXPECT_THROW(BpeModel::Train({"a"}, -1), UsageError);
}

}  // namespace
}  // namespace ssmt
