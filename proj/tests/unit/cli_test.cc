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

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cli/commands.h"
#include "cli/run_config.h"
#include "gtest/gtest.h"
#include "ssmt/common/errors.h"
#include "ssmt/compgen/compgen.h"

namespace ssmt::cli {
namespace {

namespace fs = std::filesystem;

TEST(RunConfigTest, Defaults) {
  const RunConfig c;
  EXPECT_EQ(c.Get("model.max_segment_length"), "5");
  EXPECT_EQ(c.Get("model.lexicon_size"), "5000");
  EXPECT_EQ(c.Get("bpe.merges"), "5000");
  EXPECT_EQ(c.Get("decode.beam_size"), "5");
  EXPECT_EQ(c.Get("decode.delimiter"), "-");
  EXPECT_EQ(c.Get("decode.continue_reading"), "partition");
  EXPECT_EQ(c.Get("train.patience"), "5");
  EXPECT_EQ(c.Get("train.valid_sample"), "200");
}

TEST(RunConfigTest, ParsesSectionsAndOverrides) {
  RunConfig c = RunConfig::FromText(
      "[paths]\nwork_dir = out\n[model]\ndim = 16\n[train]\nlr = 0.005\n"
      "[decode]\ncontinue_reading = verbatim\n");
  EXPECT_EQ(c.paths.work_dir, "out");
  EXPECT_EQ(c.model.dim, 16);
  EXPECT_DOUBLE_EQ(c.train.adam.lr, 0.005);
  EXPECT_EQ(c.Get("train.lr"), "0.005");
  EXPECT_EQ(c.decode.reading, ContinueReading::kVerbatim);
  c.Set("decode.beam_size", "3");
  EXPECT_EQ(c.decode.beam.beam_size, 3);
  EXPECT_THROW(c.Set("decode.nope", "1"), UsageError);
  EXPECT_THROW(c.Set("model.dim", "abc"), UsageError);
  EXPECT_THROW(c.Set("train.resume", "maybe"), UsageError);
  EXPECT_THROW(RunConfig::FromText("[model]\nwidth = 3\n"), UsageError);
  EXPECT_THROW(RunConfig::FromFile("/nonexistent/run.ini"), DataError);
}

TEST(RunConfigTest, HashFollowsTheCanonicalText) {
  EXPECT_EQ(Fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  RunConfig a, b;
  EXPECT_EQ(a.Hash(), b.Hash());
  b.Set("train.seed", "2");
  EXPECT_NE(a.Hash(), b.Hash());
  EXPECT_EQ(RunConfig::FromText("").Hash(), a.Hash());
  EXPECT_EQ(HexHash(0xabcULL), "0000000000000abc");
}

// A scratch directory with a tiny parallel corpus and config.
class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ssmt_cli_" + std::to_string(::testing::UnitTest::GetInstance()
                                             ->random_seed()) +
            "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    const std::vector<std::string> words = {"ab", "ba", "abc", "ca", "bc"};
    std::vector<std::string> src, tgt;
    for (int i = 0; i < 20; ++i) {
      const std::string s = words[i % 5] + " " + words[(i * 3 + 1) % 5];
      src.push_back(s);
      tgt.push_back(s);
    }
    WriteLines(Path("train.src"), src);
    WriteLines(Path("train.tgt"), tgt);
    WriteLines(Path("valid.src"), {src[0], src[1]});
    WriteLines(Path("valid.tgt"), {tgt[0], tgt[1]});
    std::ofstream ini(Path("run.ini"));
    ini << "[paths]\ntrain_source = " << Path("train.src")
        << "\ntrain_target = " << Path("train.tgt")
        << "\nvalid_source = " << Path("valid.src")
        << "\nvalid_target = " << Path("valid.tgt")
        << "\nwork_dir = " << Path("work") << "\n"
        << "[model]\ndim = 8\nff_dim = 16\nencoder_layers = 1\n"
           "decoder_layers = 1\nheads = 2\nchar_lstm_dim = 8\n"
           "max_segment_length = 3\nlexicon_size = 30\n"
           "[bpe]\nmerges = 20\n"
           "[train]\nlr = 0.01\nbatch_chars = 60\nmax_epochs = 2\n"
           "[decode]\nbeam_size = 2\nmax_chars = 30\n";
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const {
    return (dir_ / name).string();
  }

  int Run(std::vector<std::string> args) {
    args.insert(args.begin(), {"--config", Path("run.ini")});
    out_.str("");
    err_.str("");
    return RunCli(args, out_, err_);
  }

  std::string Slurp(const std::string& name) const {
    std::ifstream in(Path(name), std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(RunCli({}, out_, err_), kExitUsage);
  EXPECT_EQ(RunCli({"frobnicate"}, out_, err_), kExitUsage);
  EXPECT_EQ(Run({"preprocess", "--model.width", "3"}), kExitUsage);
  EXPECT_EQ(Run({"preprocess", "stray"}), kExitUsage);
  EXPECT_EQ(Run({"eval"}), kExitUsage);
}

TEST_F(CliTest, PreprocessIsReproducibleAndReportsMissingFiles) {
  ASSERT_EQ(Run({"preprocess"}), kExitOk) << err_.str();
  const std::string lexicon = Slurp("work/lexicon.txt");
  const std::string bpe = Slurp("work/bpe.txt");
  const std::string vocab = Slurp("work/vocab.txt");
  ASSERT_FALSE(lexicon.empty());
  ASSERT_EQ(Run({"preprocess"}), kExitOk);
  EXPECT_EQ(Slurp("work/lexicon.txt"), lexicon);
  EXPECT_EQ(Slurp("work/bpe.txt"), bpe);
  EXPECT_EQ(Slurp("work/vocab.txt"), vocab);

  const auto manifest =
      nlohmann::json::parse(Slurp("work/preprocess.manifest.json"));
  EXPECT_EQ(manifest.at("results").at("max_segment_length"), 3);
  EXPECT_GT(manifest.at("results").at("lexicon_size").get<int>(), 0);
  EXPECT_EQ(manifest.at("config_hash").get<std::string>().size(), 16u);
  EXPECT_EQ(manifest.at("inputs").size(), 2u);

  const std::string missing = Path("missing.src");
  EXPECT_EQ(Run({"preprocess", "--paths.train_source", missing}), kExitData);
  EXPECT_NE(err_.str().find(missing), std::string::npos) << err_.str();
}

TEST_F(CliTest, TrainTranslateSegmentEval) {
  ASSERT_EQ(Run({"preprocess"}), kExitOk) << err_.str();
  ASSERT_EQ(Run({"train"}), kExitOk) << err_.str();
  EXPECT_TRUE(fs::exists(Path("work/model.ckpt")));
  EXPECT_TRUE(fs::exists(Path("work/train_state.ckpt")));
  const auto log = ReadLines(Path("work/train_log.tsv"));
  ASSERT_EQ(log.size(), 3u);
  for (size_t i = 1; i < log.size(); ++i) {
    std::istringstream row(log[i]);
    int epoch, steps;
    double loss;
    row >> epoch >> steps >> loss;
    EXPECT_TRUE(std::isfinite(loss));
  }

  // Translation is deterministic and the segmentation stream aligns.
  ASSERT_EQ(Run({"translate", "--input", Path("valid.src"), "--output",
                 Path("a.hyp"), "--emit-segmentation", Path("a.seg")}),
            kExitOk)
      << err_.str();
  ASSERT_EQ(Run({"translate", "--input", Path("valid.src"), "--output",
                 Path("b.hyp")}),
            kExitOk);
  EXPECT_EQ(Slurp("a.hyp"), Slurp("b.hyp"));
  const auto hyps = ReadLines(Path("a.hyp"));
  const auto segs = ReadLines(Path("a.seg"));
  ASSERT_EQ(hyps.size(), 2u);
  ASSERT_EQ(segs.size(), hyps.size());
  for (size_t i = 0; i < hyps.size(); ++i) {
    std::string stripped;
    for (char c : segs[i]) {
      if (c != '-') stripped += c;
    }
    EXPECT_EQ(stripped, hyps[i]);
  }
  ASSERT_EQ(Run({"translate", "--mixture-beam", "--input", Path("valid.src")}),
            kExitOk);
  EXPECT_EQ(ReadLines(Path("a.hyp")).size(), 2u);

  // Empty input gives empty output.
  WriteLines(Path("empty.src"), {});
  ASSERT_EQ(Run({"translate", "--input", Path("empty.src"), "--output",
                 Path("empty.hyp")}),
            kExitOk);
  EXPECT_EQ(Slurp("empty.hyp"), "");

  // Segmentation needs the source and reconstructs the input.
  EXPECT_EQ(Run({"segment", "--target", Path("train.tgt")}), kExitUsage);
  ASSERT_EQ(Run({"segment", "--target", Path("train.tgt"), "--source",
                 Path("train.src"), "--output", Path("train.vit")}),
            kExitOk)
      << err_.str();
  const auto targets = ReadLines(Path("train.tgt"));
  const auto vit = ReadLines(Path("train.vit"));
  ASSERT_EQ(vit.size(), targets.size());
  for (size_t i = 0; i < vit.size(); ++i) {
    std::string stripped;
    for (char c : vit[i]) {
      if (c != '-') stripped += c;
    }
    EXPECT_EQ(stripped, targets[i]);
    EXPECT_EQ(vit[i].find("- "), std::string::npos);
    EXPECT_EQ(vit[i].find(" -"), std::string::npos);
  }

  // Identical files score 100; segmentation reports obey the F1 identity.
  ASSERT_EQ(Run({"eval", "--hyp", Path("train.tgt"), "--ref", Path("train.tgt")}),
            kExitOk);
  EXPECT_NE(out_.str().find("chrF\t100.000000"), std::string::npos) << out_.str();
  ASSERT_EQ(Run({"eval", "--pred-seg", Path("train.vit"), "--gold-seg",
                 Path("train.vit")}),
            kExitOk);
  EXPECT_NE(out_.str().find("boundary_f1\t"), std::string::npos);
  const auto report = nlohmann::json::parse(Slurp("work/eval.manifest.json"));
  for (const char* name : {"boundary", "morpheme"}) {
    const auto& r = report.at("results").at(name);
    const double p = r.at("precision"), rec = r.at("recall"), f = r.at("f1");
    EXPECT_NEAR(f, p + rec > 0 ? 2 * p * rec / (p + rec) : 0.0, 1e-9);
  }
}

TEST_F(CliTest, ResumeContinuesFromTheSavedState) {
  ASSERT_EQ(Run({"preprocess"}), kExitOk);
  ASSERT_EQ(Run({"train", "--train.max_epochs", "1"}), kExitOk) << err_.str();
  ASSERT_EQ(Run({"train", "--train.max_epochs", "2", "--train.resume", "true"}),
            kExitOk)
      << err_.str();
  EXPECT_NE(err_.str().find("resumed"), std::string::npos);
  EXPECT_EQ(ReadLines(Path("work/train_log.tsv")).size(), 3u);
}

TEST_F(CliTest, DivergentTrainingExitsWithNumericError) {
  ASSERT_EQ(Run({"preprocess"}), kExitOk);
  EXPECT_EQ(Run({"train", "--train.lr", "1e300", "--train.clip_norm", "0"}),
            kExitNumeric)
      << err_.str();
}

TEST_F(CliTest, BootstrapIsDeterministicPerSeed) {
  std::vector<std::string> refs, worse;
  for (int i = 0; i < 30; ++i) {
    refs.push_back("sentence " + std::to_string(i) + " abc");
    worse.push_back(i % 3 ? refs.back() : "x");
  }
  WriteLines(Path("ref.txt"), refs);
  WriteLines(Path("worse.txt"), worse);
  const std::vector<std::string> args = {"eval",      "--hyp",  Path("ref.txt"),
                                         "--ref",     Path("ref.txt"),
                                         "--compare", Path("worse.txt"),
                                         "--seed",    "5"};
  ASSERT_EQ(Run(args), kExitOk) << err_.str();
  const std::string first = out_.str();
  ASSERT_EQ(Run(args), kExitOk);
  EXPECT_EQ(out_.str(), first);
  EXPECT_NE(first.find("bootstrap_p\t0.000000"), std::string::npos) << first;
}

TEST_F(CliTest, SplitWritesReproducibleSubsets) {
  std::vector<std::string> train, test, test_tgt;
  const std::vector<std::string> m = {"ndi", "ya", "ku", "ba", "lo", "si"};
  for (int i = 0; i < 60; ++i) {
    train.push_back(m[i % 6] + "-" + m[(i / 6) % 6] + " " + m[(i + 2) % 6]);
    test.push_back(m[(i * 5) % 6] + "-" + m[(i / 3) % 6] + "-" + m[i % 4]);
    test_tgt.push_back("line " + std::to_string(i));
  }
  WriteLines(Path("train.seg"), train);
  WriteLines(Path("test.seg"), test);
  WriteLines(Path("test.tgt2"), test_tgt);
  auto run = [&](const std::string& out_dir) {
    return Run({"split", "--train-seg", Path("train.seg"), "--test-seg",
                Path("test.seg"), "--test-target", Path("test.tgt2"),
                "--out-dir", Path(out_dir), "--target-dc", "0.3", "--size",
                "10", "--sample-size", "8", "--seed", "4"});
  };
  ASSERT_EQ(run("s1"), kExitOk) << err_.str();
  ASSERT_EQ(run("s2"), kExitOk);
  EXPECT_EQ(Slurp("s1/indices.txt"), Slurp("s2/indices.txt"));
  const GenbenchReport report = GenbenchReport::FromJson(Slurp("s1/report.json"));
  EXPECT_EQ(report.indices.size(), 10u);
  EXPECT_EQ(report.spec.seed, 4u);
  std::vector<SegmentedSentence> tr, sub;
  for (const auto& l : train) tr.push_back(ParseSegmentedSentence(l));
  for (int i : report.indices) sub.push_back(ParseSegmentedSentence(test[i]));
  EXPECT_NEAR(report.compound_divergence, CompoundDivergence(tr, sub), 1e-12);
  const auto subset = ReadLines(Path("s1/subset.target"));
  ASSERT_EQ(subset.size(), 10u);
  EXPECT_EQ(subset[0], test_tgt[report.indices[0]]);
  EXPECT_EQ(Run({"split", "--train-seg", Path("train.seg"), "--test-seg",
                 Path("test.seg"), "--out-dir", Path("s3"), "--size", "61"}),
            kExitData);
}

}  // namespace
}  // namespace ssmt::cli
