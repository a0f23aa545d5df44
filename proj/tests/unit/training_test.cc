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
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "ssmt/common/errors.h"
#include "ssmt/decoder/translator.h"
#include "ssmt/training/model_io.h"
#include "ssmt/training/pipeline.h"
#include "ssmt/training/trainer.h"

namespace ssmt {
namespace {

struct CopyTask {
  std::vector<std::string> source;
  std::vector<std::string> target;
};

// Twenty short pairs whose target spells the source tokens.
CopyTask MakeCopyTask() {
  const std::vector<std::string> words = {"ab", "ba", "abc", "ca", "bc"};
  CopyTask t;
  for (int i = 0; i < 20; ++i) {
    const std::string a = words[i % 5];
    const std::string b = words[(i * 3 + 1) % 5];
    t.source.push_back(a + " " + b);
    t.target.push_back(a + " " + b);
  }
  return t;
}

struct Fixture {
  Artifacts artifacts;
  std::unique_ptr<SegmentalModel> model;
  std::vector<TrainingExample> examples;
};

Fixture MakeFixture(uint64_t seed = 3) {
  const CopyTask task = MakeCopyTask();
  PreprocessOptions pre;
  pre.source_merges = 20;
  pre.lexicon_size = 30;
  pre.max_segment_length = 3;
  Fixture f;
  f.artifacts = BuildArtifacts(task.source, task.target, pre);
  ModelConfig base;
  base.dim = 8;
  base.ff_dim = 16;
  base.encoder_layers = 1;
  base.decoder_layers = 1;
  base.heads = 2;
  base.char_lstm_dim = 8;
  base.seed = seed;
  f.model = MakeModel(f.artifacts, ConfigureModel(f.artifacts, base));
  f.examples = MakeExamples(f.artifacts, task.source, task.target);
  return f;
}

double MeanLoss(const SegmentalModel& model,
                const std::vector<TrainingExample>& examples) {
  double nll = 0;
  long chars = 0;
  for (const auto& e : examples) {
    nll += NllAndGrad(model, e, nullptr);
    chars += e.target.size();
  }
  return nll / chars;
}

TrainOptions SmallOptions() {
  TrainOptions o;
  o.adam.lr = 1e-2;
  o.batch_chars = 40;
  o.threads = 1;
  o.max_epochs = 1000;
  o.min_epochs = 0;
  o.patience = 1000;
  return o;
}

TEST(TrainingTest, LossDecreasesOnCopyTask) {
  Fixture f = MakeFixture();
  const double before = MeanLoss(*f.model, f.examples);
  Trainer trainer(*f.model, f.examples, {}, {}, SmallOptions());
  for (int i = 0; i < 50; ++i) {
    const double loss = trainer.Step();
    ASSERT_TRUE(std::isfinite(loss)) << "step " << i;
  }
  EXPECT_EQ(trainer.step(), 50);
  const double after = MeanLoss(*f.model, f.examples);
  EXPECT_LT(after, 0.6 * before) << before << " -> " << after;
}

TEST(TrainingTest, BatchLossIsTheSumOfSentenceLosses) {
  Fixture f = MakeFixture();
  std::vector<int> batch = {0, 3, 5, 11};
  Gradients grads(f.model->params());
  const BatchLoss loss = BatchGradients(*f.model, f.examples, batch, 1, grads);
  double sum = 0;
  long chars = 0;
  for (size_t k = 0; k < batch.size(); ++k) {
    const double alone = NllAndGrad(*f.model, f.examples[batch[k]], nullptr);
    EXPECT_NEAR(loss.sentence_nll[k], alone, 1e-7);
    sum += alone;
    chars += f.examples[batch[k]].target.size();
  }
  EXPECT_NEAR(loss.nll, sum, 1e-7);
  EXPECT_EQ(loss.chars, chars);

  // The batch gradient is the per-character mean of the sentence gradients.
  Gradients expected(f.model->params());
  for (int i : batch) {
    NllAndGrad(*f.model, f.examples[i], &expected, 1.0 / chars);
  }
  for (int p = 0; p < grads.size(); ++p) {
    EXPECT_LT((grads[p] - expected[p]).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(TrainingTest, ThreadCountDoesNotChangeTheGradient) {
  Fixture f = MakeFixture();
  std::vector<int> batch = {1, 2, 4, 6, 8, 9, 13};
  Gradients one(f.model->params()), three(f.model->params());
  const BatchLoss a = BatchGradients(*f.model, f.examples, batch, 1, one);
  const BatchLoss b = BatchGradients(*f.model, f.examples, batch, 3, three);
  EXPECT_NEAR(a.nll, b.nll, 1e-10);
  for (int p = 0; p < one.size(); ++p) {
    EXPECT_LT((one[p] - three[p]).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(TrainingTest, BatchesCoverEveryExampleOnceWithinTheBudget) {
  Fixture f = MakeFixture();
  for (int epoch = 0; epoch < 3; ++epoch) {
    const auto batches = MakeBatches(f.examples, 25, 7, epoch);
    std::multiset<int> seen;
    for (const auto& b : batches) {
      long chars = 0;
      for (int i : b) {
        seen.insert(i);
        chars += f.examples[i].target.size();
      }
      EXPECT_TRUE(b.size() == 1 || chars <= 25);
    }
    EXPECT_EQ(seen.size(), f.examples.size());
    EXPECT_EQ(std::set<int>(seen.begin(), seen.end()).size(),
              f.examples.size());
    EXPECT_EQ(batches, MakeBatches(f.examples, 25, 7, epoch));
  }
  EXPECT_NE(MakeBatches(f.examples, 25, 7, 0), MakeBatches(f.examples, 25, 7, 1));
  EXPECT_THROW(MakeBatches(f.examples, 0, 7, 0), UsageError);
}

TEST(TrainingTest, ResumeReproducesTheNextSteps) {
  const std::string path =
      (std::filesystem::temp_directory_path() / "ssmt_resume_test.ckpt")
          .string();
  Fixture a = MakeFixture(3);
  TrainOptions options = SmallOptions();
  options.warmup_steps = 4;
  Trainer first(*a.model, a.examples, {}, {}, options);
  for (int i = 0; i < 9; ++i) first.Step();
  first.SaveState(path);
  std::vector<double> expected;
  for (int i = 0; i < 6; ++i) expected.push_back(first.Step());

  Fixture b = MakeFixture(3);
  for (int p = 0; p < b.model->params().size(); ++p) {
    b.model->params().at(p).value.setConstant(0.5);
  }
  Trainer second(*b.model, b.examples, {}, {}, options);
  second.LoadState(path);
  EXPECT_EQ(second.step(), 9);
  for (double want : expected) EXPECT_NEAR(second.Step(), want, 1e-6);
  for (int p = 0; p < a.model->params().size(); ++p) {
    EXPECT_LT((a.model->params().at(p).value - b.model->params().at(p).value)
                  .cwiseAbs()
                  .maxCoeff(),
              1e-9);
  }
  std::filesystem::remove(path);
}

TEST(TrainingTest, NonFiniteLossIsANumericError) {
  Fixture f = MakeFixture();
  f.model->params().Get("gate.b").value(0, 0) =
      std::numeric_limits<double>::quiet_NaN();
  Trainer trainer(*f.model, f.examples, {}, {}, SmallOptions());
  EXPECT_THROW(trainer.Step(), NumericError);
}

TEST(TrainingTest, LearningRateSchedule) {
  TrainOptions o;
  o.adam.lr = 0.01;
  EXPECT_DOUBLE_EQ(ScheduledLearningRate(o, 1), 0.01);
  o.warmup_steps = 100;
  EXPECT_DOUBLE_EQ(ScheduledLearningRate(o, 50), 0.005);
  EXPECT_DOUBLE_EQ(ScheduledLearningRate(o, 100), 0.01);
  EXPECT_DOUBLE_EQ(ScheduledLearningRate(o, 400), 0.005);
}

TEST(TrainingTest, ThreadsFromEnvironment) {
  setenv("SSMT_THREADS", "3", 1);
  EXPECT_EQ(ThreadsFromEnvironment(), 3);
  setenv("SSMT_THREADS", "x", 1);
  EXPECT_THROW(ThreadsFromEnvironment(), UsageError);
  unsetenv("SSMT_THREADS");
  EXPECT_EQ(ThreadsFromEnvironment(), 1);
}

TEST(TrainingTest, EarlyStoppingAndValidation) {
  Fixture f = MakeFixture();
  TrainOptions o = SmallOptions();
  o.max_epochs = 40;
  o.patience = 2;
  o.valid_sample = 4;
  o.valid_beam.beam_size = 1;
  o.valid_beam.max_chars = 20;
  const CopyTask task = MakeCopyTask();
  std::vector<TrainingExample> valid(f.examples.begin(), f.examples.begin() + 4);
  std::vector<std::string> refs(task.target.begin(), task.target.begin() + 4);
  Trainer trainer(*f.model, f.examples, valid, refs, o);
  int epochs = 0, bests = 0;
  trainer.Train([&](const EpochLog&) { ++epochs; },
                [&](const EpochLog&) { ++bests; });
  const TrainProgress& p = trainer.progress();
  EXPECT_TRUE(p.finished);
  EXPECT_EQ(epochs, static_cast<int>(p.log.size()));
  EXPECT_GE(bests, 1);
  EXPECT_TRUE(p.bad_epochs >= 2 || p.epoch == 40);
  for (const EpochLog& e : p.log) {
    EXPECT_TRUE(std::isfinite(e.train_loss));
    EXPECT_GE(e.valid_chrf, 0.0);
    EXPECT_LE(e.valid_chrf, 100.0);
  }
  EXPECT_THROW(trainer.Step(), UsageError);
}

TEST(TrainingTest, MinEpochsDelayEarlyStopping) {
  Fixture f = MakeFixture();
  TrainOptions o = SmallOptions();
  o.patience = 1;
  o.min_epochs = 4;
  o.max_epochs = 40;
  o.adam.lr = 0.0;
  o.valid_beam.beam_size = 1;
  o.valid_beam.max_chars = 20;
  const CopyTask task = MakeCopyTask();
  std::vector<TrainingExample> valid(f.examples.begin(), f.examples.begin() + 2);
  std::vector<std::string> refs(task.target.begin(), task.target.begin() + 2);
  Trainer trainer(*f.model, f.examples, valid, refs, o);
  int bests = 0;
  trainer.Train({}, [&](const EpochLog&) { ++bests; });
  // Frozen weights repeat the validation score, so every epoch ties the
  // best score without improving on it.
  EXPECT_EQ(trainer.progress().log.size(), 4u);
  EXPECT_EQ(bests, 4);
  EXPECT_EQ(trainer.progress().best_epoch, 3);
  EXPECT_EQ(trainer.progress().bad_epochs, 3);
}

TEST(ModelIoTest, SaveAndLoad) {
  const std::string path =
      (std::filesystem::temp_directory_path() / "ssmt_model_io.ckpt").string();
  Fixture a = MakeFixture(3);
  Fixture b = MakeFixture(4);
  SaveModel(path, *a.model, ArrayType::kFloat64);
  EXPECT_EQ(ReadModelConfig(path), a.model->config());
  EXPECT_THROW(LoadModelWeights(path, *b.model), DataError);  // seed differs
  Fixture c = MakeFixture(3);
  c.model->params().at(0).value.setZero();
  LoadModelWeights(path, *c.model);
  EXPECT_DOUBLE_EQ(MeanLoss(*c.model, c.examples),
                   MeanLoss(*a.model, a.examples));
  std::filesystem::remove(path);
}

TEST(PipelineTest, ExamplesAndErrors) {
  const CopyTask task = MakeCopyTask();
  PreprocessOptions pre;
  pre.source_merges = 5;
  pre.lexicon_size = 30;
  pre.max_segment_length = 3;
  const Artifacts a = BuildArtifacts(task.source, task.target, pre);
  const auto examples = MakeExamples(a, task.source, task.target);
  EXPECT_EQ(examples.size(), 20u);
  EXPECT_EQ(examples[0].target.back(), CharVocab::kEot);
  EXPECT_THROW(BuildArtifacts(task.source, {"x"}, pre), DataError);
  EXPECT_THROW(MakeExamples(a, {"ab"}, {"abz"}), DataError);
  EXPECT_THROW(MakeExamples(a, {""}, {"ab"}), DataError);
}

TEST(TranslatorTest, SegmentReconstructsTheInput) {
  Fixture f = MakeFixture();
  const std::string target = "abc ba";
  const std::string seg =
      SegmentSentence(*f.model, f.examples[0].source, target, "|");
  std::string stripped;
  for (char c : seg) {
    if (c != '|') stripped += c;
  }
  EXPECT_EQ(stripped, target);
  EXPECT_EQ(seg.find("| "), std::string::npos);
  EXPECT_EQ(seg.find(" |"), std::string::npos);
}

}  // namespace
}  // namespace ssmt
