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

#ifndef SSMT_TRAINING_TRAINER_H_
#define SSMT_TRAINING_TRAINER_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ssmt/decoder/dynamic_decoder.h"
#include "ssmt/model/segmental_model.h"
#include "ssmt/numerics/adam.h"
#include "ssmt/numerics/param_store.h"

namespace ssmt {

struct TrainingExample {
  std::vector<int> source;
  std::vector<int> target;  // character ids ending with EOT
};

struct TrainOptions {
  AdamOptions adam;
  // Linear warmup to adam.lr over this many steps, then decay with the
  // inverse square root of the step. 0 keeps the rate constant.
  int warmup_steps = 0;
  // Global gradient norm bound; <= 0 disables clipping.
  double clip_norm = 1.0;
  // Dropout rate on embeddings and sublayer outputs; 0 disables it.
  double dropout = 0.0;
  // Upper bound on target characters per batch. A longer sentence forms a
  // batch of its own.
  int batch_chars = 2000;
  int max_epochs = 100;
  // Early stopping is considered only after this many epochs.
  int min_epochs = 25;
  // Epochs without a validation improvement before stopping.
  int patience = 5;
  // Validation sentences decoded per epoch (the first ones).
  int valid_sample = 200;
  BeamConfig valid_beam;
  uint64_t seed = 1;
  // Worker threads per batch; <= 0 reads SSMT_THREADS, else 1.
  int threads = 0;
  // Stops after the epoch that crosses this wall-clock limit; <= 0 means no
  // limit.
  double time_limit_seconds = 0.0;
};

// Learning rate for the given (1-based) step.
double ScheduledLearningRate(const TrainOptions& options, int64_t step);

// Worker count from SSMT_THREADS, defaulting to 1. Throws UsageError on a
// malformed value.
int ThreadsFromEnvironment();

// -log p(target | source), adding its gradient (times scale) into grads
// when grads is non-null. A positive dropout rate applies dropout seeded
// with dropout_seed.
double NllAndGrad(const SegmentalModel& model, const TrainingExample& example,
                  Gradients* grads, double scale = 1.0, double dropout = 0.0,
                  uint64_t dropout_seed = 0);

// Sentence indices grouped into batches of at most batch_chars target
// characters, in the order of a permutation determined by (seed, epoch).
std::vector<std::vector<int>> MakeBatches(
    const std::vector<TrainingExample>& examples, int batch_chars,
    uint64_t seed, int epoch);

struct BatchLoss {
  double nll = 0.0;  // summed over sentences
  long chars = 0;
  std::vector<double> sentence_nll;
};

// Gradient of the batch NLL per target character, written into grads.
// Sentences are split over threads in contiguous chunks and the per-thread
// gradients are summed in thread order. Throws NumericError on a non-finite
// sentence loss. Dropout masks depend only on (seed, sentence index).
BatchLoss BatchGradients(const SegmentalModel& model,
                         const std::vector<TrainingExample>& examples,
                         const std::vector<int>& batch, int threads,
                         Gradients& grads, double dropout = 0.0,
                         uint64_t seed = 0);

struct EpochLog {
  int epoch = 0;
  double train_loss = 0.0;  // NLL per character
  double valid_chrf = 0.0;
  double valid_exact = 0.0;  // percentage of exact matches
  int64_t steps = 0;
  double seconds = 0.0;
};

struct TrainProgress {
  int epoch = 0;
  int batch_cursor = 0;
  double epoch_nll = 0.0;
  long epoch_chars = 0;
  // Validation chrF, or the negated training loss without validation data.
  double best_score = 0.0;
  int best_epoch = -1;
  int bad_epochs = 0;
  // Whether the last completed epoch matched or beat the best score. Its
  // weights then replace the best checkpoint; only a strict improvement
  // resets bad_epochs.
  bool improved = false;
  bool finished = false;
  std::vector<EpochLog> log;
};

struct ValidationScore {
  double chrf = 0.0;
  double exact = 0.0;
  std::vector<std::string> hypotheses;
};

// Decodes the sources and scores them against the references.
ValidationScore Validate(const SegmentalModel& model,
                         const std::vector<TrainingExample>& sources,
                         const std::vector<std::string>& references,
                         const BeamConfig& beam, int limit);

class Trainer {
 public:
  // valid_refs are the validation targets as text, aligned with valid.
  Trainer(SegmentalModel& model, std::vector<TrainingExample> train,
          std::vector<TrainingExample> valid,
          std::vector<std::string> valid_refs, TrainOptions options);

  // One optimizer update on the next batch; returns its NLL per character.
  // Validation runs when the step completes an epoch.
  double Step();

  // Steps until early stopping, max_epochs or the time limit. on_epoch sees
  // every epoch log; on_best runs whenever the selection score improves:
  // validation chrF, or training loss when there is no validation data.
  void Train(const std::function<void(const EpochLog&)>& on_epoch = {},
             const std::function<void(const EpochLog&)>& on_best = {});

  const TrainProgress& progress() const { return progress_; }
  int64_t step() const { return model_.params().adam_step(); }
  int threads() const { return threads_; }

  // Float64 parameters, Adam moments and progress, for exact resumption.
  void SaveState(const std::string& path) const;
  void LoadState(const std::string& path);

 private:
  void EndEpoch();
  bool ShouldStop(const TrainProgress& p, double seconds) const;

  SegmentalModel& model_;
  std::vector<TrainingExample> train_;
  std::vector<TrainingExample> valid_;
  std::vector<std::string> valid_refs_;
  TrainOptions options_;
  int threads_;
  TrainProgress progress_;
  std::vector<std::vector<int>> batches_;
  double start_time_;
  double elapsed_before_ = 0.0;
};

}  // namespace ssmt

#endif  // SSMT_TRAINING_TRAINER_H_
