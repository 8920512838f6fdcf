// Copyright 2026 The Intertext Authors.
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

#ifndef INTERTEXT_TRAINER_H_
#define INTERTEXT_TRAINER_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "intertext/corpus.h"
#include "intertext/encoder.h"
#include "intertext/matrix.h"
#include "intertext/teacher.h"

// Multilingual knowledge distillation: the student is fit so that both
// M^(s) and M^(t) approach the teacher's M(s) under a per-batch mean of
// squared L2 distances.
namespace intertext::trainer {

struct TrainingConfig {
  std::uint32_t epochs = 30;
  std::uint32_t batch_size = 32;
  double learning_rate = 2e-5;
  std::uint64_t warmup_steps = 10000;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  double weight_decay = 0.01;
  std::uint64_t seed = 0;
  std::size_t val_pairs_per_language_pair = 1000;

  void validate() const;
};

// One element of a mini-batch: source text, its translation, and M(source).
struct TrainingExample {
  std::string source;
  std::string target;
  std::vector<float> teacher;
};

// The same example after featurization. Spans must outlive the call.
struct FeaturizedExample {
  std::span<const encoder::Feature> source;
  std::span<const encoder::Feature> target;
  std::span<const float> teacher;
};

// (1/|B|) sum_j [ |T_j - S_j|^2 + |T_j - U_j|^2 ] over rows of the teacher
// (T), student-source (S) and student-target (U) matrices; double
// accumulation. Throws on shape mismatch.
double distill_loss(const Matrix& teacher_src, const Matrix& student_src,
                    const Matrix& student_tgt);

// Gradients of distill_loss composed with encode. Embedding gradients are
// sparse: only rows hit by a feature in the batch are present, listed in
// ascending order.
struct Gradients {
  std::vector<std::uint64_t> embedding_rows;
  std::vector<double> embedding;   // embedding_rows.size() x hidden_dim
  std::vector<double> projection;  // out_dim x hidden_dim
  std::vector<double> bias;        // out_dim
  double loss = 0.0;               // distill_loss at the current parameters
};

Gradients loss_gradients(std::span<const FeaturizedExample> batch,
                         const encoder::StudentModel& model);
Gradients loss_gradients(std::span<const TrainingExample> batch,
                         const encoder::StudentModel& model);

// Linear warmup to learning_rate (lr * (step + 1) / warmup while
// step < warmup), then linear decay reaching 0 at total_steps.
double lr_at(std::uint64_t step, std::uint64_t total_steps,
             const TrainingConfig& config);

// One decoupled-weight-decay Adam update of a dense block; `t` is the
// 1-based step used for bias correction. Moments are stored in float.
void adamw_update(std::span<float> params, std::span<const double> grads,
                  std::span<float> m, std::span<float> v, std::uint64_t t,
                  double lr, const TrainingConfig& config);

// Adam moments for a StudentModel. Embedding rows without a gradient in a
// step keep their parameters and moments unchanged; bias correction uses
// the global step count.
class AdamW {
 public:
  explicit AdamW(const encoder::EncoderConfig& config);

  // Throws intertext::Error naming the block if any gradient is non-finite;
  // nothing is updated in that case.
  void step(encoder::StudentModel& model, const Gradients& grads, double lr,
            const TrainingConfig& config);

  std::uint64_t steps() const { return t_; }

 private:
  std::uint64_t t_ = 0;
  Matrix m_embedding_, v_embedding_;
  std::vector<float> m_projection_, v_projection_;
  std::vector<float> m_bias_, v_bias_;
};

struct EpochRecord {
  std::size_t epoch = 0;  // 0-based
  double train_loss = 0.0;
  std::vector<std::pair<std::string, double>> val_acc;  // direction -> accuracy
  std::string checkpoint_path;

  // Equal-weight mean over directions; 0 when there are none.
  double mean_val_acc() const;
};

using TrainingHistory = std::vector<EpochRecord>;

// Argmax of mean_val_acc; ties resolve to the earliest epoch. Throws on an
// empty history.
std::size_t select_best(std::span<const EpochRecord> history);

// {"epoch", "train_loss", "val_acc": {direction: acc}, "checkpoint_path"}
std::string history_json_line(const EpochRecord& record);

struct TrainOptions {
  // When set, every epoch's model is saved as epoch-NNN.smdl here.
  std::filesystem::path checkpoint_dir;
  std::function<void(const EpochRecord&)> on_epoch;
};

struct TrainResult {
  encoder::StudentModel model;  // best epoch, not necessarily the last
  TrainingHistory history;
  std::size_t best_epoch = 0;
};

// Runs epochs x ceil(N / batch_size) AdamW steps, reshuffling with the seeded
// generator each epoch. Teacher vectors are looked up as
// teacher::source_key(pair.id). After each epoch, validation accuracy is
// computed per language pair (src -> tgt, at most val_pairs_per_language_pair
// pairs each). Without validation pairs the last epoch is returned.
TrainResult train(const encoder::StudentModel& initial,
                  std::span<const corpus::PairRecord> train_pairs,
                  std::span<const corpus::PairRecord> val_pairs,
                  const teacher::EmbeddingStore& teacher,
                  const TrainingConfig& config, const TrainOptions& options = {});

}  // namespace intertext::trainer

#endif  // INTERTEXT_TRAINER_H_
