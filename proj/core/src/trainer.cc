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

#include "intertext/trainer.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <unordered_map>

#include "intertext/error.h"
#include "intertext/eval.h"
#include "intertext/random.h"
#include "json.hpp"

namespace intertext::trainer {
namespace {

using encoder::Feature;
using encoder::StudentModel;

// Accumulates text-level output gradients back into the parameter
// gradients for one side (source or target) of an example.
void backprop_text(const StudentModel& model, std::span<const Feature> features,
                   std::span<const float> pooled, const std::vector<double>& grad_out,
                   const std::unordered_map<std::uint64_t, std::size_t>& slots,
                   Gradients& grads) {
  const std::size_t dh = model.config().hidden_dim;
  const std::size_t dt = model.config().out_dim;
  const Matrix& w = model.projection();

  std::vector<double> grad_pooled(dh, 0.0);
  for (std::size_t i = 0; i < dt; ++i) {
    const double g = grad_out[i];
    grads.bias[i] += g;
    double* grad_w = grads.projection.data() + i * dh;
    auto w_row = w.row(i);
    for (std::size_t k = 0; k < dh; ++k) {
      grad_w[k] += g * pooled[k];
      grad_pooled[k] += g * w_row[k];
    }
  }

  double total = 0.0;
  for (const Feature& f : features) total += f.count;
  if (total == 0.0) return;
  for (const Feature& f : features) {
    const double weight = f.count / total;
    double* grad_e = grads.embedding.data() + slots.at(f.bucket) * dh;
    for (std::size_t k = 0; k < dh; ++k) grad_e[k] += weight * grad_pooled[k];
  }
}

void check_finite(std::span<const double> values, const char* block) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(std::string("non-finite gradient in ") + block);
    }
  }
}

struct ValidationGroup {
  eval::Direction direction;
  std::vector<corpus::PairRecord> pairs;
};

std::vector<ValidationGroup> group_validation(std::span<const corpus::PairRecord> val,
                                              std::size_t cap) {
  std::vector<ValidationGroup> groups;
  for (const corpus::PairRecord& p : val) {
    eval::Direction d{p.lang_src, p.lang_tgt};
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const ValidationGroup& g) { return g.direction == d; });
    if (it == groups.end()) {
      groups.push_back({d, {}});
      it = groups.end() - 1;
    }
    if (it->pairs.size() < cap) it->pairs.push_back(p);
  }
  return groups;
}

}  // namespace

void TrainingConfig::validate() const {
  if (epochs < 1) throw Error("training config: epochs must be >= 1");
  if (batch_size < 1) throw Error("training config: batch_size must be >= 1");
  if (!(learning_rate > 0.0)) throw Error("training config: learning_rate must be > 0");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0)) {
    throw Error("training config: Adam betas must lie in [0, 1)");
  }
  if (!(adam_eps > 0.0)) throw Error("training config: adam_eps must be > 0");
  if (!(weight_decay >= 0.0)) throw Error("training config: weight_decay must be >= 0");
}

double distill_loss(const Matrix& teacher_src, const Matrix& student_src,
                    const Matrix& student_tgt) {
  if (teacher_src.rows() != student_src.rows() ||
      teacher_src.rows() != student_tgt.rows() ||
      teacher_src.cols() != student_src.cols() ||
      teacher_src.cols() != student_tgt.cols()) {
    throw Error("distill_loss: shape mismatch");
  }
  if (teacher_src.rows() == 0) throw Error("distill_loss: empty batch");
  double total = 0.0;
  for (std::size_t j = 0; j < teacher_src.rows(); ++j) {
    auto t = teacher_src.row(j);
    auto s = student_src.row(j);
    auto u = student_tgt.row(j);
    for (std::size_t i = 0; i < t.size(); ++i) {
      const double ds = static_cast<double>(t[i]) - s[i];
      const double du = static_cast<double>(t[i]) - u[i];
      total += ds * ds + du * du;
    }
  }
  return total / static_cast<double>(teacher_src.rows());
}

Gradients loss_gradients(std::span<const FeaturizedExample> batch,
                         const StudentModel& model) {
  if (batch.empty()) throw Error("loss_gradients: empty batch");
  const std::size_t dh = model.config().hidden_dim;
  const std::size_t dt = model.config().out_dim;

  Gradients grads;
  for (const FeaturizedExample& ex : batch) {
    if (ex.teacher.size() != dt) {
      throw Error("loss_gradients: teacher vector has " + std::to_string(ex.teacher.size()) +
                  " components, model out_dim is " + std::to_string(dt));
    }
    for (const Feature& f : ex.source) grads.embedding_rows.push_back(f.bucket);
    for (const Feature& f : ex.target) grads.embedding_rows.push_back(f.bucket);
  }
  std::sort(grads.embedding_rows.begin(), grads.embedding_rows.end());
  grads.embedding_rows.erase(
      std::unique(grads.embedding_rows.begin(), grads.embedding_rows.end()),
      grads.embedding_rows.end());
  std::unordered_map<std::uint64_t, std::size_t> slots;
  slots.reserve(grads.embedding_rows.size());
  for (std::size_t i = 0; i < grads.embedding_rows.size(); ++i) {
    slots.emplace(grads.embedding_rows[i], i);
  }
  grads.embedding.assign(grads.embedding_rows.size() * dh, 0.0);
  grads.projection.assign(dt * dh, 0.0);
  grads.bias.assign(dt, 0.0);

  const double scale = 2.0 / static_cast<double>(batch.size());
  double loss = 0.0;
  std::vector<double> grad_out(dt);
  for (const FeaturizedExample& ex : batch) {
    for (auto features : {ex.source, ex.target}) {
      const std::vector<float> pooled = model.pool(features);
      const std::vector<float> out = model.project(pooled);
      for (std::size_t i = 0; i < dt; ++i) {
        const double diff = static_cast<double>(out[i]) - ex.teacher[i];
        loss += diff * diff;
        grad_out[i] = scale * diff;
      }
      backprop_text(model, features, pooled, grad_out, slots, grads);
    }
  }
  grads.loss = loss / static_cast<double>(batch.size());
  return grads;
}

Gradients loss_gradients(std::span<const TrainingExample> batch,
                         const StudentModel& model) {
  std::vector<std::vector<Feature>> features;
  features.reserve(2 * batch.size());
  for (const TrainingExample& ex : batch) {
    features.push_back(encoder::featurize(ex.source, model.config()));
    features.push_back(encoder::featurize(ex.target, model.config()));
  }
  std::vector<FeaturizedExample> featurized;
  featurized.reserve(batch.size());
  for (std::size_t j = 0; j < batch.size(); ++j) {
    featurized.push_back({features[2 * j], features[2 * j + 1], batch[j].teacher});
  }
  return loss_gradients(featurized, model);
}

double lr_at(std::uint64_t step, std::uint64_t total_steps,
             const TrainingConfig& config) {
  if (total_steps == 0) throw Error("lr_at: total_steps must be positive");
  const double peak = config.learning_rate;
  const std::uint64_t warmup = config.warmup_steps;
  if (step < warmup) {
    return peak * static_cast<double>(step + 1) / static_cast<double>(warmup);
  }
  if (step >= total_steps) return 0.0;
  return peak * static_cast<double>(total_steps - step) /
         static_cast<double>(total_steps - warmup);
}

void adamw_update(std::span<float> params, std::span<const double> grads,
                  std::span<float> m, std::span<float> v, std::uint64_t t,
                  double lr, const TrainingConfig& config) {
  const double b1 = config.adam_beta1;
  const double b2 = config.adam_beta2;
  const double correction1 = 1.0 - std::pow(b1, static_cast<double>(t));
  const double correction2 = 1.0 - std::pow(b2, static_cast<double>(t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grads[i];
    const double mi = b1 * m[i] + (1.0 - b1) * g;
    const double vi = b2 * v[i] + (1.0 - b2) * g * g;
    m[i] = static_cast<float>(mi);
    v[i] = static_cast<float>(vi);
    const double m_hat = mi / correction1;
    const double v_hat = vi / correction2;
    const double theta = params[i];
    params[i] = static_cast<float>(
        theta - lr * (m_hat / (std::sqrt(v_hat) + config.adam_eps) +
                      config.weight_decay * theta));
  }
}

AdamW::AdamW(const encoder::EncoderConfig& config)
    : m_embedding_(config.buckets, config.hidden_dim),
      v_embedding_(config.buckets, config.hidden_dim),
      m_projection_(static_cast<std::size_t>(config.out_dim) * config.hidden_dim),
      v_projection_(m_projection_.size()),
      m_bias_(config.out_dim),
      v_bias_(config.out_dim) {}

void AdamW::step(StudentModel& model, const Gradients& grads, double lr,
                 const TrainingConfig& config) {
  const std::size_t dh = model.config().hidden_dim;
  if (grads.projection.size() != m_projection_.size() ||
      grads.bias.size() != m_bias_.size() ||
      grads.embedding.size() != grads.embedding_rows.size() * dh) {
    throw Error("AdamW: gradient shapes do not match the model");
  }
  check_finite(grads.embedding, "embeddings");
  check_finite(grads.projection, "projection");
  check_finite(grads.bias, "bias");

  ++t_;
  for (std::size_t r = 0; r < grads.embedding_rows.size(); ++r) {
    const std::uint64_t row = grads.embedding_rows[r];
    adamw_update(model.embeddings().row(row),
                 std::span<const double>(grads.embedding).subspan(r * dh, dh),
                 m_embedding_.row(row), v_embedding_.row(row), t_, lr, config);
  }
  adamw_update(model.projection().data(), grads.projection, m_projection_,
               v_projection_, t_, lr, config);
  adamw_update(model.bias(), grads.bias, m_bias_, v_bias_, t_, lr, config);
}

double EpochRecord::mean_val_acc() const {
  if (val_acc.empty()) return 0.0;
  double sum = 0.0;
  for (const auto& [direction, acc] : val_acc) sum += acc;
  return sum / static_cast<double>(val_acc.size());
}

std::size_t select_best(std::span<const EpochRecord> history) {
  if (history.empty()) throw Error("select_best: empty history");
  std::size_t best = 0;
  for (std::size_t e = 1; e < history.size(); ++e) {
    if (history[e].mean_val_acc() > history[best].mean_val_acc()) best = e;
  }
  return best;
}

std::string history_json_line(const EpochRecord& record) {
  nlohmann::ordered_json obj;
  obj["epoch"] = record.epoch;
  obj["train_loss"] = record.train_loss;
  obj["val_acc"] = nlohmann::ordered_json::object();
  for (const auto& [direction, acc] : record.val_acc) obj["val_acc"][direction] = acc;
  obj["checkpoint_path"] = record.checkpoint_path;
  return obj.dump();
}

TrainResult train(const StudentModel& initial,
                  std::span<const corpus::PairRecord> train_pairs,
                  std::span<const corpus::PairRecord> val_pairs,
                  const teacher::EmbeddingStore& teacher,
                  const TrainingConfig& config, const TrainOptions& options) {
  config.validate();
  if (train_pairs.empty()) throw Error("train: empty training set");
  if (teacher.dim() != initial.config().out_dim) {
    throw Error("train: teacher dim " + std::to_string(teacher.dim()) +
                " differs from model out_dim " +
                std::to_string(initial.config().out_dim));
  }

  std::vector<std::span<const float>> targets;
  targets.reserve(train_pairs.size());
  std::vector<std::string> missing;
  for (const corpus::PairRecord& p : train_pairs) {
    auto vec = teacher.lookup(teacher::source_key(p.id));
    if (!vec) {
      missing.push_back(teacher::source_key(p.id));
      continue;
    }
    targets.push_back(*vec);
  }
  if (!missing.empty()) {
    std::string list;
    for (std::size_t i = 0; i < missing.size() && i < 20; ++i) {
      list += (i ? ", " : "") + missing[i];
    }
    if (missing.size() > 20) list += ", ... (" + std::to_string(missing.size()) + " total)";
    throw Error("train: missing teacher embeddings: " + list);
  }

  const encoder::EncoderConfig& enc = initial.config();
  std::vector<std::vector<Feature>> src_features, tgt_features;
  src_features.reserve(train_pairs.size());
  tgt_features.reserve(train_pairs.size());
  for (const corpus::PairRecord& p : train_pairs) {
    src_features.push_back(encoder::featurize(p.text_src, enc));
    tgt_features.push_back(encoder::featurize(p.text_tgt, enc));
  }
  const std::vector<ValidationGroup> validation =
      group_validation(val_pairs, config.val_pairs_per_language_pair);

  const std::size_t n = train_pairs.size();
  const std::size_t steps_per_epoch = (n + config.batch_size - 1) / config.batch_size;
  const std::uint64_t total_steps =
      static_cast<std::uint64_t>(config.epochs) * steps_per_epoch;

  if (!options.checkpoint_dir.empty()) {
    std::filesystem::create_directories(options.checkpoint_dir);
  }

  StudentModel model = initial;
  AdamW optimizer(enc);
  Rng rng(config.seed);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;

  TrainResult result{initial, {}, 0};
  std::uint64_t step = 0;
  std::vector<FeaturizedExample> batch;
  for (std::uint32_t epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(std::span<std::size_t>(order));
    double loss_sum = 0.0;
    for (std::size_t begin = 0; begin < n; begin += config.batch_size) {
      const std::size_t end = std::min(n, begin + config.batch_size);
      batch.clear();
      for (std::size_t i = begin; i < end; ++i) {
        const std::size_t row = order[i];
        batch.push_back({src_features[row], tgt_features[row], targets[row]});
      }
      Gradients grads = loss_gradients(batch, model);
      loss_sum += grads.loss;
      optimizer.step(model, grads, lr_at(step, total_steps, config), config);
      ++step;
    }

    EpochRecord record;
    record.epoch = epoch;
    record.train_loss = loss_sum / static_cast<double>(steps_per_epoch);
    for (const ValidationGroup& group : validation) {
      const eval::Direction direction[] = {group.direction};
      eval::EvalReport report =
          eval::evaluate_model(model, group.pairs, direction, "validation");
      record.val_acc.push_back(report.accuracy.front());
    }
    if (!options.checkpoint_dir.empty()) {
      char name[32];
      std::snprintf(name, sizeof name, "epoch-%03u.smdl", epoch);
      const std::filesystem::path path = options.checkpoint_dir / name;
      encoder::save_model(model, path);
      record.checkpoint_path = path.string();
    }

    const bool improved = result.history.empty() ||
                          record.mean_val_acc() > result.history[result.best_epoch].mean_val_acc();
    if (validation.empty() || improved) {
      result.model = model;
      result.best_epoch = epoch;
    }
    if (options.on_epoch) options.on_epoch(record);
    result.history.push_back(std::move(record));
  }
  return result;
}

}  // namespace intertext::trainer
