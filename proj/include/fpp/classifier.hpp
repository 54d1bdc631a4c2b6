#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "fpp/raster.hpp"

namespace fpp {

inline constexpr int kDefaultPoolSize = 32;

/// Feature proxy: average-pool every channel to pool x pool cells and
/// flatten channel-major (3 x 32 x 32 = 3072 values for RGB).
std::vector<float> extract_features(const TensorF32& t, int pool = kDefaultPoolSize);

/// Row-major design matrix with labels.
struct FeatureSet {
  int dim = 0;
  std::vector<float> data;
  std::vector<int> labels;

  std::size_t size() const noexcept { return labels.size(); }
  bool empty() const noexcept { return labels.empty(); }
  std::span<const float> row(std::size_t i) const noexcept { return {data.data() + i * std::size_t(dim), std::size_t(dim)}; }
  void add(std::span<const float> x, int label);
};

struct SoftmaxModel {
  int classes = 0;
  int dim = 0;
  std::vector<double> weights;  // classes x dim, row-major
  std::vector<double> biases;   // classes

  static SoftmaxModel zeros(int classes, int dim);
  /// Biases zero, weights uniform(-0.01, 0.01) from SplitMix64(seed).
  static SoftmaxModel random(int classes, int dim, std::uint64_t seed);

  bool all_finite() const noexcept;
  friend bool operator==(const SoftmaxModel&, const SoftmaxModel&) = default;
};

std::vector<double> logits(const SoftmaxModel& m, std::span<const float> x);
/// softmax(Wx + b) with max subtraction.
std::vector<double> forward(const SoftmaxModel& m, std::span<const float> x);
/// argmax of the logits; ties go to the lowest class index.
int predict(const SoftmaxModel& m, std::span<const float> x);

struct LossGrad {
  double loss = 0.0;
  std::vector<double> grad_w;
  std::vector<double> grad_b;
};

/// Mean cross-entropy over `batch` rows of `set` and its exact gradient
/// (p - onehot) x^T averaged over the batch.
LossGrad loss_and_grad(const SoftmaxModel& m, const FeatureSet& set, std::span<const std::size_t> batch);
LossGrad loss_and_grad(const SoftmaxModel& m, const FeatureSet& set);

struct AdamConfig {
  double lr0 = 0.003;
  double lr_floor = 0.0001;
  int decay_step = 29;
  double gamma = 0.9;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;

  /// max(lr_floor, lr0 * gamma^floor(t / decay_step))
  double learning_rate(long t) const;
  void validate() const;
};

struct AdamState {
  std::vector<double> m_w, v_w, m_b, v_b;
  explicit AdamState(const SoftmaxModel& m);
};

/// One bias-corrected Adam update at step t >= 1.
void adam_step(SoftmaxModel& m, AdamState& s, const LossGrad& g, const AdamConfig& cfg, long t);

struct TrainConfig {
  AdamConfig adam{};
  int epochs = 30;
  int batch_size = 32;
  long max_iterations = 0;  // 0: no cap
  std::uint64_t seed = 0;
};

struct TrainResult {
  SoftmaxModel model;         // best-on-validation checkpoint (final model when val is empty)
  long iterations = 0;
  int best_epoch = -1;
  double best_val_top1 = 0.0;
  double initial_loss = 0.0;  // full training-set loss before the first step
  double final_loss = 0.0;    // full training-set loss of the last iterate
};

TrainResult train(const FeatureSet& train_set, const FeatureSet& val_set, int classes, const TrainConfig& cfg);

/// 100 * correct / n.
double evaluate(const SoftmaxModel& m, const FeatureSet& set);

/// Writes <dir>/model.json, <dir>/weights.fpp (1 x classes x dim) and
/// <dir>/biases.fpp (1 x 1 x classes). Parameters are stored as float32.
void save_model(const std::filesystem::path& dir, const SoftmaxModel& m, const TrainConfig& cfg,
                const std::vector<std::string>& class_names);
SoftmaxModel load_model(const std::filesystem::path& dir);

}  // namespace fpp
