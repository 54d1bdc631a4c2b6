#include "fpp/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "fpp/error.hpp"
#include "fpp/kernels.hpp"
#include "fpp/rng.hpp"
#include "fpp/tensor_io.hpp"
#include "json.hpp"

namespace fpp {

namespace {

std::pair<int, int> pool_bounds(int i, int len, int pool) {
  const int lo = static_cast<int>(std::int64_t(i) * len / pool);
  int hi = static_cast<int>(std::int64_t(i + 1) * len / pool);
  if (hi <= lo) hi = std::min(lo + 1, len);
  return {std::min(lo, len - 1), hi};
}

}  // namespace

std::vector<float> extract_features(const TensorF32& t, int pool) {
  if (pool < 1) throw Error(Errc::InvalidParams, "pool size must be >= 1");
  std::vector<float> out(std::size_t(t.channels()) * std::size_t(pool) * std::size_t(pool));
  std::size_t k = 0;
  for (int c = 0; c < t.channels(); ++c) {
    for (int i = 0; i < pool; ++i) {
      const auto [y0, y1] = pool_bounds(i, t.height(), pool);
      for (int j = 0; j < pool; ++j) {
        const auto [x0, x1] = pool_bounds(j, t.width(), pool);
        double acc = 0.0;
        for (int y = y0; y < y1; ++y)
          for (int x = x0; x < x1; ++x) acc += t.at(c, y, x);
        out[k++] = static_cast<float>(acc / (double(y1 - y0) * double(x1 - x0)));
      }
    }
  }
  return out;
}

void FeatureSet::add(std::span<const float> x, int label) {
  if (empty() && data.empty()) dim = static_cast<int>(x.size());
  if (static_cast<int>(x.size()) != dim) throw Error(Errc::DimensionMismatch, "feature dimension changed");
  data.insert(data.end(), x.begin(), x.end());
  labels.push_back(label);
}

SoftmaxModel SoftmaxModel::zeros(int classes, int dim) {
  if (classes < 1 || dim < 1) throw Error(Errc::InvalidParams, "model needs classes >= 1 and dim >= 1");
  return {classes, dim, std::vector<double>(std::size_t(classes) * std::size_t(dim), 0.0),
          std::vector<double>(std::size_t(classes), 0.0)};
}

SoftmaxModel SoftmaxModel::random(int classes, int dim, std::uint64_t seed) {
  auto m = zeros(classes, dim);
  SplitMix64 rng(seed);
  for (auto& w : m.weights) w = rng.uniform(-0.01, 0.01);
  return m;
}

bool SoftmaxModel::all_finite() const noexcept {
  return std::all_of(weights.begin(), weights.end(), [](double v) { return std::isfinite(v); }) &&
         std::all_of(biases.begin(), biases.end(), [](double v) { return std::isfinite(v); });
}

std::vector<double> logits(const SoftmaxModel& m, std::span<const float> x) {
  if (static_cast<int>(x.size()) != m.dim)
    throw Error(Errc::DimensionMismatch, "feature dim " + std::to_string(x.size()) + " vs model " + std::to_string(m.dim));
  std::vector<double> z(std::size_t(m.classes));
  for (int k = 0; k < m.classes; ++k) {
    const double* w = m.weights.data() + std::size_t(k) * std::size_t(m.dim);
    double acc = m.biases[std::size_t(k)];
    for (int d = 0; d < m.dim; ++d) acc += w[d] * static_cast<double>(x[std::size_t(d)]);
    z[std::size_t(k)] = acc;
  }
  return z;
}

namespace {

// In-place softmax; returns log-sum-exp of the input.
double softmax_inplace(std::vector<double>& z) {
  const double mx = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (auto& v : z) sum += (v = std::exp(v - mx));
  for (auto& v : z) v /= sum;
  return mx + std::log(sum);
}

}  // namespace

std::vector<double> forward(const SoftmaxModel& m, std::span<const float> x) {
  auto z = logits(m, x);
  softmax_inplace(z);
  return z;
}

int predict(const SoftmaxModel& m, std::span<const float> x) {
  const auto z = logits(m, x);
  return static_cast<int>(std::max_element(z.begin(), z.end()) - z.begin());  // first maximum
}

LossGrad loss_and_grad(const SoftmaxModel& m, const FeatureSet& set, std::span<const std::size_t> batch) {
  if (batch.empty()) throw Error(Errc::EmptyBatch, "loss_and_grad on empty batch");
  if (set.dim != m.dim) throw Error(Errc::DimensionMismatch, "feature set dim does not match model");
  const int n = static_cast<int>(batch.size());
  const std::size_t K = std::size_t(m.classes), D = std::size_t(m.dim);

  std::vector<float> x(std::size_t(n) * D);
  std::vector<int> y(static_cast<std::size_t>(n));
  std::vector<double> probs(std::size_t(n) * K);
  std::vector<double> sample_loss(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const auto r = set.row(batch[std::size_t(i)]);
    std::copy(r.begin(), r.end(), x.begin() + std::ptrdiff_t(std::size_t(i) * D));
    y[std::size_t(i)] = set.labels[batch[std::size_t(i)]];
    if (y[std::size_t(i)] < 0 || y[std::size_t(i)] >= m.classes) throw Error(Errc::DimensionMismatch, "label out of range");
  }
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    auto z = logits(m, std::span<const float>(x.data() + std::size_t(i) * D, D));
    const double zy = z[std::size_t(y[std::size_t(i)])];
    const double lse = softmax_inplace(z);
    sample_loss[std::size_t(i)] = lse - zy;
    std::copy(z.begin(), z.end(), probs.begin() + std::ptrdiff_t(std::size_t(i) * K));
  }

  LossGrad g;
  g.loss = std::accumulate(sample_loss.begin(), sample_loss.end(), 0.0) / n;
  g.grad_w.assign(K * D, 0.0);
  g.grad_b.assign(K, 0.0);
  kernels::omp::softmax_grad({x.data(), y.data(), probs.data(), n, m.dim, m.classes, g.grad_w.data(), g.grad_b.data()});
  return g;
}

LossGrad loss_and_grad(const SoftmaxModel& m, const FeatureSet& set) {
  std::vector<std::size_t> all(set.size());
  std::iota(all.begin(), all.end(), std::size_t(0));
  return loss_and_grad(m, set, all);
}

double AdamConfig::learning_rate(long t) const {
  return std::max(lr_floor, lr0 * std::pow(gamma, static_cast<double>(t / decay_step)));
}

void AdamConfig::validate() const {
  if (!(lr0 > 0) || !(lr_floor > 0) || lr_floor > lr0) throw Error(Errc::InvalidParam, "need 0 < lr_floor <= lr0");
  if (decay_step < 1) throw Error(Errc::InvalidParam, "decay_step must be >= 1");
  if (!(gamma > 0 && gamma < 1)) throw Error(Errc::InvalidParam, "gamma must be in (0,1)");
  if (!(beta1 >= 0 && beta1 < 1) || !(beta2 >= 0 && beta2 < 1) || !(eps > 0))
    throw Error(Errc::InvalidParam, "invalid Adam moments/eps");
}

AdamState::AdamState(const SoftmaxModel& m)
    : m_w(m.weights.size(), 0.0), v_w(m.weights.size(), 0.0), m_b(m.biases.size(), 0.0), v_b(m.biases.size(), 0.0) {}

void adam_step(SoftmaxModel& m, AdamState& s, const LossGrad& g, const AdamConfig& cfg, long t) {
  if (t < 1) throw Error(Errc::InvalidParams, "adam step index must be >= 1");
  const double lr = cfg.learning_rate(t);
  const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t));
  const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t));
  auto update = [&](std::vector<double>& p, std::vector<double>& mm, std::vector<double>& vv,
                    const std::vector<double>& grad) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      mm[i] = cfg.beta1 * mm[i] + (1.0 - cfg.beta1) * grad[i];
      vv[i] = cfg.beta2 * vv[i] + (1.0 - cfg.beta2) * grad[i] * grad[i];
      p[i] -= lr * (mm[i] / c1) / (std::sqrt(vv[i] / c2) + cfg.eps);
    }
  };
  update(m.weights, s.m_w, s.v_w, g.grad_w);
  update(m.biases, s.m_b, s.v_b, g.grad_b);
}

double evaluate(const SoftmaxModel& m, const FeatureSet& set) {
  if (set.empty()) throw Error(Errc::EmptySplit, "evaluate on empty split");
  std::size_t correct = 0;
  for (std::size_t i = 0; i < set.size(); ++i) correct += predict(m, set.row(i)) == set.labels[i];
  return 100.0 * static_cast<double>(correct) / static_cast<double>(set.size());
}

TrainResult train(const FeatureSet& train_set, const FeatureSet& val_set, int classes, const TrainConfig& cfg) {
  if (train_set.empty()) throw Error(Errc::EmptySplit, "training split is empty");
  if (cfg.epochs < 1 || cfg.batch_size < 1) throw Error(Errc::InvalidParam, "epochs and batch size must be >= 1");
  cfg.adam.validate();

  TrainResult res;
  SoftmaxModel model = SoftmaxModel::random(classes, train_set.dim, cfg.seed);
  AdamState state(model);
  SplitMix64 order_rng(cfg.seed ^ 0x5EEDBA7C4E5ULL);
  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), std::size_t(0));

  res.initial_loss = loss_and_grad(model, train_set).loss;
  res.model = model;
  long t = 0;
  bool capped = false;
  for (int epoch = 0; epoch < cfg.epochs && !capped; ++epoch) {
    shuffle(order, order_rng);
    for (std::size_t start = 0; start < order.size(); start += std::size_t(cfg.batch_size)) {
      const std::size_t end = std::min(order.size(), start + std::size_t(cfg.batch_size));
      const auto g = loss_and_grad(model, train_set, std::span(order).subspan(start, end - start));
      adam_step(model, state, g, cfg.adam, ++t);
      if (cfg.max_iterations > 0 && t >= cfg.max_iterations) {
        capped = true;
        break;
      }
    }
    if (!val_set.empty()) {
      const double acc = evaluate(model, val_set);
      if (res.best_epoch < 0 || acc > res.best_val_top1) {
        res.best_val_top1 = acc;
        res.best_epoch = epoch;
        res.model = model;
      }
    }
  }
  if (val_set.empty()) res.model = model;
  res.iterations = t;
  res.final_loss = loss_and_grad(model, train_set).loss;
  return res;
}

void save_model(const std::filesystem::path& dir, const SoftmaxModel& m, const TrainConfig& cfg,
                const std::vector<std::string>& class_names) {
  std::filesystem::create_directories(dir);
  std::vector<float> w(m.weights.begin(), m.weights.end()), b(m.biases.begin(), m.biases.end());
  save_tensor(dir / "weights.fpp", TensorF32(1, m.classes, m.dim, std::move(w)));
  save_tensor(dir / "biases.fpp", TensorF32(1, 1, m.classes, std::move(b)));
  nlohmann::json j{{"format", "fpp-model"},
                   {"version", 1},
                   {"classes", m.classes},
                   {"dim", m.dim},
                   {"class_names", class_names},
                   {"seed", cfg.seed},
                   {"epochs", cfg.epochs},
                   {"batch_size", cfg.batch_size},
                   {"adam",
                    {{"lr0", cfg.adam.lr0},
                     {"lr_floor", cfg.adam.lr_floor},
                     {"decay_step", cfg.adam.decay_step},
                     {"gamma", cfg.adam.gamma},
                     {"beta1", cfg.adam.beta1},
                     {"beta2", cfg.adam.beta2},
                     {"eps", cfg.adam.eps}}}};
  const std::string s = j.dump(2) + "\n";
  std::ofstream(dir / "model.json", std::ios::binary) << s;
}

SoftmaxModel load_model(const std::filesystem::path& dir) {
  const auto w = load_tensor(dir / "weights.fpp");
  const auto b = load_tensor(dir / "biases.fpp");
  if (w.channels() != 1 || b.channels() != 1 || b.height() != 1 || b.width() != w.height())
    throw Error(Errc::DimensionMismatch, "model tensors have inconsistent shapes");
  SoftmaxModel m = SoftmaxModel::zeros(w.height(), w.width());
  std::copy(w.data().begin(), w.data().end(), m.weights.begin());
  std::copy(b.data().begin(), b.data().end(), m.biases.begin());
  return m;
}

}  // namespace fpp
