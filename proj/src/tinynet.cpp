#include "lcam/tinynet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lcam/error.hpp"
#include "lcam/rng.hpp"

namespace lcam {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Shuffles indices per class and assigns the first `train_fraction` of each
// class to the training split.
void stratified_split(Dataset& ds, double train_fraction, Rng& rng) {
  std::vector<std::vector<Index>> by_class(ds.classes);
  for (Index i = 0; i < ds.size(); ++i) by_class[ds.labels[i]].push_back(i);
  ds.train_idx.clear();
  ds.test_idx.clear();
  for (auto& idx : by_class) {
    rng.shuffle(idx);
    const auto cut = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(idx.size())));
    for (std::size_t k = 0; k < idx.size(); ++k) {
      (k < cut ? ds.train_idx : ds.test_idx).push_back(idx[k]);
    }
  }
  std::sort(ds.train_idx.begin(), ds.train_idx.end());
  std::sort(ds.test_idx.begin(), ds.test_idx.end());
}

}  // namespace

Dataset generate_blobs(int classes, int per_class, double spread, std::uint64_t seed) {
  if (classes < 2) throw ConfigError("generate_blobs needs classes >= 2");
  if (per_class < 1) throw ConfigError("generate_blobs needs per_class >= 1");
  if (!(spread >= 0.0)) throw ConfigError("spread must be nonnegative");

  const Index m = static_cast<Index>(classes) * per_class;
  Dataset ds;
  ds.classes = classes;
  ds.features.resize(m, 2);
  ds.labels.resize(m);

  Rng rng(mix_seed(seed, 0xB10B5));
  constexpr double radius = 5.0;
  Index row = 0;
  for (int c = 0; c < classes; ++c) {
    const double angle = 2.0 * kPi * c / classes;
    const double cx = radius * std::cos(angle);
    const double cy = radius * std::sin(angle);
    for (int k = 0; k < per_class; ++k, ++row) {
      ds.features(row, 0) = cx + spread * rng.normal();
      ds.features(row, 1) = cy + spread * rng.normal();
      ds.labels[row] = c;
    }
  }
  stratified_split(ds, 0.8, rng);
  return ds;
}

Dataset generate_two_moons(int n, double noise, std::uint64_t seed) {
  if (n < 10) throw ConfigError("generate_two_moons needs n >= 10");
  if (!(noise >= 0.0)) throw ConfigError("noise must be nonnegative");

  Dataset ds;
  ds.classes = 2;
  ds.features.resize(n, 2);
  ds.labels.resize(n);

  Rng rng(mix_seed(seed, 0x300175));
  const int n0 = (n + 1) / 2;
  for (Index i = 0; i < n; ++i) {
    const double t = kPi * rng.uniform();
    double x, y;
    if (i < n0) {
      x = std::cos(t);
      y = std::sin(t);
      ds.labels[i] = 0;
    } else {
      x = 1.0 - std::cos(t);
      y = 0.5 - std::sin(t);
      ds.labels[i] = 1;
    }
    ds.features(i, 0) = x + noise * rng.normal();
    ds.features(i, 1) = y + noise * rng.normal();
  }
  stratified_split(ds, 0.8, rng);
  return ds;
}

MlpModel init_mlp(const std::vector<int>& layer_sizes, std::uint64_t seed) {
  if (layer_sizes.size() < 2) throw ConfigError("init_mlp needs at least two layers");
  for (int s : layer_sizes) {
    if (s < 1) throw ConfigError("layer sizes must be positive");
  }

  Index total = 0;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    total += static_cast<Index>(layer_sizes[l]) * layer_sizes[l + 1] + layer_sizes[l + 1];
  }

  MlpModel model;
  model.layer_sizes = layer_sizes;
  model.params = Vecd::Zero(total);

  Rng rng(mix_seed(seed, 0x1417));
  Index off = 0;
  for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
    const Index fan_in = layer_sizes[l];
    const Index fan_out = layer_sizes[l + 1];
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + fan_out));
    for (Index k = 0; k < fan_in * fan_out; ++k) {
      model.params[off + k] = rng.uniform(-limit, limit);
    }
    off += fan_in * fan_out + fan_out;  // biases stay zero
  }
  return model;
}

namespace {

struct LayerView {
  Eigen::Map<const Matd> w;
  Eigen::Map<const Vecd> b;
};

LayerView layer_view(const MlpModel& m, std::size_t l, Index offset) {
  const Index fan_in = m.layer_sizes[l];
  const Index fan_out = m.layer_sizes[l + 1];
  return {Eigen::Map<const Matd>(m.params.data() + offset, fan_in, fan_out),
          Eigen::Map<const Vecd>(m.params.data() + offset + fan_in * fan_out, fan_out)};
}

}  // namespace

Matd mlp_logits(const MlpModel& model, const Matd& features) {
  if (features.cols() != model.input_dim()) {
    throw DimensionError("feature width does not match the input layer");
  }
  Matd h = features;
  Index off = 0;
  const std::size_t layers = model.layer_sizes.size() - 1;
  for (std::size_t l = 0; l < layers; ++l) {
    const auto [w, b] = layer_view(model, l, off);
    Matd z = (h * w).rowwise() + b.transpose();
    h = (l + 1 < layers) ? z.cwiseMax(0.0) : std::move(z);
    off += w.size() + b.size();
  }
  return h;
}

double forward_loss(const MlpModel& model, const Matd& batch_features,
                    const std::vector<int>& batch_labels, Vecd& grad_out) {
  const Index m = batch_features.rows();
  if (m == 0) throw DataError("forward_loss needs a non-empty batch");
  if (batch_features.cols() != model.input_dim()) {
    throw DimensionError("feature width does not match the input layer");
  }
  if (static_cast<Index>(batch_labels.size()) != m) {
    throw DimensionError("batch label count does not match batch size");
  }
  const int classes = model.output_dim();
  for (Index i = 0; i < m; ++i) {
    if (batch_labels[i] < 0 || batch_labels[i] >= classes) {
      throw DataError("label " + std::to_string(batch_labels[i]) + " out of range at batch row " +
                      std::to_string(i));
    }
  }

  const std::size_t layers = model.layer_sizes.size() - 1;
  std::vector<Matd> activations(layers + 1);  // activations[0] is the input
  std::vector<Matd> preacts(layers);
  activations[0] = batch_features;
  Index off = 0;
  std::vector<Index> offsets(layers);
  for (std::size_t l = 0; l < layers; ++l) {
    offsets[l] = off;
    const auto [w, b] = layer_view(model, l, off);
    preacts[l] = (activations[l] * w).rowwise() + b.transpose();
    activations[l + 1] = (l + 1 < layers) ? preacts[l].cwiseMax(0.0) : preacts[l];
    off += w.size() + b.size();
  }

  // Mean cross-entropy via log-sum-exp; delta reuses the softmax probabilities.
  const Matd& logits = activations[layers];
  Matd delta(m, classes);
  double loss = 0.0;
  for (Index i = 0; i < m; ++i) {
    const double zmax = logits.row(i).maxCoeff();
    double sum = 0.0;
    for (Index c = 0; c < classes; ++c) sum += std::exp(logits(i, c) - zmax);
    const double lse = zmax + std::log(sum);
    loss += lse - logits(i, batch_labels[i]);
    for (Index c = 0; c < classes; ++c) {
      delta(i, c) = std::exp(logits(i, c) - lse);
    }
    delta(i, batch_labels[i]) -= 1.0;
  }
  loss /= static_cast<double>(m);
  delta /= static_cast<double>(m);

  grad_out.setZero(model.parameter_count());
  for (std::size_t l = layers; l-- > 0;) {
    const auto [w, b] = layer_view(model, l, offsets[l]);
    Eigen::Map<Matd> dw(grad_out.data() + offsets[l], w.rows(), w.cols());
    Eigen::Map<Vecd> db(grad_out.data() + offsets[l] + w.size(), b.size());
    dw = activations[l].transpose() * delta;
    db = delta.colwise().sum();
    if (l > 0) {
      delta = (delta * w.transpose()).cwiseProduct(
          (preacts[l - 1].array() > 0.0).cast<double>().matrix());
    }
  }
  return loss;
}

double evaluate(const MlpModel& model, const Dataset& dataset,
                const std::vector<Index>& split) {
  if (split.empty()) throw DataError("evaluate needs a non-empty split");
  Matd x(split.size(), dataset.feature_dim());
  for (std::size_t k = 0; k < split.size(); ++k) x.row(k) = dataset.features.row(split[k]);
  const Matd logits = mlp_logits(model, x);

  Index wrong = 0;
  for (std::size_t k = 0; k < split.size(); ++k) {
    Index best = 0;
    for (Index c = 1; c < logits.cols(); ++c) {
      if (logits(static_cast<Index>(k), c) > logits(static_cast<Index>(k), best)) best = c;
    }
    if (best != dataset.labels[split[k]]) ++wrong;
  }
  return static_cast<double>(wrong) / static_cast<double>(split.size());
}

}  // namespace lcam
