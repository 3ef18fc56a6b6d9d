#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lcam/types.hpp"

namespace lcam {

// Labeled classification data with a fixed stratified train/test partition.
struct Dataset {
  Matd features;              // m x d
  std::vector<int> labels;    // m entries in [0, classes)
  int classes = 0;
  std::vector<Index> train_idx;
  std::vector<Index> test_idx;

  Index size() const { return features.rows(); }
  Index feature_dim() const { return features.cols(); }
};

// Gaussian clusters at evenly spaced centers on a circle of radius 5,
// `spread` is the per-coordinate standard deviation. Stratified 80/20 split.
Dataset generate_blobs(int classes, int per_class, double spread, std::uint64_t seed);

// Interleaved half-circles: class 0 on the upper unit half-circle at the
// origin, class 1 on the lower half-circle shifted to (1, 0.5), plus
// isotropic Gaussian noise. Stratified 80/20 split.
Dataset generate_two_moons(int n, double noise, std::uint64_t seed);

// Fully-connected network with rectifier hidden layers, all weights and
// biases flattened into one parameter vector. Layer l stores its fan_in x
// fan_out weight matrix column-major, followed by fan_out biases.
struct MlpModel {
  std::vector<int> layer_sizes;
  Vecd params;

  Index parameter_count() const { return params.size(); }
  int input_dim() const { return layer_sizes.front(); }
  int output_dim() const { return layer_sizes.back(); }
};

// Glorot-uniform weights, zero biases, deterministic in seed.
MlpModel init_mlp(const std::vector<int>& layer_sizes, std::uint64_t seed);

// Mean softmax cross-entropy over the batch plus its gradient with respect
// to the flattened parameters.
double forward_loss(const MlpModel& model, const Matd& batch_features,
                    const std::vector<int>& batch_labels, Vecd& grad_out);

// Batch logits, one row per sample.
Matd mlp_logits(const MlpModel& model, const Matd& features);

// Fraction of argmax-misclassified samples over the given index split; logit
// ties resolve to the lowest class index.
double evaluate(const MlpModel& model, const Dataset& dataset,
                const std::vector<Index>& split);

}  // namespace lcam
