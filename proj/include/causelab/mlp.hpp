#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "causelab/generator.hpp"
#include "causelab/model.hpp"

namespace causelab {

struct MlpConfig {
  int hidden_units = 128;
  int epochs = 500;
  double learning_rate = 0.001;
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_epsilon = 1e-8;
  double prediction_threshold = 0.5;
  std::uint64_t seed = 0;

  void validate() const;
};

// Dense row-major matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<double> row(std::size_t r) { return {data.data() + r * cols, cols}; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }

  bool operator==(const Matrix&) const = default;
};

// Parameters of the network in a fixed order: w1, b1, w2, b2. Adam moments
// and gradients share this shape.
struct MlpParameters {
  Matrix w1;  // input_dim x hidden
  std::vector<double> b1;
  Matrix w2;  // hidden x outputs
  std::vector<double> b2;

  static MlpParameters zeros_like(const MlpParameters& other);
  std::size_t size() const { return w1.data.size() + b1.size() + w2.data.size() + b2.size(); }

  // Flat views in parameter order, for finite differencing and optimizers.
  std::vector<std::span<double>> blocks();
  std::vector<std::span<const double>> blocks() const;

  bool operator==(const MlpParameters&) const = default;
};

struct AdamState {
  MlpParameters first_moment;
  MlpParameters second_moment;
  long step = 0;

  bool operator==(const AdamState&) const = default;
};

struct MlpModel {
  MlpParameters weights;
  AdamState adam;
  std::vector<double> loss_trace;  // mean BCE before each epoch's update

  std::size_t input_dim() const { return weights.w1.rows; }
  std::size_t hidden_units() const { return weights.w1.cols; }
  std::size_t output_dim() const { return weights.w2.cols; }
};

struct Batch {
  Matrix inputs;
  Matrix targets;
};

// One indicator per (event type, step): index event_type * instance_length + step.
std::vector<double> encode_instance(std::span<const EventType> events, const Params& params);
EventList decode_instance(std::span<const double> encoding, const Params& params);

std::vector<double> encode_labels(const IdSet& ids, int num_causations);

Batch make_batch(const Dataset& dataset);

// Glorot-uniform weights, zero biases.
MlpModel init_mlp(std::size_t input_dim, std::size_t hidden_units, std::size_t output_dim,
                  std::uint64_t seed);

// Sigmoid outputs for one encoded input.
std::vector<double> forward(const MlpParameters& weights, std::span<const double> input);

// Mean binary cross-entropy over every output of every row.
double loss(const MlpParameters& weights, const Batch& batch);

// Analytic gradient of `loss` by backpropagation.
MlpParameters gradients(const MlpParameters& weights, const Batch& batch);

void adam_update(MlpModel& model, const MlpParameters& grads, const MlpConfig& config);

// Full-batch training for config.epochs epochs.
MlpModel train_mlp(const Batch& batch, const MlpConfig& config);
MlpModel train_mlp(const Dataset& train, const MlpConfig& config);

IdSet threshold_outputs(std::span<const double> outputs, double threshold);

IdSet predict_mlp(const MlpModel& model, std::span<const EventType> events,
                  const MlpConfig& config, const Params& params);

// Largest |analytic - numeric| / max(|analytic|, |numeric|, 1e-12) over all
// parameters, using central differences with the given step.
double gradient_check(const MlpModel& model, const Batch& batch, double step = 1e-5);

}  // namespace causelab
