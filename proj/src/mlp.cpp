#include "causelab/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "causelab/error.hpp"
#include "causelab/random.hpp"

namespace causelab {

void MlpConfig::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::invalid_argument, "invalid mlp config: " + what);
  };
  if (hidden_units < 1) fail("hidden_units must be >= 1");
  if (epochs < 1) fail("epochs must be >= 1");
  if (!(learning_rate > 0.0)) fail("learning_rate must be positive");
  if (!(adam_epsilon > 0.0)) fail("adam_epsilon must be positive");
  if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0)) fail("adam_beta1 must be in [0, 1)");
  if (!(adam_beta2 >= 0.0 && adam_beta2 < 1.0)) fail("adam_beta2 must be in [0, 1)");
  if (!(prediction_threshold > 0.0 && prediction_threshold < 1.0)) {
    fail("prediction_threshold must be in (0, 1)");
  }
}

MlpParameters MlpParameters::zeros_like(const MlpParameters& other) {
  MlpParameters z;
  z.w1 = Matrix(other.w1.rows, other.w1.cols);
  z.b1.assign(other.b1.size(), 0.0);
  z.w2 = Matrix(other.w2.rows, other.w2.cols);
  z.b2.assign(other.b2.size(), 0.0);
  return z;
}

std::vector<std::span<double>> MlpParameters::blocks() {
  return {w1.data, b1, w2.data, b2};
}

std::vector<std::span<const double>> MlpParameters::blocks() const {
  return {w1.data, b1, w2.data, b2};
}

std::vector<double> encode_instance(std::span<const EventType> events, const Params& params) {
  const auto length = static_cast<std::size_t>(params.instance_length);
  if (events.size() != length) {
    throw Error(ErrorCode::dimension_mismatch,
                "instance has " + std::to_string(events.size()) + " events, expected " +
                    std::to_string(length));
  }
  std::vector<double> x(static_cast<std::size_t>(params.num_event_types) * length, 0.0);
  for (std::size_t step = 0; step < length; ++step) {
    const EventType e = events[step];
    if (e < 0 || e >= params.num_event_types) {
      throw Error(ErrorCode::unknown_event_type, "unknown event type " + std::to_string(e));
    }
    x[static_cast<std::size_t>(e) * length + step] = 1.0;
  }
  return x;
}

EventList decode_instance(std::span<const double> encoding, const Params& params) {
  const auto length = static_cast<std::size_t>(params.instance_length);
  if (encoding.size() != static_cast<std::size_t>(params.num_event_types) * length) {
    throw Error(ErrorCode::dimension_mismatch, "encoding size does not match params");
  }
  EventList events(length, -1);
  for (std::size_t i = 0; i < encoding.size(); ++i) {
    if (encoding[i] != 0.0) events[i % length] = static_cast<EventType>(i / length);
  }
  return events;
}

std::vector<double> encode_labels(const IdSet& ids, int num_causations) {
  std::vector<double> y(static_cast<std::size_t>(num_causations), 0.0);
  for (CausationId id : ids) {
    if (id < 0 || id >= num_causations) {
      throw Error(ErrorCode::invalid_argument, "causation id " + std::to_string(id) + " out of range");
    }
    y[static_cast<std::size_t>(id)] = 1.0;
  }
  return y;
}

Batch make_batch(const Dataset& dataset) {
  const Params& p = dataset.params;
  const std::size_t n = dataset.instances.size();
  Batch batch{Matrix(n, static_cast<std::size_t>(p.num_event_types * p.instance_length)),
              Matrix(n, static_cast<std::size_t>(p.num_causations))};
  for (std::size_t i = 0; i < n; ++i) {
    const auto x = encode_instance(dataset.instances[i].events, p);
    const auto y = encode_labels(dataset.instances[i].causation_ids, p.num_causations);
    std::copy(x.begin(), x.end(), batch.inputs.row(i).begin());
    std::copy(y.begin(), y.end(), batch.targets.row(i).begin());
  }
  return batch;
}

MlpModel init_mlp(std::size_t input_dim, std::size_t hidden_units, std::size_t output_dim,
                  std::uint64_t seed) {
  RandomSource rng(seed);
  auto glorot = [&](Matrix& m) {
    const double limit = std::sqrt(6.0 / static_cast<double>(m.rows + m.cols));
    for (double& w : m.data) w = (2.0 * rng.uniform_real() - 1.0) * limit;
  };
  MlpModel model;
  model.weights.w1 = Matrix(input_dim, hidden_units);
  model.weights.b1.assign(hidden_units, 0.0);
  model.weights.w2 = Matrix(hidden_units, output_dim);
  model.weights.b2.assign(output_dim, 0.0);
  glorot(model.weights.w1);
  glorot(model.weights.w2);
  model.adam.first_moment = MlpParameters::zeros_like(model.weights);
  model.adam.second_moment = MlpParameters::zeros_like(model.weights);
  return model;
}

namespace {

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

// BCE of sigmoid(z) against y, computed from the logit for stability.
double bce_from_logit(double z, double y) {
  return std::max(z, 0.0) - z * y + std::log1p(std::exp(-std::abs(z)));
}

// Inputs are one-hot indicators, so rows are stored sparsely.
struct SparseRows {
  std::vector<std::vector<std::pair<std::size_t, double>>> rows;

  explicit SparseRows(const Matrix& m) : rows(m.rows) {
    for (std::size_t r = 0; r < m.rows; ++r) {
      for (std::size_t c = 0; c < m.cols; ++c) {
        if (m(r, c) != 0.0) rows[r].emplace_back(c, m(r, c));
      }
    }
  }
};

void check_shapes(const MlpParameters& w, const Batch& batch) {
  if (batch.inputs.cols != w.w1.rows || batch.targets.cols != w.w2.cols ||
      batch.inputs.rows != batch.targets.rows) {
    throw Error(ErrorCode::dimension_mismatch, "batch shape does not match the network");
  }
}

void hidden_layer(const MlpParameters& w, const std::vector<std::pair<std::size_t, double>>& x,
                  std::span<double> pre) {
  std::copy(w.b1.begin(), w.b1.end(), pre.begin());
  for (const auto& [i, v] : x) {
    const auto wrow = w.w1.row(i);
    for (std::size_t h = 0; h < pre.size(); ++h) pre[h] += v * wrow[h];
  }
}

void output_layer(const MlpParameters& w, std::span<const double> pre, std::span<double> logits) {
  std::copy(w.b2.begin(), w.b2.end(), logits.begin());
  for (std::size_t h = 0; h < pre.size(); ++h) {
    const double a = std::max(pre[h], 0.0);
    if (a == 0.0) continue;
    const auto wrow = w.w2.row(h);
    for (std::size_t o = 0; o < logits.size(); ++o) logits[o] += a * wrow[o];
  }
}

double batch_loss(const MlpParameters& w, const SparseRows& x, const Matrix& targets) {
  const std::size_t hidden = w.w1.cols;
  const std::size_t outputs = w.w2.cols;
  std::vector<double> pre(hidden);
  std::vector<double> logits(outputs);
  double total = 0.0;
  for (std::size_t r = 0; r < x.rows.size(); ++r) {
    hidden_layer(w, x.rows[r], pre);
    output_layer(w, pre, logits);
    for (std::size_t o = 0; o < outputs; ++o) total += bce_from_logit(logits[o], targets(r, o));
  }
  return total / static_cast<double>(x.rows.size() * outputs);
}

// Fills `grads` and returns the loss at `w`.
double backprop(const MlpParameters& w, const SparseRows& x, const Matrix& targets,
                MlpParameters& grads) {
  const std::size_t n = x.rows.size();
  const std::size_t hidden = w.w1.cols;
  const std::size_t outputs = w.w2.cols;
  const double scale = 1.0 / static_cast<double>(n * outputs);

  std::fill(grads.w1.data.begin(), grads.w1.data.end(), 0.0);
  std::fill(grads.b1.begin(), grads.b1.end(), 0.0);
  std::fill(grads.w2.data.begin(), grads.w2.data.end(), 0.0);
  std::fill(grads.b2.begin(), grads.b2.end(), 0.0);

  std::vector<double> pre(hidden);
  std::vector<double> logits(outputs);
  std::vector<double> dlogit(outputs);
  std::vector<double> dpre(hidden);
  double total = 0.0;

  for (std::size_t r = 0; r < n; ++r) {
    hidden_layer(w, x.rows[r], pre);
    output_layer(w, pre, logits);
    for (std::size_t o = 0; o < outputs; ++o) {
      const double y = targets(r, o);
      total += bce_from_logit(logits[o], y);
      dlogit[o] = (sigmoid(logits[o]) - y) * scale;
      grads.b2[o] += dlogit[o];
    }
    for (std::size_t h = 0; h < hidden; ++h) {
      if (pre[h] <= 0.0) {
        dpre[h] = 0.0;
        continue;
      }
      const auto wrow = w.w2.row(h);
      auto grow = grads.w2.row(h);
      double acc = 0.0;
      for (std::size_t o = 0; o < outputs; ++o) {
        grow[o] += pre[h] * dlogit[o];
        acc += wrow[o] * dlogit[o];
      }
      dpre[h] = acc;
      grads.b1[h] += acc;
    }
    for (const auto& [i, v] : x.rows[r]) {
      auto grow = grads.w1.row(i);
      for (std::size_t h = 0; h < hidden; ++h) grow[h] += v * dpre[h];
    }
  }
  return total * scale;
}

}  // namespace

std::vector<double> forward(const MlpParameters& weights, std::span<const double> input) {
  if (input.size() != weights.w1.rows) {
    throw Error(ErrorCode::dimension_mismatch, "input size does not match the network");
  }
  Matrix single(1, input.size());
  std::copy(input.begin(), input.end(), single.data.begin());
  const SparseRows x(single);
  std::vector<double> pre(weights.w1.cols);
  std::vector<double> out(weights.w2.cols);
  hidden_layer(weights, x.rows[0], pre);
  output_layer(weights, pre, out);
  for (double& v : out) v = sigmoid(v);
  return out;
}

double loss(const MlpParameters& weights, const Batch& batch) {
  check_shapes(weights, batch);
  if (batch.inputs.rows == 0) return 0.0;
  return batch_loss(weights, SparseRows(batch.inputs), batch.targets);
}

MlpParameters gradients(const MlpParameters& weights, const Batch& batch) {
  check_shapes(weights, batch);
  MlpParameters grads = MlpParameters::zeros_like(weights);
  if (batch.inputs.rows > 0) backprop(weights, SparseRows(batch.inputs), batch.targets, grads);
  return grads;
}

void adam_update(MlpModel& model, const MlpParameters& grads, const MlpConfig& config) {
  auto& adam = model.adam;
  ++adam.step;
  const double t = static_cast<double>(adam.step);
  const double correction1 = 1.0 - std::pow(config.adam_beta1, t);
  const double correction2 = 1.0 - std::pow(config.adam_beta2, t);

  auto params = model.weights.blocks();
  auto m = adam.first_moment.blocks();
  auto v = adam.second_moment.blocks();
  const auto g = grads.blocks();
  for (std::size_t b = 0; b < params.size(); ++b) {
    for (std::size_t i = 0; i < params[b].size(); ++i) {
      const double gi = g[b][i];
      m[b][i] = config.adam_beta1 * m[b][i] + (1.0 - config.adam_beta1) * gi;
      v[b][i] = config.adam_beta2 * v[b][i] + (1.0 - config.adam_beta2) * gi * gi;
      const double m_hat = m[b][i] / correction1;
      const double v_hat = v[b][i] / correction2;
      params[b][i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.adam_epsilon);
    }
  }
}

MlpModel train_mlp(const Batch& batch, const MlpConfig& config) {
  config.validate();
  if (batch.inputs.rows == 0) throw Error(ErrorCode::invalid_argument, "empty training set");
  if (batch.inputs.rows != batch.targets.rows) {
    throw Error(ErrorCode::dimension_mismatch, "inputs and targets differ in row count");
  }

  MlpModel model = init_mlp(batch.inputs.cols, static_cast<std::size_t>(config.hidden_units),
                            batch.targets.cols, config.seed);
  const SparseRows x(batch.inputs);
  MlpParameters grads = MlpParameters::zeros_like(model.weights);
  model.loss_trace.reserve(static_cast<std::size_t>(config.epochs) + 1);

  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const double value = backprop(model.weights, x, batch.targets, grads);
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::training_diverged, "training diverged at epoch " + std::to_string(epoch));
    }
    model.loss_trace.push_back(value);
    adam_update(model, grads, config);
  }
  const double final_loss = batch_loss(model.weights, x, batch.targets);
  if (!std::isfinite(final_loss)) {
    throw Error(ErrorCode::training_diverged,
                "training diverged at epoch " + std::to_string(config.epochs));
  }
  model.loss_trace.push_back(final_loss);
  return model;
}

MlpModel train_mlp(const Dataset& train, const MlpConfig& config) {
  return train_mlp(make_batch(train), config);
}

IdSet threshold_outputs(std::span<const double> outputs, double threshold) {
  IdSet ids;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (outputs[i] >= threshold) ids.insert(static_cast<CausationId>(i));
  }
  return ids;
}

IdSet predict_mlp(const MlpModel& model, std::span<const EventType> events,
                  const MlpConfig& config, const Params& params) {
  if (model.output_dim() != static_cast<std::size_t>(params.num_causations)) {
    throw Error(ErrorCode::dimension_mismatch, "model outputs do not match num_causations");
  }
  return threshold_outputs(forward(model.weights, encode_instance(events, params)),
                           config.prediction_threshold);
}

double gradient_check(const MlpModel& model, const Batch& batch, double step) {
  const MlpParameters analytic = gradients(model.weights, batch);
  MlpParameters probe = model.weights;
  auto blocks = probe.blocks();
  const auto grads = analytic.blocks();

  double worst = 0.0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    for (std::size_t i = 0; i < blocks[b].size(); ++i) {
      const double saved = blocks[b][i];
      blocks[b][i] = saved + step;
      const double up = loss(probe, batch);
      blocks[b][i] = saved - step;
      const double down = loss(probe, batch);
      blocks[b][i] = saved;
      const double numeric = (up - down) / (2.0 * step);
      const double a = grads[b][i];
      const double denom = std::max({std::abs(a), std::abs(numeric), 1e-12});
      worst = std::max(worst, std::abs(a - numeric) / denom);
    }
  }
  return worst;
}

}  // namespace causelab
