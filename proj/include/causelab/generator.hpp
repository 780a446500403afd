#pragma once

#include <string_view>
#include <vector>

#include "causelab/model.hpp"
#include "causelab/random.hpp"

namespace causelab {

enum class Split { train, test };

std::string_view to_string(Split split);
Split parse_split(std::string_view text);

struct Dataset {
  Params params;
  std::vector<Causation> causations;
  std::vector<Instance> instances;
  Split split = Split::train;

  std::size_t valid_count() const;
};

inline constexpr int kMaxCausationAttempts = 10'000;
inline constexpr int kMaxConsecutiveRejections = 100'000;

// Distinct causations with ids 0..num_causations-1. Sizes are uniform over
// [1, max_cause_events], events uniform with replacement.
std::vector<Causation> generate_causations(const Params& params, RandomSource& rng);

EventList generate_stream(const Params& params, RandomSource& rng);

// Rejection-samples exactly n_valid valid and n_invalid invalid instances,
// then shuffles them.
Dataset generate_training_set(const Params& params, const std::vector<Causation>& causations,
                              int n_valid, int n_invalid, RandomSource& rng);

// n unconditioned random streams with their ground-truth labels.
Dataset generate_test_set(const Params& params, const std::vector<Causation>& causations, int n,
                          RandomSource& rng);

struct DatasetSizes {
  int train_valid = 50;
  int train_invalid = 50;
  int test_size = 50;
};

// Everything one generate/train/test cycle consumes, drawn in a fixed order
// from a single seed: causations, then the training set, then the test set.
struct Experiment {
  std::vector<Causation> causations;
  Dataset train;
  Dataset test;
};

Experiment generate_experiment(const Params& params, const DatasetSizes& sizes,
                               std::uint64_t seed);

// True iff every instance's stored labels match a fresh labeling.
bool labels_consistent(const Dataset& dataset);

}  // namespace causelab
