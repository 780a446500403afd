#include "causelab/generator.hpp"

#include <algorithm>
#include <string>

#include "causelab/error.hpp"

namespace causelab {

std::string_view to_string(Split split) { return split == Split::train ? "train" : "test"; }

Split parse_split(std::string_view text) {
  if (text == "train") return Split::train;
  if (text == "test") return Split::test;
  throw Error(ErrorCode::parse_error, "unknown split '" + std::string(text) + "'");
}

std::size_t Dataset::valid_count() const {
  return static_cast<std::size_t>(
      std::count_if(instances.begin(), instances.end(), [](const Instance& i) { return i.valid(); }));
}

std::vector<Causation> generate_causations(const Params& params, RandomSource& rng) {
  params.validate();
  std::vector<Causation> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < params.num_causations) {
    if (attempts++ >= kMaxCausationAttempts) {
      throw Error(ErrorCode::causation_space_exhausted, "causation space exhausted");
    }
    const int size = rng.uniform_int(1, params.max_cause_events);
    EventList events(static_cast<std::size_t>(size));
    for (auto& e : events) e = rng.uniform_int(0, params.num_event_types - 1);
    std::sort(events.begin(), events.end());
    const bool duplicate = std::any_of(out.begin(), out.end(),
                                       [&](const Causation& c) { return c.events == events; });
    if (duplicate) continue;
    out.push_back({static_cast<CausationId>(out.size()), std::move(events)});
  }
  return out;
}

EventList generate_stream(const Params& params, RandomSource& rng) {
  EventList events(static_cast<std::size_t>(params.instance_length));
  for (auto& e : events) e = rng.uniform_int(0, params.num_event_types - 1);
  return events;
}

Dataset generate_training_set(const Params& params, const std::vector<Causation>& causations,
                              int n_valid, int n_invalid, RandomSource& rng) {
  params.validate();
  if (n_valid < 0 || n_invalid < 0) {
    throw Error(ErrorCode::invalid_argument, "instance counts must be non-negative");
  }
  Dataset ds{params, causations, {}, Split::train};
  ds.instances.reserve(static_cast<std::size_t>(n_valid + n_invalid));

  int have_valid = 0;
  int have_invalid = 0;
  int valid_misses = 0;
  int invalid_misses = 0;
  while (have_valid < n_valid || have_invalid < n_invalid) {
    EventList events = generate_stream(params, rng);
    IdSet ids = label_instance(events, causations, params.max_intervening_events);
    const bool valid = !ids.empty();
    if (valid && have_valid < n_valid) {
      ++have_valid;
      valid_misses = 0;
      ds.instances.push_back({std::move(events), std::move(ids)});
      continue;
    }
    if (!valid && have_invalid < n_invalid) {
      ++have_invalid;
      invalid_misses = 0;
      ds.instances.push_back({std::move(events), std::move(ids)});
      continue;
    }
    if (have_valid < n_valid) ++valid_misses;
    if (have_invalid < n_invalid) ++invalid_misses;
    if (valid_misses > kMaxConsecutiveRejections || invalid_misses > kMaxConsecutiveRejections) {
      const char* wanted = valid_misses > kMaxConsecutiveRejections ? "valid" : "invalid";
      throw Error(ErrorCode::infeasible_parameters,
                  std::string("infeasible parameters: no ") + wanted + " instance in " +
                      std::to_string(kMaxConsecutiveRejections) + " draws");
    }
  }
  rng.shuffle(std::span<Instance>(ds.instances));
  return ds;
}

Dataset generate_test_set(const Params& params, const std::vector<Causation>& causations, int n,
                          RandomSource& rng) {
  params.validate();
  if (n < 0) throw Error(ErrorCode::invalid_argument, "test size must be non-negative");
  Dataset ds{params, causations, {}, Split::test};
  ds.instances.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    EventList events = generate_stream(params, rng);
    IdSet ids = label_instance(events, causations, params.max_intervening_events);
    ds.instances.push_back({std::move(events), std::move(ids)});
  }
  return ds;
}

Experiment generate_experiment(const Params& params, const DatasetSizes& sizes,
                               std::uint64_t seed) {
  RandomSource rng(seed);
  Experiment ex;
  ex.causations = generate_causations(params, rng);
  ex.train = generate_training_set(params, ex.causations, sizes.train_valid, sizes.train_invalid, rng);
  ex.test = generate_test_set(params, ex.causations, sizes.test_size, rng);
  return ex;
}

bool labels_consistent(const Dataset& dataset) {
  return std::all_of(dataset.instances.begin(), dataset.instances.end(), [&](const Instance& inst) {
    return inst.causation_ids ==
           label_instance(inst.events, dataset.causations, dataset.params.max_intervening_events);
  });
}

}  // namespace causelab
