#pragma once

#include <vector>

#include "causelab/generator.hpp"
#include "causelab/model.hpp"

namespace causelab {

struct LearnedCausation {
  CausationId id = 0;
  EventList causes;  // sorted multiset; empty when unlearnable
  int max_gap = 0;
  int positives_seen = 0;

  bool learnable() const { return positives_seen > 0 && !causes.empty(); }
  bool operator==(const LearnedCausation&) const = default;
};

struct HistogramModel {
  Params params;
  std::vector<LearnedCausation> causations;

  bool operator==(const HistogramModel&) const = default;
};

// Per-event-type minimum count across the positives, i.e. their multiset
// intersection. Result is sorted.
EventList estimate_cause_multiset(const std::vector<EventList>& positives);

// Largest per-instance min_max_gap of `causes` over the positives.
int estimate_intervening_max(const std::vector<EventList>& positives, const EventList& causes);

// Only valid instances contribute; a causation with no positives is kept as
// an unlearnable entry.
HistogramModel train_histogram(const Dataset& train);

IdSet predict_histogram(const HistogramModel& model, std::span<const EventType> events);

}  // namespace causelab
