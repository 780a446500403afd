#pragma once

#include <optional>
#include <set>
#include <span>
#include <vector>

namespace causelab {

using EventType = int;
using EventList = std::vector<EventType>;
using CausationId = int;
using IdSet = std::set<CausationId>;

// Generation parameters. `instance_length` is not one of the four study
// parameters; use `Params::make` to get the default length for a combo.
struct Params {
  int num_event_types = 10;
  int num_causations = 2;
  int max_cause_events = 2;
  int max_intervening_events = 2;
  int instance_length = 5;

  // Room for one maximal-gap embedding plus two noise events, at least 5.
  static int default_instance_length(int max_cause_events, int max_intervening_events);

  static Params make(int num_event_types, int num_causations, int max_cause_events,
                     int max_intervening_events,
                     std::optional<int> instance_length = std::nullopt);

  // Throws Error(invalid_argument) when an invariant does not hold.
  void validate() const;

  bool operator==(const Params&) const = default;
};

// A conjunction of cause events. `events` is a multiset kept in sorted order.
struct Causation {
  CausationId id = 0;
  EventList events;

  bool operator==(const Causation&) const = default;
};

struct Instance {
  EventList events;
  IdSet causation_ids;

  bool valid() const { return !causation_ids.empty(); }
  bool operator==(const Instance&) const = default;
};

// Sorted copy; two multisets are equal iff their canonical forms are equal.
EventList canonical_multiset(std::span<const EventType> events);

// True iff some strictly increasing choice of positions in `events` holds
// exactly the multiset `causes` with at most `max_gap` events between
// consecutive chosen positions.
bool contains_causation(std::span<const EventType> events, std::span<const EventType> causes,
                        int max_gap);

// Smallest gap bound under which `causes` embeds in `events`, or nullopt if
// it does not embed at all. Single-event causes that occur give 0.
std::optional<int> min_max_gap(std::span<const EventType> events,
                               std::span<const EventType> causes);

IdSet label_instance(std::span<const EventType> events, std::span<const Causation> causations,
                     int max_gap);

// Exhaustive reference matcher over all position subsets. Limited to
// |events| <= 20 and |causes| <= 4.
bool brute_force_contains(std::span<const EventType> events, std::span<const EventType> causes,
                          int max_gap);

}  // namespace causelab
