#pragma once

#include <vector>

#include "causelab/generator.hpp"
#include "causelab/model.hpp"

namespace causelab::testing {

// The ten instances and two causations of the reference listing.
inline std::vector<Causation> sample_causations() { return {{0, {4}}, {1, {2, 2}}}; }

inline std::vector<EventList> sample_events() {
  return {{4, 9, 9, 3, 0}, {4, 2, 2, 8, 0}, {3, 2, 4, 2, 8}, {6, 2, 2, 7, 9}, {2, 9, 2, 1, 6},
          {8, 8, 0, 2, 3}, {5, 1, 7, 8, 1}, {8, 3, 0, 5, 2}, {0, 5, 9, 8, 2}, {3, 2, 9, 8, 6}};
}

inline std::vector<IdSet> sample_labels() {
  return {{0}, {0, 1}, {0, 1}, {1}, {1}, {}, {}, {}, {}, {}};
}

inline Dataset sample_dataset() {
  Dataset ds;
  ds.params = Params::make(10, 2, 2, 2, 5);
  ds.causations = sample_causations();
  const auto events = sample_events();
  const auto labels = sample_labels();
  for (std::size_t i = 0; i < events.size(); ++i) ds.instances.push_back({events[i], labels[i]});
  return ds;
}

}  // namespace causelab::testing
