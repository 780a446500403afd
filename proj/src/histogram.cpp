#include "causelab/histogram.hpp"

#include <algorithm>
#include <map>

#include "causelab/error.hpp"

namespace causelab {

namespace {

std::map<EventType, int> count_events(const EventList& events) {
  std::map<EventType, int> counts;
  for (EventType e : events) ++counts[e];
  return counts;
}

}  // namespace

EventList estimate_cause_multiset(const std::vector<EventList>& positives) {
  if (positives.empty()) throw Error(ErrorCode::no_positive_instances, "no positive instances");

  std::map<EventType, int> common = count_events(positives.front());
  for (std::size_t i = 1; i < positives.size() && !common.empty(); ++i) {
    const auto counts = count_events(positives[i]);
    for (auto it = common.begin(); it != common.end();) {
      const auto found = counts.find(it->first);
      const int here = found == counts.end() ? 0 : found->second;
      it->second = std::min(it->second, here);
      it = it->second == 0 ? common.erase(it) : std::next(it);
    }
  }

  EventList out;
  for (const auto& [event, count] : common) out.insert(out.end(), static_cast<std::size_t>(count), event);
  return out;
}

int estimate_intervening_max(const std::vector<EventList>& positives, const EventList& causes) {
  if (causes.empty()) throw Error(ErrorCode::empty_causation, "empty causation");
  int widest = 0;
  for (const EventList& events : positives) {
    const auto gap = min_max_gap(events, causes);
    if (!gap) throw Error(ErrorCode::inconsistent_positives, "inconsistent positives");
    widest = std::max(widest, *gap);
  }
  return widest;
}

HistogramModel train_histogram(const Dataset& train) {
  HistogramModel model{train.params, {}};
  for (const Causation& c : train.causations) {
    std::vector<EventList> positives;
    for (const Instance& inst : train.instances) {
      if (inst.causation_ids.contains(c.id)) positives.push_back(inst.events);
    }
    LearnedCausation learned{c.id, {}, 0, static_cast<int>(positives.size())};
    if (!positives.empty()) {
      learned.causes = estimate_cause_multiset(positives);
      if (!learned.causes.empty()) {
        learned.max_gap = estimate_intervening_max(positives, learned.causes);
      }
    }
    model.causations.push_back(std::move(learned));
  }
  return model;
}

IdSet predict_histogram(const HistogramModel& model, std::span<const EventType> events) {
  IdSet ids;
  for (const LearnedCausation& c : model.causations) {
    if (c.learnable() && contains_causation(events, c.causes, c.max_gap)) ids.insert(c.id);
  }
  return ids;
}

}  // namespace causelab
