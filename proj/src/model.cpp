#include "causelab/model.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "causelab/error.hpp"

namespace causelab {

int Params::default_instance_length(int max_cause_events, int max_intervening_events) {
  const int span = max_cause_events + (max_cause_events - 1) * max_intervening_events;
  return std::max(5, span + 2);
}

Params Params::make(int num_event_types, int num_causations, int max_cause_events,
                    int max_intervening_events, std::optional<int> instance_length) {
  Params p;
  p.num_event_types = num_event_types;
  p.num_causations = num_causations;
  p.max_cause_events = max_cause_events;
  p.max_intervening_events = max_intervening_events;
  p.instance_length = instance_length.value_or(
      default_instance_length(max_cause_events, max_intervening_events));
  p.validate();
  return p;
}

void Params::validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::invalid_argument, "invalid params: " + what);
  };
  if (num_event_types < 1) fail("num_event_types must be >= 1");
  if (num_causations < 1) fail("num_causations must be >= 1");
  if (max_cause_events < 1) fail("max_cause_events must be >= 1");
  if (max_intervening_events < 0) fail("max_intervening_events must be >= 0");
  if (instance_length < max_cause_events) fail("instance_length must be >= max_cause_events");
}

EventList canonical_multiset(std::span<const EventType> events) {
  EventList out(events.begin(), events.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Remaining multiplicities of the cause multiset, keyed by event type.
class NeedTable {
 public:
  explicit NeedTable(std::span<const EventType> causes) {
    for (EventType e : canonical_multiset(causes)) {
      if (!entries_.empty() && entries_.back().first == e) {
        ++entries_.back().second;
      } else {
        entries_.emplace_back(e, 1);
      }
    }
  }

  int* slot(EventType e) {
    for (auto& [type, count] : entries_) {
      if (type == e) return &count;
    }
    return nullptr;
  }

 private:
  std::vector<std::pair<EventType, int>> entries_;
};

class GapMatcher {
 public:
  GapMatcher(std::span<const EventType> events, std::span<const EventType> causes, int max_gap)
      : events_(events), needs_(causes), total_(static_cast<int>(causes.size())),
        max_gap_(max_gap) {}

  bool run() {
    const int n = static_cast<int>(events_.size());
    // The first pick leaves total_ - 1 picks, each at least one step later.
    for (int p = 0; p + total_ - 1 < n; ++p) {
      if (take(p, total_ - 1)) return true;
    }
    return false;
  }

 private:
  bool take(int pos, int remaining) {
    int* need = needs_.slot(events_[pos]);
    if (need == nullptr || *need == 0) return false;
    --*need;
    const bool found = remaining == 0 || extend(pos, remaining);
    ++*need;
    return found;
  }

  bool extend(int last, int remaining) {
    const int n = static_cast<int>(events_.size());
    const int hi = std::min<long long>(n - 1, static_cast<long long>(last) + 1 + max_gap_);
    for (int q = last + 1; q <= hi && q + remaining - 1 < n; ++q) {
      if (take(q, remaining - 1)) return true;
    }
    return false;
  }

  std::span<const EventType> events_;
  NeedTable needs_;
  int total_;
  int max_gap_;
};

void require_causes(std::span<const EventType> causes) {
  if (causes.empty()) throw Error(ErrorCode::empty_causation, "empty causation");
}

void require_gap(int max_gap) {
  if (max_gap < 0) throw Error(ErrorCode::invalid_argument, "max_gap must be non-negative");
}

}  // namespace

bool contains_causation(std::span<const EventType> events, std::span<const EventType> causes,
                        int max_gap) {
  require_causes(causes);
  require_gap(max_gap);
  if (causes.size() > events.size()) return false;
  return GapMatcher(events, causes, max_gap).run();
}

std::optional<int> min_max_gap(std::span<const EventType> events,
                               std::span<const EventType> causes) {
  require_causes(causes);
  if (causes.size() > events.size()) return std::nullopt;
  const int widest = static_cast<int>(events.size()) - 1;
  if (!contains_causation(events, causes, widest)) return std::nullopt;
  if (causes.size() == 1) return 0;
  // Containment is monotone in the gap bound.
  int lo = 0;
  int hi = widest;
  while (lo < hi) {
    const int mid = lo + (hi - lo) / 2;
    if (contains_causation(events, causes, mid)) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return lo;
}

IdSet label_instance(std::span<const EventType> events, std::span<const Causation> causations,
                     int max_gap) {
  IdSet seen;
  IdSet ids;
  for (const Causation& c : causations) {
    if (!seen.insert(c.id).second) {
      throw Error(ErrorCode::invalid_argument, "duplicate causation id " + std::to_string(c.id));
    }
    if (contains_causation(events, c.events, max_gap)) ids.insert(c.id);
  }
  return ids;
}

bool brute_force_contains(std::span<const EventType> events, std::span<const EventType> causes,
                          int max_gap) {
  require_causes(causes);
  require_gap(max_gap);
  if (events.size() > 20 || causes.size() > 4) {
    throw Error(ErrorCode::oracle_bound_exceeded, "oracle bound exceeded");
  }
  const std::size_t n = events.size();
  const std::size_t k = causes.size();
  if (k > n) return false;

  const EventList want = canonical_multiset(causes);
  // selector holds k trues; prev_permutation walks every k-subset.
  std::vector<bool> selector(n, false);
  std::fill(selector.begin(), selector.begin() + static_cast<std::ptrdiff_t>(k), true);
  do {
    EventList picked;
    std::vector<std::size_t> positions;
    for (std::size_t i = 0; i < n; ++i) {
      if (selector[i]) {
        picked.push_back(events[i]);
        positions.push_back(i);
      }
    }
    std::sort(picked.begin(), picked.end());
    if (picked != want) continue;
    bool gaps_ok = true;
    for (std::size_t i = 1; i < positions.size(); ++i) {
      if (positions[i] - positions[i - 1] - 1 > static_cast<std::size_t>(max_gap)) {
        gaps_ok = false;
        break;
      }
    }
    if (gaps_ok) return true;
  } while (std::prev_permutation(selector.begin(), selector.end()));
  return false;
}

}  // namespace causelab
