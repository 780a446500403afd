#include <algorithm>

#include "causelab/error.hpp"
#include "causelab/histogram.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace causelab;

TEST_CASE("estimate_cause_multiset") {
  const auto ev = testing::sample_events();
  CHECK(estimate_cause_multiset({ev[1], ev[2], ev[3], ev[4]}) == EventList{2, 2});
  CHECK(estimate_cause_multiset({{4, 9, 9, 3, 0}}) == EventList{0, 3, 4, 9, 9});
  CHECK(estimate_cause_multiset({{1, 2, 3}, {3, 2, 1}, {2, 1, 3}}) == EventList{1, 2, 3});
  CHECK(estimate_cause_multiset({{1, 2}, {3, 4}}).empty());
  try {
    estimate_cause_multiset({});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_positive_instances);
  }
}

TEST_CASE("estimate_intervening_max") {
  const auto ev = testing::sample_events();
  CHECK(estimate_intervening_max({ev[1], ev[2], ev[3], ev[4]}, {2, 2}) == 1);
  CHECK(estimate_intervening_max({ev[0], ev[1], ev[2]}, {4}) == 0);
  CHECK(estimate_intervening_max({{2, 2, 5}, {2, 5, 2}}, {2, 2}) == 1);
  try {
    estimate_intervening_max({{2, 2, 5}, {1, 5, 2}}, {2, 2});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::inconsistent_positives);
  }
  CHECK_THROWS_AS(estimate_intervening_max({{1}}, {}), Error);
}

TEST_CASE("train_histogram on the reference listing") {
  const HistogramModel model = train_histogram(testing::sample_dataset());
  REQUIRE(model.causations.size() == 2);
  CHECK(model.causations[0].causes == EventList{4});
  CHECK(model.causations[0].max_gap == 0);
  CHECK(model.causations[0].positives_seen == 3);
  CHECK(model.causations[1].causes == EventList{2, 2});
  CHECK(model.causations[1].max_gap == 1);
  CHECK(model.causations[1].positives_seen == 4);

  CHECK(predict_histogram(model, EventList{4, 2, 2, 8, 0}) == IdSet{0, 1});
  CHECK(predict_histogram(model, EventList{8, 8, 0, 2, 3}).empty());
  const auto events = testing::sample_events();
  const auto labels = testing::sample_labels();
  for (std::size_t i = 0; i < events.size(); ++i) CHECK(predict_histogram(model, events[i]) == labels[i]);
}

TEST_CASE("no valid training instances leaves everything unlearnable") {
  Dataset ds = testing::sample_dataset();
  ds.instances.erase(std::remove_if(ds.instances.begin(), ds.instances.end(),
                                    [](const Instance& i) { return i.valid(); }),
                     ds.instances.end());
  const HistogramModel model = train_histogram(ds);
  for (const auto& c : model.causations) {
    CHECK_FALSE(c.learnable());
    CHECK(c.causes.empty());
    CHECK(c.positives_seen == 0);
  }
  CHECK(predict_histogram(model, EventList{4, 2, 2, 8, 0}).empty());
}

TEST_CASE("a sub-multiset causation whose positives all carry the larger one is inflated") {
  Dataset ds;
  ds.params = Params::make(10, 2, 2, 1, 5);
  ds.causations = {{0, {2}}, {1, {2, 2}}};
  for (const EventList& e : {EventList{2, 2, 5, 1, 7}, EventList{9, 2, 3, 2, 0}, EventList{2, 6, 2, 8, 4}}) {
    ds.instances.push_back({e, label_instance(e, ds.causations, 1)});
  }
  const HistogramModel model = train_histogram(ds);
  CHECK(model.causations[0].causes == EventList{2, 2});
  CHECK(model.causations[1].causes == EventList{2, 2});
}

TEST_CASE("property: superset of the truth, convergence and gap bound") {
  int exact = 0;
  int trials = 0;
  for (int mce = 1; mce <= 3; ++mce) {
    for (int mie = 0; mie <= 2; ++mie) {
      const Params p = Params::make(15, 1, mce, mie);
      for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        RandomSource rng(derive_seed(seed, {static_cast<std::uint64_t>(mce), static_cast<std::uint64_t>(mie)}));
        const auto cs = generate_causations(p, rng);
        const Dataset train = generate_training_set(p, cs, 50, 0, rng);
        std::vector<EventList> positives;
        for (const auto& i : train.instances) positives.push_back(i.events);
        const EventList learned = estimate_cause_multiset(positives);
        CHECK(std::includes(learned.begin(), learned.end(), cs[0].events.begin(), cs[0].events.end()));
        ++trials;
        if (learned == cs[0].events) {
          ++exact;
          CHECK(estimate_intervening_max(positives, learned) <= mie);
        }
      }
    }
  }
  CHECK(static_cast<double>(exact) / trials >= 0.99);
}

TEST_CASE("property: intersection shrinks as positives accumulate") {
  const Params p = Params::make(15, 1, 2, 1);
  RandomSource rng(31);
  const auto cs = generate_causations(p, rng);
  const Dataset train = generate_training_set(p, cs, 60, 0, rng);
  std::vector<EventList> positives;
  std::size_t previous = SIZE_MAX;
  for (const auto& inst : train.instances) {
    positives.push_back(inst.events);
    const auto est = estimate_cause_multiset(positives);
    CHECK(est.size() <= previous);
    previous = est.size();
  }
  CHECK(estimate_cause_multiset(positives) == cs[0].events);
}

TEST_CASE("property: exact estimates reproduce training labels") {
  int checked = 0;
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const Params p = Params::make(20, 4, 2, 1);
    const auto ex = generate_experiment(p, {}, seed);
    const HistogramModel model = train_histogram(ex.train);
    bool exact = true;
    for (std::size_t c = 0; c < ex.causations.size(); ++c) {
      const auto& learned = model.causations[c];
      exact = exact && learned.learnable() && learned.causes == ex.causations[c].events &&
              learned.max_gap == p.max_intervening_events;
    }
    if (!exact) continue;
    ++checked;
    for (const auto& inst : ex.train.instances) CHECK(predict_histogram(model, inst.events) == inst.causation_ids);
  }
  CHECK(checked > 0);
}
