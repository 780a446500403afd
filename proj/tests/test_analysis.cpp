#include <functional>
#include <map>
#include <random>
#include <set>

#include "causelab/analysis.hpp"
#include "causelab/error.hpp"
#include "doctest.h"

using namespace causelab;

namespace {

TreeRow row(double net, double nc, double mce, double mie, ScoreClass c) {
  return {{net, nc, mce, mie}, c};
}

std::vector<TreeRow> mie_split_rows() {
  std::vector<TreeRow> rows;
  for (int i = 0; i < 3; ++i) rows.push_back(row(15, 2, 1, 0, ScoreClass::good));
  for (int i = 0; i < 3; ++i) rows.push_back(row(15, 2, 1, 2, ScoreClass::poor));
  return rows;
}

SweepRecord rec(Combo c, std::uint64_t seed, Method m, double acc) {
  return {c, seed, m, acc, score_class(acc), {}};
}

}  // namespace

TEST_CASE("accuracy_of") {
  CHECK(accuracy_of({{0}, {1}, {}}, {{0}, {1}, {}}) == 1.0);
  CHECK(accuracy_of({{0}, {}, {}}, {{0}, {1}, {}}) == doctest::Approx(2.0 / 3.0));
  CHECK(accuracy_of({{0, 1}}, {{1, 0}}) == 1.0);
  CHECK_THROWS_AS(accuracy_of({{0}}, {{0}, {1}}), Error);
  CHECK_THROWS_AS(accuracy_of({}, {}), Error);
}

TEST_CASE("score_class boundaries") {
  CHECK(score_class(0.95) == ScoreClass::good);
  CHECK(score_class(0.75) == ScoreClass::fair);
  CHECK(score_class(0.90) == ScoreClass::good);
  CHECK(score_class(0.6999) == ScoreClass::poor);
  CHECK(score_class(0.70) == ScoreClass::fair);
  CHECK(score_class(1.0) == ScoreClass::good);
  CHECK(score_class(0.0) == ScoreClass::poor);
  CHECK_THROWS_AS(score_class(1.01), Error);
  CHECK_THROWS_AS(score_class(-0.01), Error);
}

TEST_CASE("property: score_class is a monotone step function") {
  ScoreClass prev = ScoreClass::poor;
  for (int i = 0; i <= 10000; ++i) {
    const ScoreClass now = score_class(i / 10000.0);
    CHECK(static_cast<int>(now) <= static_cast<int>(prev));
    prev = now;
  }
}

TEST_CASE("names round-trip") {
  for (ScoreClass s : {ScoreClass::good, ScoreClass::fair, ScoreClass::poor}) {
    CHECK(parse_score(to_string(s)) == s);
  }
  CHECK(parse_method("mlp") == Method::mlp);
  CHECK_THROWS_AS(parse_method("lstm"), Error);
}

TEST_CASE("grid defaults and combo order") {
  const SweepGrid g;
  const auto combos = g.combos();
  CHECK(combos.size() == 135);
  CHECK(combos.front() == Combo{15, 2, 1, 0});
  CHECK(combos[1] == Combo{15, 2, 1, 1});
  CHECK(combos.back() == Combo{25, 10, 3, 2});
  CHECK(default_seeds() == std::vector<std::uint64_t>{1, 2, 3, 4, 5, 6, 7, 8, 9, 10});
}

TEST_CASE("run_sweep small grid") {
  SweepOptions o;
  o.grid = {{15}, {2}, {1}, {0}};
  o.seeds = {1};
  o.methods = {Method::histogram};
  const auto one = run_sweep(o);
  REQUIRE(one.size() == 1);
  CHECK(one[0].accuracy.value() == 1.0);
  CHECK(one[0].score == ScoreClass::good);

  o.grid = {{15, 20}, {2, 4}, {1, 2}, {0, 1}};
  o.seeds = {1, 2};
  o.methods = {Method::histogram, Method::mlp};
  o.mlp.epochs = 5;
  const auto a = run_sweep(o);
  CHECK(a.size() == 2 * 2 * 2 * 2 * 2 * 2);
  o.jobs = 3;
  const auto b = run_sweep(o);
  CHECK(a == b);
  // (combo, seed, method) order
  CHECK(a[0].method == Method::histogram);
  CHECK(a[1].method == Method::mlp);
  CHECK(a[0].seed == 1);
  CHECK(a[2].seed == 2);
  CHECK(a[4].combo == Combo{15, 2, 1, 1});
}

TEST_CASE("run_sweep records skips instead of aborting") {
  SweepOptions o;
  o.grid = {{1}, {1, 3}, {1}, {0}};
  o.seeds = {1};
  o.methods = {Method::histogram};
  o.sizes = {1, 1, 5};
  const auto recs = run_sweep(o);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].skipped());
  CHECK(recs[0].skip_reason == "infeasible_parameters");
  CHECK(recs[1].skipped());
  CHECK(recs[1].skip_reason == "causation_space_exhausted");
  CHECK(aggregate_scores(recs, Method::histogram).total() == 0);
}

TEST_CASE("aggregate_scores") {
  const Combo c1{15, 2, 1, 0};
  const Combo c2{15, 4, 1, 0};
  std::vector<SweepRecord> recs{rec(c1, 1, Method::histogram, 1.0), rec(c1, 2, Method::histogram, 0.8)};
  CHECK(aggregate_scores(recs, Method::histogram) == ScoreCounts{1, 0, 0});
  CHECK(aggregate_scores({}, Method::histogram) == ScoreCounts{0, 0, 0});

  recs.push_back(rec(c2, 1, Method::histogram, 0.5));
  recs.push_back(rec(c2, 1, Method::mlp, 0.75));
  SweepRecord skipped{c2, 2, Method::histogram, {}, {}, "infeasible_parameters"};
  recs.push_back(skipped);
  CHECK(aggregate_scores(recs, Method::histogram) == ScoreCounts{1, 0, 1});
  CHECK(aggregate_scores(recs, Method::mlp) == ScoreCounts{0, 1, 0});

  const auto summaries = summarize_combos(recs, Method::histogram);
  REQUIRE(summaries.size() == 2);
  CHECK(summaries[0].mean_accuracy == doctest::Approx(0.9));
  CHECK(summaries[0].runs == 2);
  CHECK(summaries[1].runs == 1);
}

TEST_CASE("gini") {
  CHECK(gini({3, 0, 0}) == 0.0);
  CHECK(gini({3, 3, 0}) == doctest::Approx(0.5));
  CHECK(gini({1, 1, 1}) == doctest::Approx(2.0 / 3.0));
  CHECK(gini({0, 0, 0}) == 0.0);
}

TEST_CASE("fit and render the single-split tree") {
  const DecisionTree tree = fit_decision_tree(mie_split_rows());
  REQUIRE(tree.nodes.size() == 3);
  const TreeNode& root = tree.nodes[0];
  CHECK(root.feature == 3);
  CHECK(root.threshold == 1.0);
  CHECK(root.count == 6);
  CHECK(root.class_counts == std::array<int, 3>{3, 0, 3});
  CHECK(tree.nodes[static_cast<std::size_t>(root.left)].class_counts == std::array<int, 3>{3, 0, 0});
  CHECK(render_decision_tree(tree) ==
        "|--- MAX_INTERVENING_EVENTS <= 1.00\n"
        "|   |--- class: Good\n"
        "|--- MAX_INTERVENING_EVENTS > 1.00\n"
        "|   |--- class: Poor\n");
}

TEST_CASE("single leaf and conflicting duplicates") {
  std::vector<TreeRow> same{row(15, 2, 1, 0, ScoreClass::good), row(20, 4, 2, 1, ScoreClass::good)};
  const DecisionTree leaf = fit_decision_tree(same);
  CHECK(leaf.nodes.size() == 1);
  CHECK(render_decision_tree(leaf) == "|--- class: Good\n");

  std::vector<TreeRow> conflict{row(15, 2, 1, 0, ScoreClass::fair), row(15, 2, 1, 0, ScoreClass::fair),
                                row(15, 2, 1, 0, ScoreClass::poor)};
  const DecisionTree mixed = fit_decision_tree(conflict);
  REQUIRE(mixed.nodes.size() == 1);
  CHECK(mixed.nodes[0].class_counts == std::array<int, 3>{0, 2, 1});
  CHECK(mixed.nodes[0].majority == ScoreClass::fair);

  CHECK_THROWS_AS(fit_decision_tree({}), Error);
}

TEST_CASE("split ties prefer earlier features, then smaller thresholds") {
  // NET and MIE both separate perfectly.
  std::vector<TreeRow> rows{row(15, 2, 1, 0, ScoreClass::good), row(25, 2, 1, 2, ScoreClass::poor)};
  const DecisionTree t = fit_decision_tree(rows);
  CHECK(t.nodes[0].feature == 0);
  CHECK(t.nodes[0].threshold == 20.0);

  // Thresholds 1.5 and 2.5 on MCE tie in gain: the smaller wins.
  std::vector<TreeRow> rows2{row(15, 2, 1, 0, ScoreClass::good), row(15, 2, 2, 0, ScoreClass::poor),
                             row(15, 2, 3, 0, ScoreClass::good)};
  CHECK(fit_decision_tree(rows2).nodes[0].threshold == 1.5);
}

TEST_CASE("max_depth limits the tree") {
  std::vector<TreeRow> rows;
  const ScoreClass classes[] = {ScoreClass::good, ScoreClass::fair, ScoreClass::poor};
  for (int net : {15, 20, 25})
    for (int mie : {0, 1, 2}) rows.push_back(row(net, 2, 1, mie, classes[(net / 5 + mie) % 3]));
  CHECK(fit_decision_tree(rows, 1).depth() <= 1);
  CHECK(fit_decision_tree(rows, 0).nodes.size() == 1);
  CHECK(fit_decision_tree(rows).depth() > 1);
}

TEST_CASE("property: unbounded trees fit distinct rows exactly with non-negative gains") {
  std::mt19937 gen(5);
  std::uniform_int_distribution<int> cls(0, 2);
  const SweepGrid grid;
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<TreeRow> rows;
    for (const Combo& c : grid.combos()) {
      if (gen() % 3 == 0) continue;
      rows.push_back(row(c.net, c.nc, c.mce, c.mie, static_cast<ScoreClass>(cls(gen))));
    }
    const DecisionTree tree = fit_decision_tree(rows);
    for (const TreeRow& r : rows) CHECK(tree.classify(r.features) == r.label);

    for (const TreeNode& n : tree.nodes) {
      int total = n.class_counts[0] + n.class_counts[1] + n.class_counts[2];
      CHECK(total == n.count);
      if (n.leaf()) continue;
      const TreeNode& l = tree.nodes[static_cast<std::size_t>(n.left)];
      const TreeNode& r = tree.nodes[static_cast<std::size_t>(n.right)];
      CHECK(l.count + r.count == n.count);
      const double weighted = (l.count * gini(l.class_counts) + r.count * gini(r.class_counts)) / n.count;
      CHECK(weighted <= gini(n.class_counts) + 1e-12);
    }

    const std::string text = render_decision_tree(tree);
    const DecisionTree parsed = parse_decision_tree(text);
    CHECK(same_structure(tree, parsed));
    CHECK(render_decision_tree(parsed) == text);
  }
}

TEST_CASE("tree parse errors") {
  CHECK_THROWS_AS(parse_decision_tree(""), Error);
  CHECK_THROWS_AS(parse_decision_tree("|--- NUM_CAUSATIONS <= 4.00\n|   |--- class: Good\n"), Error);
  CHECK_THROWS_AS(parse_decision_tree("|--- class: Great\n"), Error);
  CHECK_THROWS_AS(parse_decision_tree("|--- FOO <= 1.00\n|   |--- class: Good\n|--- FOO > 1.00\n|   |--- class: Poor\n"),
                  Error);
  CHECK_THROWS_AS(parse_decision_tree("|--- class: Good\n|--- class: Poor\n"), Error);
}
