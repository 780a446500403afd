#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "causelab/generator.hpp"
#include "causelab/mlp.hpp"
#include "causelab/model.hpp"

namespace causelab {

enum class ScoreClass { good, fair, poor };
enum class Method { histogram, mlp };

std::string_view to_string(ScoreClass score);  // "Good", "Fair", "Poor"
std::string_view to_string(Method method);     // "histogram", "mlp"
ScoreClass parse_score(std::string_view text);
Method parse_method(std::string_view text);

inline constexpr double kGoodThreshold = 0.90;
inline constexpr double kFairThreshold = 0.70;

// Fraction of positions whose predicted id set equals the true set exactly.
double accuracy_of(const std::vector<IdSet>& predictions, const std::vector<IdSet>& truths);

ScoreClass score_class(double accuracy);

struct Combo {
  int net = 0;
  int nc = 0;
  int mce = 0;
  int mie = 0;

  Params params() const { return Params::make(net, nc, mce, mie); }
  auto operator<=>(const Combo&) const = default;
};

struct SweepRecord {
  Combo combo;
  std::uint64_t seed = 0;
  Method method = Method::histogram;
  std::optional<double> accuracy;  // absent for skipped runs
  std::optional<ScoreClass> score;
  std::string skip_reason;

  bool skipped() const { return !accuracy.has_value(); }
  bool operator==(const SweepRecord&) const = default;
};

struct SweepGrid {
  std::vector<int> net{15, 20, 25};
  std::vector<int> nc{2, 4, 6, 8, 10};
  std::vector<int> mce{1, 2, 3};
  std::vector<int> mie{0, 1, 2};

  std::vector<Combo> combos() const;  // NET-major order
};

struct SweepOptions {
  SweepGrid grid;
  std::vector<std::uint64_t> seeds;
  std::vector<Method> methods{Method::histogram, Method::mlp};
  DatasetSizes sizes;
  MlpConfig mlp;  // seed is overridden per run
  int jobs = 1;
};

// Seeds 1..count, the sweep default.
std::vector<std::uint64_t> default_seeds(int count = 10);

// Per-run MLP initialization seed, derived from the run's data seed.
std::uint64_t mlp_seed_for(std::uint64_t data_seed);

struct RunOutcome {
  Experiment data;
  std::vector<IdSet> predictions;
  double accuracy = 0.0;
};

// One generate -> train -> predict cycle. Throws on infeasible parameters.
RunOutcome run_once(const Params& params, std::uint64_t seed, Method method,
                    const DatasetSizes& sizes, const MlpConfig& mlp);

// Records ordered by (combo, seed, method). Generation failures become
// skipped records instead of aborting.
std::vector<SweepRecord> run_sweep(const SweepOptions& options);

struct ComboSummary {
  Combo combo;
  double mean_accuracy = 0.0;
  ScoreClass score = ScoreClass::poor;
  int runs = 0;
};

// Mean accuracy over the non-skipped seeds of each combo, for one method.
std::vector<ComboSummary> summarize_combos(const std::vector<SweepRecord>& records, Method method);

struct ScoreCounts {
  int good = 0;
  int fair = 0;
  int poor = 0;

  int total() const { return good + fair + poor; }
  bool operator==(const ScoreCounts&) const = default;
};

ScoreCounts aggregate_scores(const std::vector<SweepRecord>& records, Method method);

// ---- decision tree ----

inline constexpr std::array<std::string_view, 4> kFeatureNames{
    "NUM_EVENT_TYPES", "NUM_CAUSATIONS", "MAX_CAUSE_EVENTS", "MAX_INTERVENING_EVENTS"};

struct TreeRow {
  std::array<double, 4> features{};  // NET, NC, MCE, MIE
  ScoreClass label = ScoreClass::poor;
};

std::vector<TreeRow> tree_rows(const std::vector<ComboSummary>& summaries);

struct TreeNode {
  std::optional<int> feature;  // absent for leaves
  double threshold = 0.0;      // rows with value <= threshold go left
  int left = -1;
  int right = -1;
  int count = 0;
  std::array<int, 3> class_counts{};  // Good, Fair, Poor
  ScoreClass majority = ScoreClass::good;

  bool leaf() const { return !feature.has_value(); }
};

struct DecisionTree {
  std::vector<TreeNode> nodes;  // nodes[0] is the root

  ScoreClass classify(const std::array<double, 4>& features) const;
  int depth() const;
};

DecisionTree fit_decision_tree(const std::vector<TreeRow>& rows,
                               std::optional<int> max_depth = std::nullopt);

std::string render_decision_tree(const DecisionTree& tree);

// Inverse of render_decision_tree. Counts are not part of the text, so the
// result carries structure only.
DecisionTree parse_decision_tree(std::string_view text);

bool same_structure(const DecisionTree& a, const DecisionTree& b);

double gini(const std::array<int, 3>& counts);

}  // namespace causelab
