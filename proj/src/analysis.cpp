#include "causelab/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

#include "causelab/error.hpp"
#include "causelab/histogram.hpp"

namespace causelab {

std::string_view to_string(ScoreClass score) {
  switch (score) {
    case ScoreClass::good: return "Good";
    case ScoreClass::fair: return "Fair";
    case ScoreClass::poor: return "Poor";
  }
  return "Poor";
}

std::string_view to_string(Method method) {
  return method == Method::histogram ? "histogram" : "mlp";
}

ScoreClass parse_score(std::string_view text) {
  if (text == "Good") return ScoreClass::good;
  if (text == "Fair") return ScoreClass::fair;
  if (text == "Poor") return ScoreClass::poor;
  throw Error(ErrorCode::parse_error, "unknown score class '" + std::string(text) + "'");
}

Method parse_method(std::string_view text) {
  if (text == "histogram") return Method::histogram;
  if (text == "mlp") return Method::mlp;
  throw Error(ErrorCode::invalid_argument, "unknown method '" + std::string(text) + "'");
}

double accuracy_of(const std::vector<IdSet>& predictions, const std::vector<IdSet>& truths) {
  if (predictions.size() != truths.size()) {
    throw Error(ErrorCode::dimension_mismatch, "predictions and truths differ in length");
  }
  if (truths.empty()) throw Error(ErrorCode::invalid_argument, "accuracy of an empty set");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truths.size(); ++i) hits += predictions[i] == truths[i];
  return static_cast<double>(hits) / static_cast<double>(truths.size());
}

ScoreClass score_class(double accuracy) {
  if (!(accuracy >= 0.0 && accuracy <= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "accuracy must lie in [0, 1]");
  }
  if (accuracy >= kGoodThreshold) return ScoreClass::good;
  if (accuracy >= kFairThreshold) return ScoreClass::fair;
  return ScoreClass::poor;
}

std::vector<Combo> SweepGrid::combos() const {
  std::vector<Combo> out;
  for (int a : net)
    for (int b : nc)
      for (int c : mce)
        for (int d : mie) out.push_back({a, b, c, d});
  return out;
}

std::vector<std::uint64_t> default_seeds(int count) {
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(std::max(count, 0)));
  std::iota(seeds.begin(), seeds.end(), std::uint64_t{1});
  return seeds;
}

std::uint64_t mlp_seed_for(std::uint64_t data_seed) {
  return derive_seed(data_seed, {0x6d6c70});
}

RunOutcome run_once(const Params& params, std::uint64_t seed, Method method,
                    const DatasetSizes& sizes, const MlpConfig& mlp) {
  RunOutcome out;
  out.data = generate_experiment(params, sizes, seed);
  const auto& test = out.data.test.instances;
  out.predictions.reserve(test.size());

  if (method == Method::histogram) {
    const HistogramModel model = train_histogram(out.data.train);
    for (const Instance& inst : test) out.predictions.push_back(predict_histogram(model, inst.events));
  } else {
    MlpConfig config = mlp;
    config.seed = mlp_seed_for(seed);
    const MlpModel model = train_mlp(out.data.train, config);
    for (const Instance& inst : test) {
      out.predictions.push_back(predict_mlp(model, inst.events, config, params));
    }
  }

  std::vector<IdSet> truths;
  truths.reserve(test.size());
  for (const Instance& inst : test) truths.push_back(inst.causation_ids);
  out.accuracy = truths.empty() ? 0.0 : accuracy_of(out.predictions, truths);
  return out;
}

std::vector<SweepRecord> run_sweep(const SweepOptions& options) {
  if (options.seeds.empty()) throw Error(ErrorCode::invalid_argument, "no seeds given");
  const auto combos = options.grid.combos();
  if (combos.empty()) throw Error(ErrorCode::invalid_argument, "empty parameter grid");

  std::vector<SweepRecord> records;
  for (const Combo& combo : combos)
    for (std::uint64_t seed : options.seeds)
      for (Method method : options.methods) records.push_back({combo, seed, method, {}, {}, {}});

  auto execute = [&](SweepRecord& rec) {
    try {
      const double acc =
          run_once(rec.combo.params(), rec.seed, rec.method, options.sizes, options.mlp).accuracy;
      rec.accuracy = acc;
      rec.score = score_class(acc);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::training_diverged || e.code() == ErrorCode::infeasible_parameters ||
          e.code() == ErrorCode::causation_space_exhausted) {
        rec.skip_reason = std::string(to_string(e.code()));
      } else {
        throw;
      }
    }
  };

  const int jobs = std::max(1, options.jobs);
  if (jobs == 1) {
    for (auto& rec : records) execute(rec);
    return records;
  }

  // Each worker owns the slots it claims, so output order is fixed.
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> failures(static_cast<std::size_t>(jobs));
  std::vector<std::thread> workers;
  for (int w = 0; w < jobs; ++w) {
    workers.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < records.size(); i = next++) execute(records[i]);
      } catch (...) {
        failures[static_cast<std::size_t>(w)] = std::current_exception();
        next = records.size();
      }
    });
  }
  for (auto& t : workers) t.join();
  for (auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return records;
}

std::vector<ComboSummary> summarize_combos(const std::vector<SweepRecord>& records, Method method) {
  std::map<Combo, std::pair<double, int>> sums;
  for (const SweepRecord& r : records) {
    if (r.method != method || r.skipped()) continue;
    auto& [total, n] = sums[r.combo];
    total += *r.accuracy;
    ++n;
  }
  std::vector<ComboSummary> out;
  for (const auto& [combo, acc] : sums) {
    const double mean = acc.first / acc.second;
    out.push_back({combo, mean, score_class(std::clamp(mean, 0.0, 1.0)), acc.second});
  }
  return out;
}

ScoreCounts aggregate_scores(const std::vector<SweepRecord>& records, Method method) {
  ScoreCounts counts;
  for (const ComboSummary& s : summarize_combos(records, method)) {
    switch (s.score) {
      case ScoreClass::good: ++counts.good; break;
      case ScoreClass::fair: ++counts.fair; break;
      case ScoreClass::poor: ++counts.poor; break;
    }
  }
  return counts;
}

// ---- decision tree ----

std::vector<TreeRow> tree_rows(const std::vector<ComboSummary>& summaries) {
  std::vector<TreeRow> rows;
  rows.reserve(summaries.size());
  for (const ComboSummary& s : summaries) {
    rows.push_back({{static_cast<double>(s.combo.net), static_cast<double>(s.combo.nc),
                     static_cast<double>(s.combo.mce), static_cast<double>(s.combo.mie)},
                    s.score});
  }
  return rows;
}

double gini(const std::array<int, 3>& counts) {
  const int n = counts[0] + counts[1] + counts[2];
  if (n == 0) return 0.0;
  double sum_sq = 0.0;
  for (int c : counts) {
    const double p = static_cast<double>(c) / n;
    sum_sq += p * p;
  }
  return 1.0 - sum_sq;
}

namespace {

constexpr double kGainTolerance = 1e-12;

std::size_t class_index(ScoreClass s) { return static_cast<std::size_t>(s); }

ScoreClass majority_of(const std::array<int, 3>& counts) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] > counts[best]) best = i;
  }
  return static_cast<ScoreClass>(best);
}

class TreeBuilder {
 public:
  TreeBuilder(const std::vector<TreeRow>& rows, std::optional<int> max_depth)
      : rows_(rows), max_depth_(max_depth) {}

  DecisionTree build() {
    std::vector<std::size_t> all(rows_.size());
    std::iota(all.begin(), all.end(), std::size_t{0});
    grow(all, 0);
    return std::move(tree_);
  }

 private:
  int grow(const std::vector<std::size_t>& members, int depth) {
    const int index = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    {
      TreeNode& node = tree_.nodes.back();
      node.count = static_cast<int>(members.size());
      for (std::size_t m : members) ++node.class_counts[class_index(rows_[m].label)];
      node.majority = majority_of(node.class_counts);
    }
    const auto counts = tree_.nodes[static_cast<std::size_t>(index)].class_counts;
    const bool pure = std::count(counts.begin(), counts.end(), 0) >= 2;
    if (pure || (max_depth_ && depth >= *max_depth_)) return index;

    const auto split = best_split(members, counts);
    if (!split) return index;

    std::vector<std::size_t> left;
    std::vector<std::size_t> right;
    for (std::size_t m : members) {
      (rows_[m].features[static_cast<std::size_t>(split->first)] <= split->second ? left : right)
          .push_back(m);
    }
    const int l = grow(left, depth + 1);
    const int r = grow(right, depth + 1);
    TreeNode& node = tree_.nodes[static_cast<std::size_t>(index)];
    node.feature = split->first;
    node.threshold = split->second;
    node.left = l;
    node.right = r;
    return index;
  }

  // (feature, threshold) with the largest Gini decrease; ties keep the
  // earlier feature and then the smaller threshold. A zero-gain split is
  // still taken when one exists, so impure nodes only stop growing when
  // every member has the same feature vector.
  std::optional<std::pair<int, double>> best_split(const std::vector<std::size_t>& members,
                                                   const std::array<int, 3>& counts) const {
    const double parent = gini(counts);
    const double n = static_cast<double>(members.size());
    std::optional<std::pair<int, double>> best;
    double best_gain = -1.0;

    for (int f = 0; f < 4; ++f) {
      std::vector<double> values;
      for (std::size_t m : members) values.push_back(rows_[m].features[static_cast<std::size_t>(f)]);
      std::sort(values.begin(), values.end());
      values.erase(std::unique(values.begin(), values.end()), values.end());

      for (std::size_t v = 0; v + 1 < values.size(); ++v) {
        const double threshold = (values[v] + values[v + 1]) / 2.0;
        std::array<int, 3> lc{};
        std::array<int, 3> rc{};
        for (std::size_t m : members) {
          auto& side = rows_[m].features[static_cast<std::size_t>(f)] <= threshold ? lc : rc;
          ++side[class_index(rows_[m].label)];
        }
        const double nl = lc[0] + lc[1] + lc[2];
        const double nr = rc[0] + rc[1] + rc[2];
        const double gain = parent - (nl * gini(lc) + nr * gini(rc)) / n;
        if (gain > best_gain + kGainTolerance) {
          best_gain = gain;
          best = {f, threshold};
        }
      }
    }
    return best;
  }

  const std::vector<TreeRow>& rows_;
  std::optional<int> max_depth_;
  DecisionTree tree_;
};

std::string format_threshold(double t) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.2f", t);
  return buf;
}

void render_node(const DecisionTree& tree, int index, int depth, std::ostringstream& out) {
  const TreeNode& node = tree.nodes[static_cast<std::size_t>(index)];
  std::string indent;
  for (int i = 0; i < depth; ++i) indent += "|   ";
  if (node.leaf()) {
    out << indent << "|--- class: " << to_string(node.majority) << '\n';
    return;
  }
  const auto name = kFeatureNames[static_cast<std::size_t>(*node.feature)];
  const std::string t = format_threshold(node.threshold);
  out << indent << "|--- " << name << " <= " << t << '\n';
  render_node(tree, node.left, depth + 1, out);
  out << indent << "|--- " << name << " > " << t << '\n';
  render_node(tree, node.right, depth + 1, out);
}

struct TreeLine {
  int depth = 0;
  std::string body;
  int number = 0;
};

class TreeParser {
 public:
  explicit TreeParser(std::vector<TreeLine> lines) : lines_(std::move(lines)) {}

  DecisionTree parse() {
    if (lines_.empty()) fail(0, "empty tree text");
    node(0);
    if (pos_ != lines_.size()) fail(lines_[pos_].number, "trailing lines after tree");
    return std::move(tree_);
  }

 private:
  [[noreturn]] static void fail(int line, const std::string& what) {
    throw Error(ErrorCode::parse_error, "tree line " + std::to_string(line) + ": " + what);
  }

  const TreeLine& expect(int depth) {
    if (pos_ >= lines_.size()) fail(lines_.back().number, "unexpected end of tree");
    const TreeLine& line = lines_[pos_++];
    if (line.depth != depth) fail(line.number, "unexpected indentation");
    return line;
  }

  // Splits "NAME <op> value"; returns feature index and threshold.
  std::pair<int, double> condition(const TreeLine& line, std::string_view op) {
    const std::string marker = " " + std::string(op) + " ";
    const auto at = line.body.find(marker);
    if (at == std::string::npos) fail(line.number, "expected '" + std::string(op) + "'");
    const std::string name = line.body.substr(0, at);
    const auto it = std::find(kFeatureNames.begin(), kFeatureNames.end(), name);
    if (it == kFeatureNames.end()) fail(line.number, "unknown feature '" + name + "'");
    try {
      std::size_t used = 0;
      const std::string number = line.body.substr(at + marker.size());
      const double value = std::stod(number, &used);
      if (used != number.size()) fail(line.number, "bad threshold");
      return {static_cast<int>(it - kFeatureNames.begin()), value};
    } catch (const std::logic_error&) {
      fail(line.number, "bad threshold");
    }
  }

  int node(int depth) {
    const TreeLine& line = expect(depth);
    const int index = static_cast<int>(tree_.nodes.size());
    tree_.nodes.emplace_back();
    constexpr std::string_view leaf_prefix = "class: ";
    if (line.body.rfind(leaf_prefix, 0) == 0) {
      tree_.nodes[static_cast<std::size_t>(index)].majority =
          parse_score(std::string_view(line.body).substr(leaf_prefix.size()));
      return index;
    }
    const auto [feature, threshold] = condition(line, "<=");
    const int left = node(depth + 1);
    const TreeLine& other = expect(depth);
    const auto [feature2, threshold2] = condition(other, ">");
    if (feature2 != feature || threshold2 != threshold) fail(other.number, "mismatched split");
    const int right = node(depth + 1);
    TreeNode& n = tree_.nodes[static_cast<std::size_t>(index)];
    n.feature = feature;
    n.threshold = threshold;
    n.left = left;
    n.right = right;
    return index;
  }

  std::vector<TreeLine> lines_;
  std::size_t pos_ = 0;
  DecisionTree tree_;
};

bool same_subtree(const DecisionTree& a, int ia, const DecisionTree& b, int ib) {
  const TreeNode& x = a.nodes[static_cast<std::size_t>(ia)];
  const TreeNode& y = b.nodes[static_cast<std::size_t>(ib)];
  if (x.leaf() != y.leaf()) return false;
  if (x.leaf()) return x.majority == y.majority;
  return x.feature == y.feature && format_threshold(x.threshold) == format_threshold(y.threshold) &&
         same_subtree(a, x.left, b, y.left) && same_subtree(a, x.right, b, y.right);
}

}  // namespace

ScoreClass DecisionTree::classify(const std::array<double, 4>& features) const {
  if (nodes.empty()) throw Error(ErrorCode::invalid_argument, "empty decision tree");
  const TreeNode* node = &nodes.front();
  while (!node->leaf()) {
    const bool go_left = features[static_cast<std::size_t>(*node->feature)] <= node->threshold;
    node = &nodes[static_cast<std::size_t>(go_left ? node->left : node->right)];
  }
  return node->majority;
}

int DecisionTree::depth() const {
  std::function<int(int)> walk = [&](int i) -> int {
    const TreeNode& n = nodes[static_cast<std::size_t>(i)];
    return n.leaf() ? 0 : 1 + std::max(walk(n.left), walk(n.right));
  };
  return nodes.empty() ? 0 : walk(0);
}

DecisionTree fit_decision_tree(const std::vector<TreeRow>& rows, std::optional<int> max_depth) {
  if (rows.empty()) throw Error(ErrorCode::invalid_argument, "no rows to fit");
  if (max_depth && *max_depth < 0) throw Error(ErrorCode::invalid_argument, "negative max_depth");
  return TreeBuilder(rows, max_depth).build();
}

std::string render_decision_tree(const DecisionTree& tree) {
  if (tree.nodes.empty()) throw Error(ErrorCode::invalid_argument, "empty decision tree");
  std::ostringstream out;
  render_node(tree, 0, 0, out);
  return out.str();
}

DecisionTree parse_decision_tree(std::string_view text) {
  std::vector<TreeLine> lines;
  std::istringstream in{std::string(text)};
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (raw.find_first_not_of(" \t\r") == std::string::npos) continue;
    TreeLine line{0, raw, number};
    while (line.body.rfind("|   ", 0) == 0) {
      ++line.depth;
      line.body.erase(0, 4);
    }
    if (line.body.rfind("|--- ", 0) != 0) {
      throw Error(ErrorCode::parse_error, "tree line " + std::to_string(number) + ": expected '|--- '");
    }
    line.body.erase(0, 5);
    while (!line.body.empty() && (line.body.back() == '\r' || line.body.back() == ' ')) {
      line.body.pop_back();
    }
    lines.push_back(std::move(line));
  }
  return TreeParser(std::move(lines)).parse();
}

bool same_structure(const DecisionTree& a, const DecisionTree& b) {
  if (a.nodes.empty() || b.nodes.empty()) return a.nodes.empty() && b.nodes.empty();
  return same_subtree(a, 0, b, 0);
}

}  // namespace causelab
