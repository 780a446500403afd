#include "causelab/commands.hpp"

#include <cstdio>

#include "causelab/error.hpp"
#include "causelab/histogram.hpp"
#include "causelab/io.hpp"

namespace causelab {

namespace {

std::string id_set_text(const IdSet& ids) {
  std::string s = "{";
  for (CausationId id : ids) s += ' ' + std::to_string(id);
  return s + " }";
}

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

void cmd_generate(const RunConfig& config, std::ostream& out) {
  config.params.validate();
  if (config.output.empty()) throw Error(ErrorCode::invalid_argument, "no output directory given");
  const Experiment ex = generate_experiment(config.params, config.sizes, config.seed);

  std::error_code ec;
  std::filesystem::create_directories(config.output, ec);
  if (ec) throw Error(ErrorCode::io_error, "cannot create " + config.output.string());
  write_file_atomic(config.output / kCausationsFile, causations_to_json(config.params, ex.causations));
  write_file_atomic(config.output / kTrainFile, dataset_to_jsonl(ex.train));
  write_file_atomic(config.output / kTestFile, dataset_to_jsonl(ex.test));

  if (config.verbose) {
    out << "Causations:\n" << format_causations(ex.causations);
    out << "Training instances:\n" << format_instances(ex.train.instances);
    out << "Test instances:\n" << format_instances(ex.test.instances);
  }
}

RunSummary cmd_run(const RunConfig& config, std::ostream& out) {
  config.params.validate();
  const RunOutcome run = run_once(config.params, config.seed, config.method, config.sizes, config.mlp);
  RunSummary summary{run.accuracy, score_class(run.accuracy)};

  out << "method: " << to_string(config.method) << '\n';
  out << "accuracy: " << fixed6(summary.accuracy) << '\n';
  out << "score: " << to_string(summary.score) << '\n';
  if (config.verbose) {
    const auto& test = run.data.test.instances;
    for (std::size_t i = 0; i < test.size(); ++i) {
      out << '[' << i << "] Events: {";
      for (EventType e : test[i].events) out << ' ' << e;
      out << " } Predicted: " << id_set_text(run.predictions[i])
          << " True: " << id_set_text(test[i].causation_ids) << '\n';
    }
  }

  if (!config.output.empty()) {
    // Retraining is deterministic, so this is the same model that was scored.
    if (config.method == Method::histogram) {
      write_file_atomic(config.output, histogram_model_to_json(train_histogram(run.data.train)));
    } else {
      MlpConfig mlp = config.mlp;
      mlp.seed = mlp_seed_for(config.seed);
      write_file_atomic(config.output,
                        mlp_model_to_json(train_mlp(run.data.train, mlp), mlp, config.params));
    }
  }
  return summary;
}

void cmd_sweep(const SweepOptions& options, const std::filesystem::path& csv_path,
               std::ostream& out) {
  const auto records = run_sweep(options);
  write_file_atomic(csv_path, sweep_to_csv(records));
  std::size_t skipped = 0;
  for (const auto& r : records) skipped += r.skipped();
  out << "runs: " << records.size() << ", skipped: " << skipped << '\n';
  for (Method m : options.methods) {
    const ScoreCounts c = aggregate_scores(records, m);
    out << to_string(m) << " Scores: Good=" << c.good << ", Fair=" << c.fair << ", Poor=" << c.poor
        << '\n';
  }
}

ScoreCounts cmd_analyze(const std::filesystem::path& csv_path, Method method, std::ostream& out,
                        std::optional<int> max_depth, const std::filesystem::path& tree_path) {
  const auto records = sweep_from_csv(read_file(csv_path));
  const auto summaries = summarize_combos(records, method);
  const ScoreCounts counts = aggregate_scores(records, method);
  out << "Scores: Good=" << counts.good << ", Fair=" << counts.fair << ", Poor=" << counts.poor
      << '\n';
  if (summaries.empty()) {
    out << "no completed " << to_string(method) << " runs\n";
    return counts;
  }
  const std::string tree = render_decision_tree(fit_decision_tree(tree_rows(summaries), max_depth));
  out << tree;
  if (!tree_path.empty()) write_file_atomic(tree_path, tree);
  return counts;
}

}  // namespace causelab
