// causelab: generate causation datasets, run the learners, sweep the
// parameter grid and analyze the results.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "causelab/commands.hpp"
#include "causelab/error.hpp"

using namespace causelab;

namespace {

struct ParamFlags {
  int net = 10;
  int nc = 2;
  int mce = 2;
  int mie = 2;
  std::optional<int> length;
};

void add_param_flags(CLI::App* cmd, ParamFlags& p) {
  cmd->add_option("--num-event-types,--net", p.net, "Number of event types")->capture_default_str();
  cmd->add_option("--num-causations,--nc", p.nc, "Number of causations")->capture_default_str();
  cmd->add_option("--max-cause-events,--mce", p.mce, "Maximum cause events per causation")
      ->capture_default_str();
  cmd->add_option("--max-intervening-events,--mie", p.mie,
                  "Maximum non-causal events between consecutive cause events")
      ->capture_default_str();
  cmd->add_option("--instance-length", p.length,
                  "Events per instance (default: mce + (mce-1)*mie + 2, at least 5)");
}

void add_size_flags(CLI::App* cmd, DatasetSizes& s) {
  cmd->add_option("--train-valid", s.train_valid, "Valid training instances")->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--train-invalid", s.train_invalid, "Invalid training instances")
      ->capture_default_str()->check(CLI::NonNegativeNumber);
  cmd->add_option("--test-size", s.test_size, "Random test instances")->capture_default_str()
      ->check(CLI::NonNegativeNumber);
}

void add_mlp_flags(CLI::App* cmd, MlpConfig& m) {
  cmd->add_option("--epochs", m.epochs, "MLP training epochs")->capture_default_str();
  cmd->add_option("--learning-rate", m.learning_rate, "Adam learning rate")->capture_default_str();
  cmd->add_option("--threshold", m.prediction_threshold, "Output threshold for predicting an id")
      ->capture_default_str();
  cmd->add_option("--hidden-units", m.hidden_units, "Hidden layer width")->capture_default_str();
}

const CLI::IsMember kMethodNames({"histogram", "mlp"});

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causation conjunction learning experiments"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  ParamFlags pflags;
  RunConfig run;
  std::string output;

  auto* gen = app.add_subcommand("generate", "Write causations, training and test datasets");
  add_param_flags(gen, pflags);
  add_size_flags(gen, run.sizes);
  gen->add_option("--seed", seed, "Random seed")->envname("CAUSELAB_SEED")->capture_default_str();
  gen->add_option("-o,--output", output, "Output directory")->required();
  gen->add_flag("-v,--verbose", run.verbose, "Print the causations and instances");

  auto* runc = app.add_subcommand("run", "Generate, train and test one method");
  add_param_flags(runc, pflags);
  add_size_flags(runc, run.sizes);
  add_mlp_flags(runc, run.mlp);
  runc->add_option("--seed", seed, "Random seed")->envname("CAUSELAB_SEED")->capture_default_str();
  std::string run_method = "histogram";
  runc->add_option("--method", run_method, "histogram or mlp")->check(kMethodNames)->capture_default_str();
  runc->add_option("-o,--output", output, "Write the trained model to this file");
  runc->add_flag("-v,--verbose", run.verbose, "Print predicted and true ids per test instance");

  SweepOptions sweep;
  int seed_count = 10;
  std::vector<std::string> methods;
  auto* sw = app.add_subcommand("sweep", "Run every grid combo for every seed and method");
  sw->add_option("--num-event-types,--net", sweep.grid.net, "Event type counts")->capture_default_str();
  sw->add_option("--num-causations,--nc", sweep.grid.nc, "Causation counts")->capture_default_str();
  sw->add_option("--max-cause-events,--mce", sweep.grid.mce, "Max cause event values")
      ->capture_default_str();
  sw->add_option("--max-intervening-events,--mie", sweep.grid.mie, "Max intervening event values")
      ->capture_default_str();
  sw->add_option("--seeds", seed_count, "Number of seeds per combo")->capture_default_str()
      ->check(CLI::PositiveNumber);
  sw->add_option("--seed", seed, "First seed")->envname("CAUSELAB_SEED")->capture_default_str();
  sw->add_option("--methods", methods, "Methods to run (histogram, mlp)")
      ->check(kMethodNames);
  add_size_flags(sw, sweep.sizes);
  add_mlp_flags(sw, sweep.mlp);
  sw->add_option("--jobs", sweep.jobs, "Parallel runs")->capture_default_str()->check(CLI::PositiveNumber);
  sw->add_option("-o,--output", output, "Results CSV path")->required();

  std::string csv;
  std::string analyze_method = "histogram";
  std::optional<int> max_depth;
  std::string tree_out;
  auto* an = app.add_subcommand("analyze", "Score summary and decision tree for one method");
  an->add_option("csv", csv, "Results CSV from sweep")->required();
  an->add_option("--method", analyze_method, "histogram or mlp")->check(kMethodNames)->capture_default_str();
  an->add_option("--max-depth", max_depth, "Limit tree depth");
  an->add_option("--tree-out", tree_out, "Also write the tree text here");

  CLI11_PARSE(app, argc, argv);

  try {
    run.params = Params::make(pflags.net, pflags.nc, pflags.mce, pflags.mie, pflags.length);
    run.seed = seed;
    run.method = parse_method(run_method);
    run.output = output;
    if (app.got_subcommand(gen)) {
      cmd_generate(run, std::cout);
    } else if (app.got_subcommand(runc)) {
      cmd_run(run, std::cout);
    } else if (app.got_subcommand(sw)) {
      sweep.seeds.clear();
      for (int i = 0; i < seed_count; ++i) sweep.seeds.push_back(seed + static_cast<std::uint64_t>(i));
      if (!methods.empty()) {
        sweep.methods.clear();
        for (const auto& m : methods) sweep.methods.push_back(parse_method(m));
      }
      cmd_sweep(sweep, output, std::cout);
    } else if (app.got_subcommand(an)) {
      cmd_analyze(csv, parse_method(analyze_method), std::cout, max_depth, tree_out);
    }
  } catch (const Error& e) {
    std::cerr << "causelab: error[" << to_string(e.code()) << "]: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "causelab: error[internal]: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
