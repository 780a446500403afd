#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>

#include "causelab/analysis.hpp"
#include "causelab/generator.hpp"
#include "causelab/mlp.hpp"

namespace causelab {

// Settings shared by `generate` and `run`. Defaults follow the study
// protocol: 50 valid + 50 invalid training instances, 50 test instances.
struct RunConfig {
  Params params;
  DatasetSizes sizes;
  std::uint64_t seed = 1;
  Method method = Method::histogram;
  MlpConfig mlp;
  std::filesystem::path output;  // generate: directory; run: model file (optional)
  bool verbose = false;
};

inline constexpr const char* kCausationsFile = "causations.json";
inline constexpr const char* kTrainFile = "train.jsonl";
inline constexpr const char* kTestFile = "test.jsonl";

// Writes causations.json, train.jsonl and test.jsonl into config.output.
void cmd_generate(const RunConfig& config, std::ostream& out);

struct RunSummary {
  double accuracy = 0.0;
  ScoreClass score = ScoreClass::poor;
};

RunSummary cmd_run(const RunConfig& config, std::ostream& out);

void cmd_sweep(const SweepOptions& options, const std::filesystem::path& csv_path,
               std::ostream& out);

// Prints "Scores: Good=g, Fair=f, Poor=p" and the fitted tree. The tree
// text is also written to tree_path when given.
ScoreCounts cmd_analyze(const std::filesystem::path& csv_path, Method method, std::ostream& out,
                        std::optional<int> max_depth = std::nullopt,
                        const std::filesystem::path& tree_path = {});

}  // namespace causelab
