#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "causelab/analysis.hpp"
#include "causelab/generator.hpp"
#include "causelab/histogram.hpp"
#include "causelab/mlp.hpp"

namespace causelab {

// File layouts. Field order in every JSON object is fixed.
//
//   causations.json  {"params":{...},"causations":[{"id":0,"events":[4]},...]}
//   *.jsonl          one {"events":[...],"causation_ids":[...]} per line
//   model.json       {"kind":"histogram"|"mlp", "params":{...}, ...}
//   results.csv      net,nc,mce,mie,seed,method,accuracy,score,reason

std::string causations_to_json(const Params& params, const std::vector<Causation>& causations);
std::pair<Params, std::vector<Causation>> causations_from_json(std::string_view text);

std::string dataset_to_jsonl(const Dataset& dataset);
// Instances must have params.instance_length events. The returned dataset has no
// causations; attach them before relabeling.
Dataset dataset_from_jsonl(std::string_view text, const Params& params, Split split);

std::string histogram_model_to_json(const HistogramModel& model);
HistogramModel histogram_model_from_json(std::string_view text);

std::string mlp_model_to_json(const MlpModel& model, const MlpConfig& config, const Params& params);
struct LoadedMlp {
  MlpModel model;
  MlpConfig config;
  Params params;
};
LoadedMlp mlp_model_from_json(std::string_view text);

inline constexpr std::string_view kSweepCsvHeader =
    "net,nc,mce,mie,seed,method,accuracy,score,reason";

std::string sweep_to_csv(const std::vector<SweepRecord>& records);
// Parse errors carry the 1-based line number.
std::vector<SweepRecord> sweep_from_csv(std::string_view text);

// Human-readable listing in the layout
//   [0] ID=0, events: { 4 }
//   [0] Events: { 4 9 9 3 0 } Causation IDs: { 0 }
std::string format_causations(const std::vector<Causation>& causations);
std::string format_instances(const std::vector<Instance>& instances);

std::string read_file(const std::filesystem::path& path);
// Writes to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace causelab
