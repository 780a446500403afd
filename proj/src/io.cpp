#include "causelab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "causelab/error.hpp"

namespace causelab {

using Json = nlohmann::ordered_json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) {
  throw Error(ErrorCode::parse_error, what);
}

Json parse_json(std::string_view text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    parse_fail(std::string(what) + ": " + e.what());
  }
}

Json params_json(const Params& p) {
  return Json{{"num_event_types", p.num_event_types},
              {"num_causations", p.num_causations},
              {"max_cause_events", p.max_cause_events},
              {"max_intervening_events", p.max_intervening_events},
              {"instance_length", p.instance_length}};
}

Params params_from(const Json& j) {
  Params p;
  p.num_event_types = j.at("num_event_types").get<int>();
  p.num_causations = j.at("num_causations").get<int>();
  p.max_cause_events = j.at("max_cause_events").get<int>();
  p.max_intervening_events = j.at("max_intervening_events").get<int>();
  p.instance_length = j.at("instance_length").get<int>();
  p.validate();
  return p;
}

Json matrix_json(const Matrix& m) {
  return Json{{"rows", m.rows}, {"cols", m.cols}, {"data", m.data}};
}

Matrix matrix_from(const Json& j) {
  Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  m.data = j.at("data").get<std::vector<double>>();
  if (m.data.size() != m.rows * m.cols) parse_fail("matrix data does not match its shape");
  return m;
}

template <typename F>
auto guarded(const char* what, F&& body) {
  try {
    return body();
  } catch (const Json::exception& e) {
    parse_fail(std::string(what) + ": " + e.what());
  }
}

std::string format_accuracy(double a) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", a);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::string causations_to_json(const Params& params, const std::vector<Causation>& causations) {
  Json list = Json::array();
  for (const Causation& c : causations) list.push_back(Json{{"id", c.id}, {"events", c.events}});
  return Json{{"params", params_json(params)}, {"causations", list}}.dump() + "\n";
}

std::pair<Params, std::vector<Causation>> causations_from_json(std::string_view text) {
  const Json j = parse_json(text, "causations");
  return guarded("causations", [&] {
    std::pair<Params, std::vector<Causation>> out{params_from(j.at("params")), {}};
    for (const Json& c : j.at("causations")) {
      out.second.push_back({c.at("id").get<int>(), canonical_multiset(c.at("events").get<EventList>())});
    }
    return out;
  });
}

std::string dataset_to_jsonl(const Dataset& dataset) {
  std::string out;
  for (const Instance& inst : dataset.instances) {
    out += Json{{"events", inst.events}, {"causation_ids", inst.causation_ids}}.dump();
    out += '\n';
  }
  return out;
}

Dataset dataset_from_jsonl(std::string_view text, const Params& params, Split split) {
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  Dataset ds;
  ds.params = params;
  ds.split = split;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    const std::string where = "dataset line " + std::to_string(number);
    const Json j = parse_json(line, where.c_str());
    Instance inst = guarded(where.c_str(), [&] {
      return Instance{j.at("events").get<EventList>(), j.at("causation_ids").get<IdSet>()};
    });
    if (inst.events.size() != static_cast<std::size_t>(params.instance_length)) {
      parse_fail(where + ": expected " + std::to_string(params.instance_length) + " events, got " +
                 std::to_string(inst.events.size()));
    }
    ds.instances.push_back(std::move(inst));
  }
  return ds;
}

std::string histogram_model_to_json(const HistogramModel& model) {
  Json list = Json::array();
  for (const LearnedCausation& c : model.causations) {
    list.push_back(Json{{"id", c.id},
                        {"learnable", c.learnable()},
                        {"causes", c.causes},
                        {"max_gap", c.max_gap},
                        {"positives_seen", c.positives_seen}});
  }
  return Json{{"kind", "histogram"}, {"params", params_json(model.params)}, {"causations", list}}
             .dump(2) +
         "\n";
}

HistogramModel histogram_model_from_json(std::string_view text) {
  const Json j = parse_json(text, "histogram model");
  return guarded("histogram model", [&] {
    if (j.at("kind") != "histogram") parse_fail("histogram model: wrong kind");
    HistogramModel model{params_from(j.at("params")), {}};
    for (const Json& c : j.at("causations")) {
      model.causations.push_back({c.at("id").get<int>(), c.at("causes").get<EventList>(),
                                  c.at("max_gap").get<int>(), c.at("positives_seen").get<int>()});
    }
    return model;
  });
}

std::string mlp_model_to_json(const MlpModel& model, const MlpConfig& config, const Params& params) {
  const Json cfg{{"hidden_units", config.hidden_units},
                 {"epochs", config.epochs},
                 {"learning_rate", config.learning_rate},
                 {"adam_beta1", config.adam_beta1},
                 {"adam_beta2", config.adam_beta2},
                 {"adam_epsilon", config.adam_epsilon},
                 {"prediction_threshold", config.prediction_threshold},
                 {"seed", config.seed}};
  return Json{{"kind", "mlp"},
              {"params", params_json(params)},
              {"config", cfg},
              {"w1", matrix_json(model.weights.w1)},
              {"b1", model.weights.b1},
              {"w2", matrix_json(model.weights.w2)},
              {"b2", model.weights.b2},
              {"adam_step", model.adam.step},
              {"loss_trace", model.loss_trace}}
             .dump() +
         "\n";
}

LoadedMlp mlp_model_from_json(std::string_view text) {
  const Json j = parse_json(text, "mlp model");
  return guarded("mlp model", [&] {
    if (j.at("kind") != "mlp") parse_fail("mlp model: wrong kind");
    LoadedMlp out;
    out.params = params_from(j.at("params"));
    const Json& c = j.at("config");
    out.config.hidden_units = c.at("hidden_units").get<int>();
    out.config.epochs = c.at("epochs").get<int>();
    out.config.learning_rate = c.at("learning_rate").get<double>();
    out.config.adam_beta1 = c.at("adam_beta1").get<double>();
    out.config.adam_beta2 = c.at("adam_beta2").get<double>();
    out.config.adam_epsilon = c.at("adam_epsilon").get<double>();
    out.config.prediction_threshold = c.at("prediction_threshold").get<double>();
    out.config.seed = c.at("seed").get<std::uint64_t>();
    out.model.weights.w1 = matrix_from(j.at("w1"));
    out.model.weights.b1 = j.at("b1").get<std::vector<double>>();
    out.model.weights.w2 = matrix_from(j.at("w2"));
    out.model.weights.b2 = j.at("b2").get<std::vector<double>>();
    out.model.adam.step = j.at("adam_step").get<long>();
    out.model.loss_trace = j.at("loss_trace").get<std::vector<double>>();
    const auto& w = out.model.weights;
    if (w.b1.size() != w.w1.cols || w.w2.rows != w.w1.cols || w.b2.size() != w.w2.cols) {
      parse_fail("mlp model: inconsistent layer shapes");
    }
    return out;
  });
}

std::string sweep_to_csv(const std::vector<SweepRecord>& records) {
  std::string out(kSweepCsvHeader);
  out += '\n';
  for (const SweepRecord& r : records) {
    out += std::to_string(r.combo.net) + ',' + std::to_string(r.combo.nc) + ',' +
           std::to_string(r.combo.mce) + ',' + std::to_string(r.combo.mie) + ',' +
           std::to_string(r.seed) + ',' + std::string(to_string(r.method)) + ',';
    if (r.skipped()) {
      out += ",Skipped," + r.skip_reason;
    } else {
      out += format_accuracy(*r.accuracy) + ',' + std::string(to_string(*r.score)) + ',';
    }
    out += '\n';
  }
  return out;
}

std::vector<SweepRecord> sweep_from_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int number = 0;
  std::vector<SweepRecord> records;
  bool seen_header = false;
  std::size_t columns = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fail = [&](const std::string& what) -> void {
      parse_fail("csv line " + std::to_string(number) + ": " + what);
    };
    if (!seen_header) {
      // The eight-column form without the reason column is also accepted.
      if (line == kSweepCsvHeader) {
        columns = 9;
      } else if (line == kSweepCsvHeader.substr(0, kSweepCsvHeader.rfind(','))) {
        columns = 8;
      } else {
        fail("unexpected header");
      }
      seen_header = true;
      continue;
    }
    const auto f = split_csv_line(line);
    if (f.size() != columns) fail("expected " + std::to_string(columns) + " fields");
    SweepRecord r;
    try {
      r.combo = {std::stoi(f[0]), std::stoi(f[1]), std::stoi(f[2]), std::stoi(f[3])};
      r.seed = std::stoull(f[4]);
      r.method = parse_method(f[5]);
      if (f[7] == "Skipped") {
        r.skip_reason = columns == 9 ? f[8] : "";
      } else {
        r.accuracy = std::stod(f[6]);
        r.score = parse_score(f[7]);
      }
    } catch (const Error& e) {
      fail(e.what());
    } catch (const std::logic_error&) {
      fail("malformed number");
    }
    if (r.accuracy && (*r.accuracy < 0.0 || *r.accuracy > 1.0)) fail("accuracy out of range");
    records.push_back(std::move(r));
  }
  if (!seen_header) parse_fail("csv: missing header");
  return records;
}

std::string format_causations(const std::vector<Causation>& causations) {
  std::ostringstream out;
  for (std::size_t i = 0; i < causations.size(); ++i) {
    out << '[' << i << "] ID=" << causations[i].id << ", events: {";
    for (EventType e : causations[i].events) out << ' ' << e;
    out << " }\n";
  }
  return out.str();
}

std::string format_instances(const std::vector<Instance>& instances) {
  std::ostringstream out;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    out << '[' << i << "] Events: {";
    for (EventType e : instances[i].events) out << ' ' << e;
    out << " } Causation IDs: {";
    for (CausationId id : instances[i].causation_ids) out << ' ' << id;
    out << " }\n";
  }
  return out.str();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::io_error, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw Error(ErrorCode::io_error, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::io_error, "cannot rename onto " + path.string() + ": " + ec.message());
}

}  // namespace causelab
