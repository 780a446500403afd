#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "causelab/analysis.hpp"
#include "causelab/commands.hpp"
#include "causelab/error.hpp"
#include "causelab/generator.hpp"
#include "causelab/histogram.hpp"
#include "causelab/io.hpp"
#include "causelab/mlp.hpp"
#include "causelab/model.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace causelab;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Causation conjunction learning: generators, learners and analysis";

  static py::exception<Error> error(m, "CauselabError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  py::class_<Params>(m, "Params")
      .def(py::init(&Params::make), py::arg("num_event_types"), py::arg("num_causations"),
           py::arg("max_cause_events"), py::arg("max_intervening_events"),
           py::arg("instance_length") = py::none())
      .def_readonly("num_event_types", &Params::num_event_types)
      .def_readonly("num_causations", &Params::num_causations)
      .def_readonly("max_cause_events", &Params::max_cause_events)
      .def_readonly("max_intervening_events", &Params::max_intervening_events)
      .def_readonly("instance_length", &Params::instance_length)
      .def("__eq__", [](const Params& a, const Params& b) { return a == b; })
      .def("__repr__", [](const Params& p) {
        std::ostringstream s;
        s << "Params(net=" << p.num_event_types << ", nc=" << p.num_causations
          << ", mce=" << p.max_cause_events << ", mie=" << p.max_intervening_events
          << ", length=" << p.instance_length << ")";
        return s.str();
      });

  py::class_<Causation>(m, "Causation")
      .def(py::init([](CausationId id, const EventList& events) {
             return Causation{id, canonical_multiset(events)};
           }),
           py::arg("id"), py::arg("events"))
      .def_readonly("id", &Causation::id)
      .def_readonly("events", &Causation::events);

  py::class_<Instance>(m, "Instance")
      .def_readonly("events", &Instance::events)
      .def_readonly("causation_ids", &Instance::causation_ids)
      .def_property_readonly("valid", &Instance::valid);

  py::enum_<Split>(m, "Split").value("train", Split::train).value("test", Split::test);

  py::class_<Dataset>(m, "Dataset")
      .def_readonly("params", &Dataset::params)
      .def_readonly("causations", &Dataset::causations)
      .def_readonly("instances", &Dataset::instances)
      .def_readonly("split", &Dataset::split)
      .def("valid_count", &Dataset::valid_count)
      .def("to_jsonl", &dataset_to_jsonl);

  py::class_<RandomSource>(m, "RandomSource")
      .def(py::init<std::uint64_t>(), py::arg("seed"))
      .def("uniform_int", &RandomSource::uniform_int);

  m.def("contains_causation",
        [](const EventList& e, const EventList& c, int g) { return contains_causation(e, c, g); },
        py::arg("events"), py::arg("causes"), py::arg("max_gap"));
  m.def("brute_force_contains",
        [](const EventList& e, const EventList& c, int g) { return brute_force_contains(e, c, g); },
        py::arg("events"), py::arg("causes"), py::arg("max_gap"));
  m.def("min_max_gap", [](const EventList& e, const EventList& c) { return min_max_gap(e, c); },
        py::arg("events"), py::arg("causes"));
  m.def("label_instance",
        [](const EventList& e, const std::vector<Causation>& cs, int g) {
          return label_instance(e, cs, g);
        },
        py::arg("events"), py::arg("causations"), py::arg("max_gap"));

  m.def("generate_causations", &generate_causations, py::arg("params"), py::arg("rng"));
  m.def("generate_stream", &generate_stream, py::arg("params"), py::arg("rng"));
  m.def("generate_training_set", &generate_training_set, py::arg("params"), py::arg("causations"),
        py::arg("n_valid") = 50, py::arg("n_invalid") = 50, py::arg("rng"));
  m.def("generate_test_set", &generate_test_set, py::arg("params"), py::arg("causations"),
        py::arg("n") = 50, py::arg("rng"));

  py::class_<LearnedCausation>(m, "LearnedCausation")
      .def_readonly("id", &LearnedCausation::id)
      .def_readonly("causes", &LearnedCausation::causes)
      .def_readonly("max_gap", &LearnedCausation::max_gap)
      .def_readonly("positives_seen", &LearnedCausation::positives_seen)
      .def_property_readonly("learnable", &LearnedCausation::learnable);

  py::class_<HistogramModel>(m, "HistogramModel")
      .def_readonly("params", &HistogramModel::params)
      .def_readonly("causations", &HistogramModel::causations)
      .def("to_json", &histogram_model_to_json);

  m.def("estimate_cause_multiset", &estimate_cause_multiset, py::arg("positives"));
  m.def("estimate_intervening_max", &estimate_intervening_max, py::arg("positives"),
        py::arg("causes"));
  m.def("train_histogram", &train_histogram, py::arg("train"));
  m.def("predict_histogram",
        [](const HistogramModel& model, const EventList& e) { return predict_histogram(model, e); },
        py::arg("model"), py::arg("events"));

  py::class_<MlpConfig>(m, "MlpConfig")
      .def(py::init<>())
      .def_readwrite("hidden_units", &MlpConfig::hidden_units)
      .def_readwrite("epochs", &MlpConfig::epochs)
      .def_readwrite("learning_rate", &MlpConfig::learning_rate)
      .def_readwrite("adam_beta1", &MlpConfig::adam_beta1)
      .def_readwrite("adam_beta2", &MlpConfig::adam_beta2)
      .def_readwrite("adam_epsilon", &MlpConfig::adam_epsilon)
      .def_readwrite("prediction_threshold", &MlpConfig::prediction_threshold)
      .def_readwrite("seed", &MlpConfig::seed);

  py::class_<MlpModel>(m, "MlpModel")
      .def_readonly("loss_trace", &MlpModel::loss_trace)
      .def_property_readonly("input_dim", &MlpModel::input_dim)
      .def_property_readonly("hidden_units", &MlpModel::hidden_units)
      .def_property_readonly("output_dim", &MlpModel::output_dim);

  m.def("encode_instance",
        [](const EventList& e, const Params& p) { return encode_instance(e, p); },
        py::arg("events"), py::arg("params"));
  m.def("encode_labels", &encode_labels, py::arg("causation_ids"), py::arg("num_causations"));
  m.def("train_mlp", py::overload_cast<const Dataset&, const MlpConfig&>(&train_mlp),
        py::arg("train"), py::arg("config"));
  m.def("predict_mlp",
        [](const MlpModel& model, const EventList& e, const MlpConfig& c, const Params& p) {
          return predict_mlp(model, e, c, p);
        },
        py::arg("model"), py::arg("events"), py::arg("config"), py::arg("params"));
  m.def("gradient_check",
        [](const MlpModel& model, const Dataset& ds, double step) {
          return gradient_check(model, make_batch(ds), step);
        },
        py::arg("model"), py::arg("dataset"), py::arg("step") = 1e-5);

  py::enum_<ScoreClass>(m, "ScoreClass")
      .value("Good", ScoreClass::good)
      .value("Fair", ScoreClass::fair)
      .value("Poor", ScoreClass::poor);
  py::enum_<Method>(m, "Method")
      .value("histogram", Method::histogram)
      .value("mlp", Method::mlp);

  m.def("accuracy_of", &accuracy_of, py::arg("predictions"), py::arg("truths"));
  m.def("score_class", &score_class, py::arg("accuracy"));

  py::class_<Combo>(m, "Combo")
      .def_readonly("net", &Combo::net)
      .def_readonly("nc", &Combo::nc)
      .def_readonly("mce", &Combo::mce)
      .def_readonly("mie", &Combo::mie);

  py::class_<SweepRecord>(m, "SweepRecord")
      .def_readonly("combo", &SweepRecord::combo)
      .def_readonly("seed", &SweepRecord::seed)
      .def_readonly("method", &SweepRecord::method)
      .def_readonly("accuracy", &SweepRecord::accuracy)
      .def_readonly("score", &SweepRecord::score)
      .def_readonly("skip_reason", &SweepRecord::skip_reason);

  py::class_<ScoreCounts>(m, "ScoreCounts")
      .def_readonly("good", &ScoreCounts::good)
      .def_readonly("fair", &ScoreCounts::fair)
      .def_readonly("poor", &ScoreCounts::poor)
      .def("total", &ScoreCounts::total);

  m.def(
      "run_sweep",
      [](std::vector<int> net, std::vector<int> nc, std::vector<int> mce, std::vector<int> mie,
         std::vector<std::uint64_t> seeds, std::vector<Method> methods, int train_valid,
         int train_invalid, int test_size, const MlpConfig& mlp, int jobs) {
        SweepOptions o;
        o.grid = {std::move(net), std::move(nc), std::move(mce), std::move(mie)};
        o.seeds = std::move(seeds);
        o.methods = std::move(methods);
        o.sizes = {train_valid, train_invalid, test_size};
        o.mlp = mlp;
        o.jobs = jobs;
        py::gil_scoped_release release;
        return run_sweep(o);
      },
      py::arg("net"), py::arg("nc"), py::arg("mce"), py::arg("mie"), py::arg("seeds"),
      py::arg("methods"), py::arg("train_valid") = 50, py::arg("train_invalid") = 50,
      py::arg("test_size") = 50, py::arg("mlp") = MlpConfig{}, py::arg("jobs") = 1);
  m.def("aggregate_scores", &aggregate_scores, py::arg("records"), py::arg("method"));
  m.def("sweep_to_csv", &sweep_to_csv, py::arg("records"));
  m.def("sweep_from_csv", &sweep_from_csv, py::arg("text"));
  m.def(
      "decision_tree_text",
      [](const std::vector<SweepRecord>& records, Method method, std::optional<int> max_depth) {
        return render_decision_tree(
            fit_decision_tree(tree_rows(summarize_combos(records, method)), max_depth));
      },
      py::arg("records"), py::arg("method"), py::arg("max_depth") = py::none());
  m.def(
      "tree_round_trips",
      [](const std::string& text) {
        return render_decision_tree(parse_decision_tree(text)) == text;
      },
      py::arg("text"));

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}
