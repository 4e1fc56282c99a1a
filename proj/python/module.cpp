#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "colearn/errors.hpp"
#include "colearn/hard_instances.hpp"
#include "colearn/harness.hpp"
#include "colearn/instance_io.hpp"
#include "colearn/mw.hpp"
#include "colearn/sample_size.hpp"

namespace py = pybind11;
using namespace colearn;

namespace {

py::dict round_dict(const RoundDiagnostics& r) {
  py::dict d;
  d["t"] = r.t;
  d["weight"] = r.weight;
  d["log_weight"] = r.log_weight;
  d["q"] = r.q;
  d["probabilities"] = r.probabilities;
  d["excluded"] = r.excluded;
  d["mixture_error"] = r.mixture_error;
  d["chi"] = r.chi;
  d["player_errors"] = r.player_errors;
  d["psi_count"] = r.psi_count();
  return d;
}

std::string diagnostics_csv(const RunResult& r) {
  std::ostringstream out;
  write_diagnostics(out, r.diagnostics);
  return out.str();
}

InstanceFactory generator_factory(std::string generator, std::size_t k, std::size_t d,
                                  std::optional<std::uint64_t> fixed_seed) {
  return [=](std::uint64_t seed, double eps) {
    return generate(generator, k, d, eps, fixed_seed.value_or(seed)).instance();
  };
}

}  // namespace

PYBIND11_MODULE(_colearn, m) {
  m.doc() = "Collaborative PAC learning with multiplicative weights";

  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
  py::register_exception<InvariantError>(m, "InvariantError", PyExc_RuntimeError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);

  py::enum_<Algorithm>(m, "Algorithm")
      .value("naive", Algorithm::naive)
      .value("basic_mw", Algorithm::basic_mw)
      .value("mweights", Algorithm::mweights)
      .value("single", Algorithm::single);
  py::enum_<TestMode>(m, "TestMode").value("sampled", TestMode::sampled).value("exact", TestMode::exact);
  py::enum_<LogBase>(m, "LogBase").value("natural", LogBase::natural).value("two", LogBase::two);

  py::class_<SampleSizeProfile>(m, "SampleSizeProfile")
      .def_static("theory", &SampleSizeProfile::theory, py::arg("constant") = 1.0)
      .def_static("tuned", &SampleSizeProfile::tuned, py::arg("base") = LogBase::natural)
      .def_property_readonly("mode", [](const SampleSizeProfile& p) { return std::string(to_string(p.mode)); })
      .def_readwrite("theory_constant", &SampleSizeProfile::theory_constant);

  m.def("sample_size", &sample_size, py::arg("epsilon"), py::arg("delta"), py::arg("d"),
        py::arg("profile") = SampleSizeProfile{});
  m.def("basic_round_count", &basic_round_count, py::arg("k"));
  m.def("mw_round_count", &mw_round_count, py::arg("k"), py::arg("delta"));
  m.def("tuned_round_count", &tuned_round_count, py::arg("k"), py::arg("base") = LogBase::natural);
  m.def("test_sample_count", &test_sample_count, py::arg("epsilon"), py::arg("delta"), py::arg("k"), py::arg("t"));
  m.def("weak_test_sample_count", &weak_test_sample_count, py::arg("epsilon"));
  m.def("tuned_test_sample_count", &tuned_test_sample_count, py::arg("epsilon"));

  py::class_<Instance>(m, "Instance")
      .def_readonly("id", &Instance::id)
      .def_readonly("capacity", &Instance::capacity)
      .def_property_readonly("k", &Instance::k)
      .def_property_readonly("has_exact_errors", &Instance::has_exact_errors);

  py::class_<HardInstance>(m, "HardInstance")
      .def_readonly("generator", &HardInstance::generator)
      .def_readonly("seed", &HardInstance::seed)
      .def_readonly("k", &HardInstance::k)
      .def_readonly("d", &HardInstance::d)
      .def_readonly("epsilon", &HardInstance::epsilon)
      .def_readonly("target_table", &HardInstance::target_table)
      .def_readonly("permutation", &HardInstance::permutation)
      .def("instance", &HardInstance::instance)
      .def("save", [](const HardInstance& h, const std::string& path) { save_instance(path, h); });

  m.def("generate", &generate, py::arg("generator"), py::arg("k"), py::arg("d"), py::arg("epsilon"),
        py::arg("seed"));
  m.def("gen_class_dup", &gen_class_dup, py::arg("k"), py::arg("outlier_points"), py::arg("common_points"),
        py::arg("seed") = 0);
  m.def("load_instance", [](const std::string& path) { return load_instance(path).instance; }, py::arg("path"));

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("epsilon", &RunConfig::epsilon)
      .def_readwrite("delta", &RunConfig::delta)
      .def_readwrite("d", &RunConfig::d)
      .def_readwrite("profile", &RunConfig::profile)
      .def_readwrite("rounds_override", &RunConfig::rounds_override)
      .def_readwrite("test_mode", &RunConfig::test_mode)
      .def_readwrite("algorithm", &RunConfig::algorithm)
      .def_readwrite("seed", &RunConfig::seed)
      .def_readwrite("budget", &RunConfig::budget)
      .def_readwrite("exact_diagnostics", &RunConfig::exact_diagnostics);

  py::class_<RunResult>(m, "RunResult")
      .def_property_readonly("learning_samples", [](const RunResult& r) { return r.ledger.total(Phase::learning); })
      .def_property_readonly("test_samples", [](const RunResult& r) { return r.ledger.total(Phase::test); })
      .def_property_readonly("samples_per_player", [](const RunResult& r) { return r.ledger.per_player(); })
      .def_readonly("player_errors", &RunResult::player_errors)
      .def_property_readonly("diagnostics",
                             [](const RunResult& r) {
                               py::list out;
                               for (const auto& d : r.diagnostics) out.append(round_dict(d));
                               return out;
                             })
      .def("diagnostics_csv", &diagnostics_csv);

  m.def("run", &run_algorithm, py::arg("instance"), py::arg("config"), py::call_guard<py::gil_scoped_release>());

  py::class_<Rate>(m, "Rate")
      .def_static("parse", &Rate::parse)
      .def_readonly("num", &Rate::num)
      .def_readonly("den", &Rate::den)
      .def("met", &Rate::met)
      .def("needed", &Rate::needed)
      .def_property_readonly("value", &Rate::value);

  py::class_<BudgetLadder>(m, "BudgetLadder")
      .def(py::init<>())
      .def_readwrite("start", &BudgetLadder::start)
      .def_readwrite("factor", &BudgetLadder::factor)
      .def_readwrite("max", &BudgetLadder::max)
      .def("rungs", &BudgetLadder::rungs);

  py::class_<BudgetSearchSpec>(m, "BudgetSearchSpec")
      .def(py::init<>())
      .def_readwrite("epsilons", &BudgetSearchSpec::epsilons)
      .def_readwrite("runs", &BudgetSearchSpec::runs)
      .def_readwrite("target", &BudgetSearchSpec::target)
      .def_readwrite("ladder", &BudgetSearchSpec::ladder)
      .def_readwrite("delta", &BudgetSearchSpec::delta)
      .def_readwrite("profile", &BudgetSearchSpec::profile)
      .def_readwrite("test_mode", &BudgetSearchSpec::test_mode)
      .def_readwrite("rounds_override", &BudgetSearchSpec::rounds_override)
      .def_readwrite("seed", &BudgetSearchSpec::seed)
      .def_readwrite("threads", &BudgetSearchSpec::threads)
      .def_readwrite("holdout", &BudgetSearchSpec::holdout);

  py::class_<ResultRow>(m, "ResultRow")
      .def(py::init<>())
      .def_readwrite("instance", &ResultRow::instance)
      .def_readwrite("algorithm", &ResultRow::algorithm)
      .def_readwrite("epsilon", &ResultRow::epsilon)
      .def_readwrite("budget", &ResultRow::budget)
      .def_readwrite("total_samples", &ResultRow::total_samples)
      .def_readwrite("learning_samples", &ResultRow::learning_samples)
      .def_readwrite("test_samples", &ResultRow::test_samples)
      .def_readwrite("success_rate", &ResultRow::success_rate)
      .def_readwrite("balance_ratio", &ResultRow::balance_ratio)
      .def_readwrite("seed_base", &ResultRow::seed_base)
      .def("found", &ResultRow::found)
      .def(py::self == py::self);

  m.attr("RESULT_COLUMNS") = std::vector<std::string>(kResultColumns.begin(), kResultColumns.end());
  m.attr("NOT_FOUND") = std::string(kNotFound);

  m.def(
      "budget_search",
      [](const std::string& generator, std::size_t k, std::size_t d, Algorithm algorithm,
         const BudgetSearchSpec& spec, std::optional<std::uint64_t> fixed_seed, std::string instance_id) {
        if (instance_id.empty())
          instance_id = generator + "-k" + std::to_string(k) + "-d" + std::to_string(d);
        return budget_search(generator_factory(generator, k, d, fixed_seed), instance_id, algorithm, spec);
      },
      py::arg("generator"), py::arg("k"), py::arg("d"), py::arg("algorithm"), py::arg("spec"),
      py::arg("fixed_seed") = py::none(), py::arg("instance_id") = "", py::call_guard<py::gil_scoped_release>());
  m.def(
      "budget_search_instance",
      [](const Instance& instance, Algorithm algorithm, const BudgetSearchSpec& spec) {
        const InstanceFactory factory = [instance](std::uint64_t, double) { return instance; };
        return budget_search(factory, instance.id.empty() ? "instance" : instance.id, algorithm, spec);
      },
      py::arg("instance"), py::arg("algorithm"), py::arg("spec"), py::call_guard<py::gil_scoped_release>());

  m.def("write_results", [](const std::vector<ResultRow>& rows, const std::string& path) { emit_results(rows, path); },
        py::arg("rows"), py::arg("path"));
  m.def("load_results", &load_results, py::arg("path"));
}
