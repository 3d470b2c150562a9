#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spanlab/conversion.hpp"
#include "spanlab/divergence.hpp"
#include "spanlab/ecs.hpp"
#include "spanlab/errors.hpp"
#include "spanlab/growthfit.hpp"
#include "spanlab/loopsim.hpp"
#include "spanlab/report.hpp"
#include "spanlab/sensitivity.hpp"

namespace py = pybind11;
using namespace spanlab;

namespace {

std::vector<growthfit::Observation> observations(const std::vector<double>& t,
                                                 const std::vector<double>& tokens) {
  if (t.size() != tokens.size()) throw DomainError("t and tokens differ in length");
  std::vector<growthfit::Observation> obs;
  obs.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) obs.push_back({t[i], tokens[i]});
  return obs;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Context span divergence toolkit";
  m.attr("__version__") = std::string(report::toolkit_version());

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<ParseError>(m, "ParseError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  py::class_<ReadingParams>(m, "ReadingParams")
      .def(py::init<>())
      .def(py::init<double, double>(), py::arg("words_per_minute"), py::arg("tokens_per_word"))
      .def_property_readonly("words_per_minute", &ReadingParams::words_per_minute)
      .def_property_readonly("tokens_per_word", &ReadingParams::tokens_per_word);

  m.def("tokens_per_second", &tokens_per_second, py::arg("params") = ReadingParams{});
  m.def("seconds_to_tokens", &seconds_to_tokens, py::arg("seconds"),
        py::arg("params") = ReadingParams{});
  m.def(
      "ecs",
      [](double session_seconds, double csf, const ReadingParams& reading) {
        const ecs::EcsAnchor anchor{0, session_seconds, csf, {}};
        ecs::check_anchor(anchor);
        return ecs::ecs_at_anchor(anchor, reading);
      },
      py::arg("session_seconds"), py::arg("csf"), py::arg("params") = ReadingParams{},
      "S * R_tok * CSF in tokens.");

  py::class_<growthfit::GrowthFit>(m, "GrowthFit")
      .def_readonly("lambda_", &growthfit::GrowthFit::lambda)
      .def_readonly("c0", &growthfit::GrowthFit::c0)
      .def_readonly("ci_low", &growthfit::GrowthFit::ci_low)
      .def_readonly("ci_high", &growthfit::GrowthFit::ci_high)
      .def_readonly("doubling_months", &growthfit::GrowthFit::doubling_months)
      .def_readonly("cagr", &growthfit::GrowthFit::cagr_continuous)
      .def_readonly("r_squared", &growthfit::GrowthFit::r_squared)
      .def_readonly("n_points", &growthfit::GrowthFit::n_points);

  m.def(
      "fit_exponential",
      [](const std::vector<double>& t, const std::vector<double>& tokens) {
        return growthfit::fit_exponential(observations(t, tokens));
      },
      py::arg("t"), py::arg("tokens"));
  m.def(
      "bootstrap_ci",
      [](const std::vector<double>& t, const std::vector<double>& tokens, int resamples,
         std::uint64_t seed) {
        const auto ci = growthfit::bootstrap_ci(observations(t, tokens), resamples, seed);
        return py::make_tuple(ci.low, ci.high);
      },
      py::arg("t"), py::arg("tokens"), py::arg("resamples") = 10000, py::arg("seed") = 42);
  m.def("doubling_time_months", &growthfit::doubling_time_months, py::arg("lam"));
  m.def("cagr", &growthfit::cagr, py::arg("lam"));

  m.def(
      "crossover_year",
      [](const std::vector<int>& years, const std::vector<double>& ai,
         const std::vector<double>& ecs_tokens) -> py::object {
        if (years.size() != ai.size() || years.size() != ecs_tokens.size()) {
          throw DomainError("years, ai and ecs differ in length");
        }
        std::vector<YearValue> a, e;
        for (std::size_t i = 0; i < years.size(); ++i) {
          a.push_back({years[i], ai[i], std::nullopt});
          e.push_back({years[i], ecs_tokens[i], std::nullopt});
        }
        const auto c = divergence::crossover_year(
            divergence::ratio_series(YearlySeries(a), YearlySeries(e), {}));
        if (!c.found()) return py::none();
        return py::int_(c.year);
      },
      py::arg("years"), py::arg("ai"), py::arg("ecs"));

  m.def(
      "simulate_loop",
      [](double growth_rate, int periods, std::optional<int> intervene_at, double floor_factor) {
        const auto params = loopsim::default_params(growth_rate);
        std::optional<loopsim::Intervention> intervention;
        if (intervene_at) {
          intervention = loopsim::Intervention{*intervene_at,
                                               floor_factor * params.maintenance_practice};
        }
        const auto traj =
            loopsim::simulate(loopsim::default_initial_state(), params, periods, intervention);
        std::vector<double> capacity;
        for (const auto& s : traj) capacity.push_back(s.capacity);
        return py::make_tuple(capacity, std::string(loopsim::trajectory_name(
                                            loopsim::classify(traj, 1.0))));
      },
      py::arg("growth_rate"), py::arg("periods") = 40, py::arg("intervene_at") = py::none(),
      py::arg("floor_factor") = 1.5,
      "Capacity trajectory and its classification under the default loop parameters.");

  m.def(
      "run_report",
      [](const std::string& config_path, std::optional<std::string> output_dir) {
        auto config = report::load_config(config_path);
        if (output_dir) config.output_dir = *output_dir;
        std::vector<std::string> names;
        for (const auto& [name, text] : report::run_pipeline(config)) names.push_back(name);
        return names;
      },
      py::arg("config_path"), py::arg("output_dir") = py::none(),
      "Runs the full pipeline and returns the written file names.");
}
