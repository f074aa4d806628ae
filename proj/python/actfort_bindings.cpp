#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "actfort/ecosystem.hpp"
#include "actfort/errors.hpp"
#include "actfort/graph.hpp"
#include "actfort/report.hpp"
#include "actfort/strategy.hpp"

namespace py = pybind11;

namespace {

std::string diagnostics_json(const actfort::Ecosystem& ecosystem) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& d : actfort::validate(ecosystem)) {
    out.push_back({{"account", d.account_id}, {"code", d.code}, {"message", d.message}});
  }
  return out.dump();
}

std::string depth_json(const actfort::Ecosystem& ecosystem, const std::string& id) {
  actfort::DepthResult depth = actfort::classify_depth(ecosystem, id);
  nlohmann::ordered_json out;
  out["account"] = id;
  out["class"] = std::string(actfort::depth_class_name(depth.cls));
  out["rounds"] = depth.rounds ? nlohmann::ordered_json(*depth.rounds)
                               : nlohmann::ordered_json(nullptr);
  return out.dump();
}

std::string harden_json(const actfort::Ecosystem& ecosystem, const std::string& target,
                        int budget) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& cut : actfort::harden(ecosystem, target, budget)) {
    out.push_back({{"account", cut.account_id},
                   {"kind", actfort::to_string(cut.kind)},
                   {"before", std::string(actfort::depth_class_name(cut.before))},
                   {"after", std::string(actfort::depth_class_name(cut.after))}});
  }
  return out.dump();
}

std::string report_json(const actfort::Ecosystem& ecosystem, int max_group_size,
                        bool include_closure) {
  actfort::DependencyGraph graph = actfort::build_tdg(ecosystem, max_group_size);
  actfort::StatsReport stats;
  if (!ecosystem.accounts().empty()) stats = actfort::compute_stats(ecosystem);
  std::optional<actfort::ClosureResult> closure;
  if (include_closure) closure = actfort::victim_closure(ecosystem);
  return actfort::export_json(graph, stats, closure).dump();
}

}  // namespace

PYBIND11_MODULE(_actfort, m) {
  m.doc() = "Account-takeover dependency analysis engine";

  static py::exception<actfort::Error> error(m, "ActfortError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const actfort::Error& e) {
      std::string message =
          std::string(actfort::errc_name(e.code())) + ": " + e.what();
      py::set_error(error, message.c_str());
    }
  });

  py::class_<actfort::Ecosystem>(m, "Ecosystem")
      .def("account_ids",
           [](const actfort::Ecosystem& e) {
             std::vector<std::string> ids;
             for (const auto& a : e.accounts()) ids.push_back(a.id);
             return ids;
           })
      .def("to_json", [](const actfort::Ecosystem& e) { return e.dump(2); });

  m.def("load_ecosystem",
        [](const std::string& text) { return actfort::Ecosystem::load(text); },
        py::arg("text"));
  m.def("load_ecosystem_file", &actfort::Ecosystem::load_file, py::arg("path"));
  m.def("validate_json", &diagnostics_json, py::arg("ecosystem"));
  m.def("victim_closure_json",
        [](const actfort::Ecosystem& e, const std::vector<std::string>& seed) {
          return actfort::closure_to_json(actfort::victim_closure(e, seed)).dump();
        },
        py::arg("ecosystem"), py::arg("seed") = std::vector<std::string>{});
  m.def("attack_chains",
        [](const actfort::Ecosystem& e, const std::string& target, int max_depth,
           bool find_all) {
          std::vector<std::vector<std::string>> out;
          for (const auto& chain :
               actfort::attack_chain(e, target, max_depth, find_all)) {
            out.push_back(chain.account_sequence());
          }
          return out;
        },
        py::arg("ecosystem"), py::arg("target"), py::arg("max_depth") = 0,
        py::arg("find_all") = false);
  m.def("classify_depth_json", &depth_json, py::arg("ecosystem"), py::arg("account"));
  m.def("harden_json", &harden_json, py::arg("ecosystem"), py::arg("target"),
        py::arg("budget") = 1);
  m.def("stats_json",
        [](const actfort::Ecosystem& e) {
          return actfort::stats_to_json(actfort::compute_stats(e)).dump();
        },
        py::arg("ecosystem"));
  m.def("export_dot",
        [](const actfort::Ecosystem& e, int max_group_size) {
          return actfort::export_dot(actfort::build_tdg(e, max_group_size));
        },
        py::arg("ecosystem"), py::arg("max_group_size") = 2);
  m.def("report_json", &report_json, py::arg("ecosystem"),
        py::arg("max_group_size") = 2, py::arg("include_closure") = false);

  m.attr("__version__") = "0.1.0";
}
