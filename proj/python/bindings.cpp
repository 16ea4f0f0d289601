#include <pybind11/pybind11.h>
#include <pybind11/operators.h>
#include <pybind11/stl.h>

#include "chipgame/reports.hpp"
#include "chipgame/search.hpp"
#include "chipgame/serialize.hpp"
#include "chipgame/theory.hpp"

namespace py = pybind11;
using namespace chipgame;

namespace {

// Documents cross the boundary as plain Python dicts/lists.
py::object to_python(const Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

py::object script_doc(const ExchangeScript& s) {
  return to_python(Json{{"start", to_json(s.start())},
                        {"cost", s.cost()},
                        {"final", to_json(s.final_state())},
                        {"script", to_json(s)}});
}

PieceSet make_pieces(std::array<int, 3> chips, int jokers, int dominoes) {
  PieceSet s{chips, jokers, dominoes};
  if (!s.valid()) throw GameError(ErrorCode::DomainError, "counts must be nonnegative");
  return s;
}

Exchange make_rule1(const std::vector<std::string>& colors) {
  Json j{{"rule", 1}, {"colors", colors}};
  return exchange_from_json(j);
}

}  // namespace

PYBIND11_MODULE(_chipgame, m) {
  m.doc() = "Engine, planner and exact search for the chips/dominoes survival game";

  // Kept alive for the life of the interpreter; never released from C++.
  static PyObject* error =
      PyErr_NewException("chipgame.ChipGameError", PyExc_RuntimeError, nullptr);
  m.add_object("ChipGameError", py::handle(error));
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const GameError& e) {
      py::object exc = py::handle(error)(std::string(to_string(e.code())) + ": " + e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error, exc.ptr());
    }
  });

  py::class_<PieceSet>(m, "PieceSet")
      .def(py::init(&make_pieces), py::arg("chips"), py::arg("jokers") = 0,
           py::arg("dominoes") = 0)
      .def_readonly("chips", &PieceSet::chips)
      .def_readonly("jokers", &PieceSet::jokers)
      .def_readonly("dominoes", &PieceSet::dominoes)
      .def("total_chips", &PieceSet::total_chips)
      .def("to_dict", [](const PieceSet& s) { return to_python(to_json(s)); })
      .def(py::self == py::self)
      .def("__repr__", [](const PieceSet& s) { return "PieceSet" + to_string(s); });

  py::class_<Exchange>(m, "Exchange")
      .def_static("rule1", &make_rule1, py::arg("colors") = std::vector<std::string>{})
      .def_static("rule2", &Exchange::rule2)
      .def_property_readonly("rule", &Exchange::rule)
      .def_property_readonly("jokers_used", &Exchange::jokers_used)
      .def("to_dict", [](const Exchange& e) { return to_python(to_json(e)); })
      .def(py::self == py::self)
      .def("__repr__", [](const Exchange& e) { return to_string(e); });

  m.def("parse_distribution", &parse_distribution, py::arg("text"));
  m.def("apply", &apply, py::arg("state"), py::arg("exchange"));
  m.def("legal_exchanges", &legal_exchanges, py::arg("state"));
  m.def("max_principle_exchange", &max_principle_exchange, py::arg("state"));
  m.def("canonicalize", [](const PieceSet& s) { return canonicalize(s); }, py::arg("state"));
  m.def(
      "run_cooperative",
      [](int players, const PieceSet& initial, std::optional<int> max_steps) {
        PolicyRun run = run_cooperative({players, initial},
                                        max_steps.value_or(default_max_steps(players)));
        py::dict out = script_doc(run.script);
        out["stop"] = std::string(to_string(run.stop));
        return out;
      },
      py::arg("players"), py::arg("initial"), py::arg("max_steps") = py::none());

  m.def("phi", &theory::phi, py::arg("x"));
  m.def("collapse_dominoes", &theory::collapse_dominoes, py::arg("x"));
  m.def("joker_collapse_plan", [](int x) { return script_doc(theory::joker_collapse_plan(x)); });
  m.def("joker_mining_plan", [](int r) { return script_doc(theory::joker_mining_plan(r)); });
  m.def("domino_creation_plan", [](int r) { return script_doc(theory::domino_creation_plan(r)); });
  m.def("rule1_construction", [](int mm) { return script_doc(theory::rule1_construction(mm)); });
  m.def("solvable", [](const PieceSet& s) { return to_python(to_json(theory::solvable(s))); });
  m.def(
      "survival_plan",
      [](int players, const PieceSet& initial) {
        return script_doc(theory::survival_plan({players, initial}));
      },
      py::arg("players"), py::arg("initial"));
  m.def("worst_case_cost", [](int p) { return to_python(to_json(theory::worst_case_cost(p))); });
  m.def("best_case_cost", [](int p) { return to_python(to_json(theory::best_case_cost(p))); });
  m.def("general_upper_bound",
        [](int p) { return to_python(to_json(theory::general_upper_bound(p))); });

  m.def(
      "min_exchanges",
      [](const PieceSet& initial, int target) {
        return to_python(
            to_json(search::min_exchanges(initial, search::SearchGoal::reach_dominoes(target))));
      },
      py::arg("initial"), py::arg("target"));
  m.def("achieves_d3", [](const PieceSet& s) { return search::achieves_d3(s); });
  m.def("verify_minimal_sufficient", [](int max_total) {
    return to_python(to_json(search::verify_minimal_sufficient(max_total)));
  });
  m.def("rule1_only_enumerate", [](const PieceSet& s) {
    return to_python(to_json(search::rule1_only_enumerate(s)));
  });
}
