#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ctsched/agreeable.hpp"
#include "ctsched/disagreeable.hpp"
#include "ctsched/generators.hpp"
#include "ctsched/io.hpp"
#include "ctsched/oracle.hpp"
#include "ctsched/partition.hpp"

namespace py = pybind11;
using namespace ctsched;

namespace {

// Elements cross the boundary as tuples of labels: (a,) or (first, second).
py::list to_py(const Sequence& seq, const Instance& inst) {
  py::list out;
  for (const Element& e : seq) {
    if (e.is_pair()) {
      out.append(py::make_tuple(inst.label(e.first()), inst.label(e.second())));
    } else {
      out.append(py::make_tuple(inst.label(e.first())));
    }
  }
  return out;
}

Sequence from_py(const std::vector<std::vector<int>>& elems, const Instance& inst) {
  Sequence seq;
  for (const auto& e : elems) {
    if (e.size() == 1) {
      seq.push_back(Element::singleton(inst.id_of_label(e[0])));
    } else if (e.size() == 2) {
      seq.push_back(Element::pair(inst.id_of_label(e[0]), inst.id_of_label(e[1])));
    } else {
      throw InvalidInput("an element has one or two job labels");
    }
  }
  return seq;
}

py::dict result(const Solution& sol, const Instance& inst) {
  py::dict d;
  d["lmax"] = sol.lmax;
  d["makespan"] = sequence_span(sol.schedule, inst);
  d["schedule"] = to_py(sol.schedule, inst);
  d["proven_optimal"] = sol.proven_optimal;
  return d;
}

Instance make_instance(Time p, const std::vector<std::tuple<int, Time, Time>>& jobs) {
  std::vector<RawJob> raw;
  for (const auto& [label, b, d] : jobs) raw.push_back({label, b, d});
  return Instance(p, std::move(raw));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coupled-task maximum-lateness solvers";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<NotApplicable>(m, "NotApplicable", PyExc_ValueError);
  py::register_exception<CapExceeded>(m, "CapExceeded", PyExc_RuntimeError);

  py::class_<Instance>(m, "Instance")
      .def(py::init(&make_instance), py::arg("p"), py::arg("jobs"),
           "jobs: list of (label, b, d)")
      .def_static("from_json", &io::parse_instance)
      .def("to_json", &io::instance_json)
      .def_property_readonly("p", &Instance::p)
      .def("__len__", &Instance::size)
      .def("jobs", [](const Instance& inst) {
        py::list out;
        for (const auto& j : inst.jobs()) out.append(py::make_tuple(inst.label(j.id), j.b, j.d));
        return out;
      });

  m.def("classify", [](const Instance& inst) { return to_string(classify(inst)); });

  m.def(
      "generate",
      [](int n, const std::string& cls, std::uint64_t seed, std::optional<Time> p,
         double long_fraction) {
        GenConfig cfg;
        cfg.n = n;
        const auto c = parse_gen_class(cls);
        if (!c) throw InvalidInput("unknown class " + cls);
        cfg.cls = *c;
        cfg.seed = seed;
        if (p) cfg.p_range = {*p, *p};
        cfg.long_job_fraction = long_fraction;
        return generate(cfg);
      },
      py::arg("n"), py::arg("cls") = "general", py::arg("seed") = 0, py::arg("p") = py::none(),
      py::arg("long_fraction") = 0.0);

  m.def("solve_agreeable", [](const Instance& i) { return result(agreeable::solve(i), i); });
  m.def(
      "solve_disagreeable",
      [](const Instance& i, bool fast_cmax_bisect, std::int64_t search_budget) {
        disagreeable::Options opt;
        opt.fast_cmax_bisect = fast_cmax_bisect;
        opt.search_budget = search_budget;
        return result(disagreeable::solve(i, opt), i);
      },
      py::arg("instance"), py::arg("fast_cmax_bisect") = false,
      py::arg("search_budget") = disagreeable::Options{}.search_budget);
  m.def("solve_general_small",
        [](const Instance& i) { return result(partition::solve_general_small(i), i); });
  m.def("oracle_structured", [](const Instance& i) {
    const auto r = oracle_structured(i);
    return result(Solution{r.lmax, r.witness, true}, i);
  });
  m.def("oracle_timeline_lmax", [](const Instance& i) { return oracle_timeline(i).lmax; });

  m.def(
      "lmax",
      [](const Instance& i, const std::vector<std::vector<int>>& s) {
        return sequence_lmax(from_py(s, i), i);
      },
      py::arg("instance"), py::arg("schedule"));
  m.def(
      "violations",
      [](const Instance& i, const std::vector<std::vector<int>>& s) {
        std::vector<std::string> out;
        for (const auto& v : check_feasibility(schedule_timeline(from_py(s, i), i), i)) {
          out.push_back(v.message);
        }
        return out;
      },
      py::arg("instance"), py::arg("schedule"));
  m.def(
      "gantt",
      [](const Instance& i, const std::vector<std::vector<int>>& s) {
        return io::gantt(schedule_timeline(from_py(s, i), i), i);
      },
      py::arg("instance"), py::arg("schedule"));
}
