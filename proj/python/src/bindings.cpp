// Python bindings. Models cross the boundary as objects; documents and
// reports cross as JSON text, which the pure-Python wrapper turns into
// dicts.

#include <pomodel/analysis.hpp>
#include <pomodel/error.hpp>
#include <pomodel/io.hpp>
#include <pomodel/lattice.hpp>
#include <pomodel/transforms.hpp>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace pomodel;

namespace {

std::vector<std::string> split(const std::string &list) {
  std::vector<std::string> out;
  std::stringstream s(list);
  std::string item;
  while (std::getline(s, item, ','))
    if (!item.empty())
      out.push_back(item);
  return out;
}

PropertySelection selection(const std::vector<std::string> &names) {
  PropertySelection sel{false, false, false, false, false, false};
  for (const auto &n : names) {
    if (n == "omega1")
      sel.omega1 = true;
    else if (n == "omega2")
      sel.omega2 = true;
    else if (n == "omega3")
      sel.omega3 = true;
    else if (n == "psi")
      sel.psi = true;
    else if (n == "we")
      sel.we = true;
    else if (n == "ic")
      sel.ic = true;
    else
      throw py::value_error("unknown property '" + n + "'");
  }
  return sel;
}

std::vector<ElementIndex> lookup(const Poset &p,
                                 const std::vector<std::string> &ids) {
  std::vector<ElementIndex> out;
  for (const auto &id : ids)
    out.push_back(p.index_of(id));
  return out;
}

CheckpointEngine engine_of(const std::string &name) {
  if (name == "fast")
    return CheckpointEngine::Fast;
  if (name == "oracle")
    return CheckpointEngine::Oracle;
  if (name == "both")
    return CheckpointEngine::Both;
  throw py::value_error("engine must be fast, oracle or both");
}

DetectMode mode_of(const std::string &name) {
  if (name == "all")
    return DetectMode::All;
  if (name == "first")
    return DetectMode::First;
  if (name == "count")
    return DetectMode::Count;
  throw py::value_error("mode must be all, first or count");
}

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Partial-order models of concurrent computations";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
  error.call_once_and_store_result(
      [&]() { return py::exception<Error>(m, "Error"); });
  // args: (kind, message, witness, report JSON or None)
  py::register_exception_translator([](std::exception_ptr p) {
    auto raise = [](const Error &e, py::object witness, py::object report) {
      py::tuple args = py::make_tuple(e.kind(), e.what(), witness, report);
      PyErr_SetObject(error.get_stored().ptr(), args.ptr());
    };
    try {
      if (p)
        std::rethrow_exception(p);
    } catch (const NotWidthExtensible &e) {
      raise(e, py::cast(e.witness()), py::none());
    } catch (const SETransformFailed &e) {
      raise(e, py::list(), py::str(io::to_json(e.report()).dump()));
    } catch (const Error &e) {
      raise(e, py::list(), py::none());
    }
  });

  py::class_<Poset>(m, "Poset")
      .def(py::init([](const std::vector<std::string> &elements,
                       const std::vector<std::pair<std::string, std::string>>
                           &relations) {
             return Poset::build(elements, relations);
           }),
           py::arg("elements"), py::arg("relations") = py::list())
      .def("__len__", &Poset::size)
      .def("ids", &Poset::ids)
      .def("less",
           [](const Poset &p, const std::string &a, const std::string &b) {
             return p.less(p.index_of(a), p.index_of(b));
           })
      .def("concurrent",
           [](const Poset &p, const std::string &a, const std::string &b) {
             return p.concurrent(p.index_of(a), p.index_of(b));
           })
      .def("covers",
           [](const Poset &p) {
             std::vector<std::pair<std::string, std::string>> out;
             for (const auto &[a, b] : p.covers())
               out.emplace_back(p.id(a), p.id(b));
             return out;
           })
      .def("width",
           [](const Poset &p) {
             WidthResult w = width(p);
             return py::make_tuple(w.width, ids_of(p, w.antichain));
           })
      .def("chain_partition",
           [](const Poset &p) {
             std::vector<std::vector<std::string>> out;
             for (const auto &chain : minimum_chain_partition(p).chains) {
               std::vector<std::string> ids;
               for (ElementIndex e : chain)
                 ids.push_back(p.id(e));
               out.push_back(ids);
             }
             return out;
           })
      .def("check_width_extensible",
           [](const Poset &p) {
             Verdict v = check_width_extensible(p);
             return py::make_tuple(v.holds, v.witness);
           })
      .def("width_antichains", &enumerate_width_antichains)
      .def("to_json", [](const Poset &p) { return io::to_json(p).dump(); });

  py::class_<EventModel>(m, "EventModel")
      .def_static(
          "from_json",
          [](const std::string &text, bool allow_empty_process) {
            return io::event_from_json(io::parse(text),
                                       EventModelOptions{allow_empty_process});
          },
          py::arg("text"), py::arg("allow_empty_process") = false)
      .def("to_json", [](const EventModel &e) { return io::to_json(e).dump(); })
      .def_property_readonly("poset", &EventModel::poset,
                             py::return_value_policy::reference_internal)
      .def_property_readonly("processes", &EventModel::processes)
      .def("length", &EventModel::length)
      .def("is_asc", &EventModel::is_asc)
      .def("is_consistent_cut",
           [](const EventModel &e, const std::vector<std::string> &cut) {
             return e.is_consistent_cut(cut);
           })
      .def("cuts",
           [](const EventModel &e, std::size_t max_cuts) {
             std::vector<std::vector<std::string>> out;
             DownsetEnumerator en(e);
             while (auto c = en.next()) {
               if (out.size() == max_cuts)
                 throw CountExceeded("more than " + std::to_string(max_cuts) +
                                     " cuts");
               out.push_back(cut_events(e, *c));
             }
             return out;
           },
           py::arg("max_cuts") = 1'000'000)
      .def("cut_to_antichain", &cut_to_antichain)
      .def("antichain_to_cut", &antichain_to_cut);

  py::class_<StateModel>(m, "StateModel")
      .def_static("from_json",
                  [](const std::string &text) {
                    return io::state_from_json(io::parse(text));
                  })
      .def("to_json", [](const StateModel &s) { return io::to_json(s).dump(); })
      .def_property_readonly("poset", &StateModel::poset,
                             py::return_value_policy::reference_internal)
      .def_property_readonly("chains", &StateModel::chains)
      .def("final_index", &StateModel::final_index)
      .def("state",
           [](const StateModel &s, int chain, std::size_t k) {
             return s.poset().id(s.state(chain, k));
           })
      .def(
          "check",
          [](const StateModel &s, const std::string &properties) {
            return io::to_json(check_properties(s, selection(split(properties))))
                .dump();
          },
          py::arg("properties") = "omega1,omega2,omega3,psi,we,ic")
      .def("width_antichains",
           [](const StateModel &s) {
             std::vector<std::vector<std::string>> out;
             WidthAntichainEnumerator en(s);
             while (auto c = en.next())
               out.push_back(ids_of(s.poset(), *c));
             return out;
           })
      .def("meet_join",
           [](const StateModel &s, const std::vector<std::string> &a,
              const std::vector<std::string> &b) {
             const Poset &p = s.poset();
             MeetJoin mj = lattice_meet_join(s, lookup(p, a), lookup(p, b));
             return py::make_tuple(ids_of(p, mj.meet), ids_of(p, mj.join));
           })
      .def(
          "detect",
          [](const StateModel &s, const std::string &predicate,
             const std::string &mode) {
            PredicatePtr b =
                io::predicate_node_from_json(io::parse(predicate));
            DetectMode dm = mode_of(mode);
            return io::detection_to_json(s, detect_width_predicate(s, *b, dm),
                                         dm)
                .dump();
          },
          py::arg("predicate"), py::arg("mode") = "all")
      .def(
          "useless_checkpoints",
          [](const StateModel &s, const std::vector<std::vector<std::size_t>> &marks,
             const std::string &engine) {
            return io::to_json(find_useless_checkpoints(
                                   s, CheckpointMarking{marks}, engine_of(engine)))
                .dump();
          },
          py::arg("marks"), py::arg("engine") = "fast");

  m.def("es_transform", &es_transform);
  m.def("se_transform", [](const StateModel &s) -> py::object {
    SETransformOutcome out = se_transform(s);
    if (out.ok())
      return py::cast(std::move(*out.model));
    throw SETransformFailed("state model has no event model",
                            std::move(*out.invalidity));
  });
  m.def("same_state_order", &same_state_order);
  m.def("equivalent", [](const EventModel &a, const EventModel &b) {
    return equivalent(a, b);
  });
}
