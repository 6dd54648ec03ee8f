#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "hda/chains.hpp"
#include "hda/error.hpp"
#include "hda/generators.hpp"
#include "hda/io.hpp"
#include "hda/nerve.hpp"
#include "hda/pv.hpp"
#include "hda/taming.hpp"

namespace py = pybind11;
using namespace hda;

namespace {

// Rationals travel as fractions.Fraction; ints and "p/q" strings are
// accepted on the way in.
py::object to_fraction(const Rational& r) {
  static py::object fraction = py::module_::import("fractions").attr("Fraction");
  return fraction(to_string(r));
}

Rational from_py(const py::handle& obj) {
  if (py::isinstance<py::float_>(obj)) throw DomainError("floats are not accepted, use Fraction or a string");
  return parse_rational(py::str(obj).cast<std::string>());
}

Coords coords_from_py(const py::sequence& seq) {
  Coords out;
  for (const auto& item : seq) out.push_back(from_py(item));
  return out;
}

py::list coords_to_py(const Coords& xs) {
  py::list out;
  for (const auto& x : xs) out.append(to_fraction(x));
  return out;
}

py::tuple point_to_py(const CubeSet& x, const Point& p) {
  return py::make_tuple(x.id(p.cube), coords_to_py(p.coords));
}

std::vector<std::string> cube_ids(const CubeSet& x, const std::vector<CubeIndex>& cubes) {
  std::vector<std::string> out;
  for (CubeIndex c : cubes) out.push_back(x.id(c));
  return out;
}

CubeChain make_chain(const CubeSet& x, const std::string& from, const std::string& to,
                     const std::vector<std::string>& cubes) {
  CubeChain c{x.index(from), x.index(to), {}};
  for (const auto& id : cubes) c.cubes.push_back(x.index(id));
  validate_chain(x, c);
  return c;
}

FlowKind flow_kind(const std::string& name) {
  if (name == "rational") return FlowKind::Rational;
  if (name == "paper") return FlowKind::Paper;
  throw DomainError("unknown flow '" + name + "'");
}

py::dict homology_to_py(const HomologyResult& h) {
  py::list torsion;
  for (const auto& row : h.torsion) {
    py::list degree;
    for (const auto& v : row) degree.append(py::int_(py::str(v.get_str())));
    torsion.append(degree);
  }
  py::dict out;
  out["betti"] = h.betti;
  out["torsion"] = torsion;
  return out;
}

}  // namespace

PYBIND11_MODULE(_hdapaths, m) {
  m.doc() = "Directed paths, cube chains and their nerves on finite pre-cubical sets";

  auto& error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", error.ptr());
  py::register_exception<FormatError>(m, "FormatError", error.ptr());

  py::class_<CubeSet>(m, "CubeSet")
      .def_static(
          "from_json", [](const std::string& text, bool check) { return parse_cubeset(text, check).cubes; },
          py::arg("text"), py::arg("validate") = true)
      .def("to_json", [](const CubeSet& x) { return write_cubeset(x); })
      .def("__len__", &CubeSet::size)
      .def("__contains__", [](const CubeSet& x, const std::string& id) { return x.find(id).has_value(); })
      .def("ids",
           [](const CubeSet& x) {
             std::vector<std::string> out;
             for (CubeIndex c = 0; c < x.size(); ++c) out.push_back(x.id(c));
             return out;
           })
      .def("dim", [](const CubeSet& x, const std::string& id) { return x.dim(x.index(id)); })
      .def("face", [](const CubeSet& x, const std::string& id, int i, int alpha) {
        const CubeIndex c = x.index(id);
        if (i < 1 || i > x.dim(c) || (alpha != 0 && alpha != 1)) throw DomainError("no such face");
        return x.id(x.face(c, i, alpha));
      })
      .def("vertices", [](const CubeSet& x) { return cube_ids(x, x.vertices()); })
      .def_property_readonly("max_dim", &CubeSet::max_dim)
      .def("__repr__", [](const CubeSet& x) { return "<CubeSet with " + std::to_string(x.size()) + " cubes>"; });

  m.def("full_cube", &full_cube, py::arg("n"));
  m.def("boundary_cube", &boundary_cube, py::arg("n"));
  m.def("z_complex", &z_complex, py::arg("n"));
  m.def("q_complex", &q_complex, py::arg("n"));
  m.def("glued_squares", &glued_squares);
  m.def(
      "grid",
      [](const std::vector<long>& extent, const std::vector<std::vector<long>>& omitted) {
        return grid(extent, omitted);
      },
      py::arg("extent"), py::arg("omitted") = std::vector<std::vector<long>>{});

  m.def("validate", [](const CubeSet& x) {
    std::vector<std::string> out;
    for (const auto& v : validate(x)) out.push_back(v.message);
    return out;
  });
  m.def("is_proper", &is_proper);
  m.def("is_non_self_linked", &is_non_self_linked);

  py::class_<PLPath>(m, "Path")
      .def_static("from_json", &parse_path, py::arg("cubes"), py::arg("text"))
      .def("to_json", [](const PLPath& p, const CubeSet& x) { return write_path(x, p); }, py::arg("cubes"))
      .def_property_readonly("t_begin", [](const PLPath& p) { return to_fraction(p.t_begin()); })
      .def_property_readonly("t_end", [](const PLPath& p) { return to_fraction(p.t_end()); })
      .def("__eq__", [](const PLPath& a, const PLPath& b) { return a == b; });

  m.def(
      "linear_path",
      [](const CubeSet& x, const std::string& cube, const py::sequence& a, const py::sequence& b) {
        auto p = linear_path(x.index(cube), coords_from_py(a), coords_from_py(b));
        validate_path(x, p);
        return p;
      },
      py::arg("cubes"), py::arg("cube"), py::arg("start"), py::arg("end"));
  m.def("concatenate", &concatenate);
  m.def(
      "evaluate", [](const CubeSet& x, const PLPath& p, const py::handle& t) {
        return point_to_py(x, evaluate(x, p, from_py(t)));
      });
  m.def("is_strict", &is_strict);
  m.def("is_tame", &is_tame);
  m.def("same_trace", &same_trace);
  m.def(
      "strictify",
      [](const CubeSet& x, const PLPath& p, const std::string& flow, int samples) {
        return strictify(x, p, flow_kind(flow), samples);
      },
      py::arg("cubes"), py::arg("path"), py::arg("flow") = "rational", py::arg("samples") = kDefaultSamples);
  m.def("rational_flow", [](const py::handle& t, const py::handle& x) {
    return to_fraction(rational_flow(from_py(t), from_py(x)));
  });
  m.def("paper_flow", &paper_flow);
  m.def("l1_length", [](const CubeSet& x, const PLPath& p) { return to_fraction(l1_length(x, p)); });
  m.def("naturalize", &naturalize, py::arg("cubes"), py::arg("path"), py::arg("normalize") = true);
  m.def("path_to_kinks", [](const CubeSet& x, const PLPath& p) {
    py::list out;
    for (const auto& pt : path_to_kinks(x, p).points) out.append(point_to_py(x, pt));
    return out;
  });
  m.def("kinks_to_path", [](const CubeSet& x, const py::sequence& points) {
    KinkSequence s;
    for (const auto& item : points) {
      const auto pair = item.cast<py::sequence>();
      s.points.push_back(canonicalize(x, Point{x.index(pair[0].cast<std::string>()), coords_from_py(pair[1])}));
    }
    return kinks_to_path(x, s);
  });

  py::class_<CubeChain>(m, "Chain")
      .def(py::init(&make_chain), py::arg("cubes"), py::arg("start"), py::arg("end"), py::arg("ids"))
      .def("ids", [](const CubeChain& c, const CubeSet& x) { return cube_ids(x, c.cubes); })
      .def("label", [](const CubeChain& c, const CubeSet& x) { return chain_label(x, c); })
      .def("length", [](const CubeChain& c, const CubeSet& x) { return chain_length(x, c); })
      .def("__eq__", [](const CubeChain& a, const CubeChain& b) { return a == b; });

  m.def("refines", &refines, py::arg("cubes"), py::arg("fine"), py::arg("coarse"));
  m.def("finest_chain", &finest_chain);
  m.def("subordinate_to_collar", &subordinate_to_collar);
  m.def("coarsest_common_refinement", [](const CubeSet& x, const CubeChain& a, const CubeChain& b) -> py::object {
    const auto r = coarsest_common_refinement(x, a, b);
    switch (r.kind) {
      case CcrResult::Kind::Chain:
        return py::cast(*r.chain);
      case CcrResult::Kind::NoCoarsest:
        return py::str("no-coarsest");
      case CcrResult::Kind::None:
        break;
    }
    return py::none();
  });

  py::class_<RefinementPoset>(m, "Poset")
      .def_readonly("chains", &RefinementPoset::chains)
      .def_readonly("covers", &RefinementPoset::covers)
      .def_readonly("truncated", &RefinementPoset::truncated)
      .def_readonly("nerve_guarantee", &RefinementPoset::nerve_guarantee)
      .def("__len__", [](const RefinementPoset& p) { return p.chains.size(); });

  m.def(
      "enumerate_chains",
      [](const CubeSet& x, const std::string& start, const std::string& end, int max_length) {
        return enumerate_chains(x, x.index(start), x.index(end), max_length);
      },
      py::arg("cubes"), py::arg("start"), py::arg("end"), py::arg("max_length"));

  m.def("tame", &tame);
  m.def("taming_homotopy", [](const CubeSet& x, const PLPath& p, const CubeChain& c, const py::handle& s) {
    return taming_homotopy(x, p, c, from_py(s));
  });
  m.def("crossing_times", [](const CubeSet& x, const PLPath& p, const CubeChain& c) {
    const auto profile = crossing_times(x, p, c);
    py::list out;
    for (std::size_t j = 0; j < profile.enter.size(); ++j) {
      out.append(py::make_tuple(to_fraction(profile.enter[j]), to_fraction(profile.leave[j])));
    }
    return out;
  });

  py::class_<SimplicialComplex>(m, "Complex")
      .def(py::init([](std::size_t n, std::vector<Simplex> simplices) { return make_complex(n, std::move(simplices)); }),
           py::arg("num_vertices"), py::arg("simplices"))
      .def_readonly("num_vertices", &SimplicialComplex::num_vertices)
      .def_readonly("maximal", &SimplicialComplex::maximal)
      .def_readonly("approximate", &SimplicialComplex::approximate)
      .def_property_readonly("dimension", [](const SimplicialComplex& k) { return dimension(k); })
      .def("to_json", [](const SimplicialComplex& k) { return write_complex(k); });

  m.def("order_complex", py::overload_cast<const RefinementPoset&>(&order_complex));
  m.def("covering_nerve", py::overload_cast<const RefinementPoset&>(&covering_nerve));
  m.def(
      "homology",
      [](const SimplicialComplex& k, std::size_t budget) { return homology_to_py(homology(k, budget)); },
      py::arg("complex"), py::arg("budget") = kDefaultSimplexBudget);
  m.def("euler", &euler);

  m.def("pv_model", [](const std::string& text) {
    auto model = pv_to_euclidean(parse_pv(text));
    const std::string start = model.cubes.id(model.start);
    const std::string end = model.cubes.id(model.end);
    return py::make_tuple(std::move(model.cubes), start, end);
  });
}
