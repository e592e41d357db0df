#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "antipode/analysis.hpp"
#include "antipode/continuous.hpp"
#include "antipode/error.hpp"
#include "antipode/graph.hpp"
#include "antipode/io.hpp"
#include "antipode/parallel.hpp"

namespace py = pybind11;
using namespace antipode;

namespace {

AnalyzeOptions options(bool fast_path, bool no_aut, std::uint64_t budget) {
  AnalyzeOptions o;
  o.fast_path = fast_path;
  o.no_aut = no_aut;
  if (budget) o.budget = budget;
  return o;
}

// Reports cross the boundary as JSON text; the Python side parses them.
std::string analyze_family(const std::string& family, unsigned d, std::size_t n, std::uint64_t p, unsigned k,
                           const std::vector<std::uint32_t>& moduli,
                           const std::vector<std::vector<std::uint32_t>>& connection, bool fast_path, bool no_aut,
                           std::uint64_t budget) {
  py::gil_scoped_release release;
  InputDescriptor desc{"generator", family, {}, ""};
  const auto opts = options(fast_path, no_aut, budget);
  AnalysisReport report;
  if (family == "padic") {
    desc.parameters = {{"p", std::to_string(p)}, {"k", std::to_string(k)}};
    const auto t = padic_space(p, k);
    report = analyze_space(t.space, &t.translations, std::move(desc), opts);
    return report_json(report).dump();
  }
  GeneratedGraph g;
  if (family == "hypercube") {
    desc.parameters = {{"d", std::to_string(d)}};
    g = hypercube(d);
  } else if (family == "cycle") {
    desc.parameters = {{"n", std::to_string(n)}};
    g = cycle(n);
  } else if (family == "complete") {
    desc.parameters = {{"n", std::to_string(n)}};
    g = complete(n);
  } else if (family == "petersen") {
    g = petersen();
  } else if (family == "cayley-abelian") {
    std::string m, c;
    for (std::size_t i = 0; i < moduli.size(); ++i) m += (i ? "," : "") + std::to_string(moduli[i]);
    for (std::size_t i = 0; i < connection.size(); ++i) {
      c += i ? ";" : "";
      for (std::size_t j = 0; j < connection[i].size(); ++j) c += (j ? "," : "") + std::to_string(connection[i][j]);
    }
    desc.parameters = {{"moduli", m}, {"connection", c}};
    g = cayley(AbelianGroup{moduli, connection});
  } else {
    throw Error(ErrorCode::BadParameter, "unknown family '" + family + "'");
  }
  report = analyze_graph(g, std::move(desc), opts);
  return report_json(report).dump();
}

std::string analyze_edges(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges, bool fast_path,
                          bool no_aut, std::uint64_t budget) {
  py::gil_scoped_release release;
  GeneratedGraph g;
  g.graph = Graph::from_edges(n, edges);
  return report_json(analyze_graph(g, InputDescriptor{"file", "<edges>", {}, ""}, options(fast_path, no_aut, budget)))
      .dump();
}

// Same text formats the CLI reads.
std::string analyze_text(const std::string& text, bool fast_path, bool no_aut, std::uint64_t budget) {
  py::gil_scoped_release release;
  InputDescriptor desc{"file", "<text>", {}, sha256_hex(text)};
  const auto opts = options(fast_path, no_aut, budget);
  if (detect_input_kind(text) == InputKind::EdgeList) {
    GeneratedGraph g;
    g.graph = parse_edge_list(text);
    return report_json(analyze_graph(g, std::move(desc), opts)).dump();
  }
  auto file = parse_matrix(text);
  const auto space = validate_metric(file.matrix, std::move(file.weights));
  return report_json(analyze_space(space, nullptr, std::move(desc), opts)).dump();
}

std::string sample_sphere(unsigned d, std::uint64_t n, std::uint64_t seed, std::size_t bins) {
  py::gil_scoped_release release;
  return sphere_report_json(d, sphere_distance_histogram(d, n, bins, seed)).dump();
}

std::string sample_torus(std::uint64_t n, std::uint64_t seed, std::size_t bins) {
  py::gil_scoped_release release;
  return torus_report_json(flat_torus_mean_distance(n, seed, bins)).dump();
}

std::string padic(std::uint64_t p, unsigned k) {
  const auto a = padic_average(p, k);
  return nlohmann::json{{"p", p},
                        {"k", k},
                        {"average", rational_json(a.average)},
                        {"limit", rational_json(a.limit)},
                        {"gap", rational_json(a.gap)}}
      .dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "antipode native core";

  static py::exception<Error> error(m, "AntipodeError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error.ptr())(e.what());
      exc.attr("code") = std::string(error_code_name(e.code()));
      exc.attr("witness") = py::tuple(py::cast(e.witness()));
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def("version", [] { return std::string(version()); });
  m.def("set_threads", &set_thread_count, py::arg("threads"));
  m.def("threads", &thread_count);

  m.def("analyze_family", &analyze_family, py::arg("family"), py::arg("d") = 0, py::arg("n") = 0, py::arg("p") = 0,
        py::arg("k") = 0, py::arg("moduli") = std::vector<std::uint32_t>{},
        py::arg("connection") = std::vector<std::vector<std::uint32_t>>{}, py::arg("fast_path") = false,
        py::arg("no_aut") = false, py::arg("budget") = 0);
  m.def("analyze_edges", &analyze_edges, py::arg("n"), py::arg("edges"), py::arg("fast_path") = false,
        py::arg("no_aut") = false, py::arg("budget") = 0);
  m.def("analyze_text", &analyze_text, py::arg("text"), py::arg("fast_path") = false, py::arg("no_aut") = false,
        py::arg("budget") = 0);
  m.def("sample_sphere", &sample_sphere, py::arg("d"), py::arg("n"), py::arg("seed"), py::arg("bins") = 20);
  m.def("sample_torus", &sample_torus, py::arg("n"), py::arg("seed"), py::arg("bins") = 20);
  m.def("padic_average", &padic, py::arg("p"), py::arg("k"));
}
