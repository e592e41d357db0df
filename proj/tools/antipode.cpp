// antipode: generate spaces, analyse metrics and graphs, sample continuous spaces.
//
// Exit codes
//   0  success (theorem check failures are reported in "violations")
//   1  input could not be read or parsed
//   2  bad parameters
//   3  disconnected graph
//   4  metric axiom violation
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "antipode/analysis.hpp"
#include "antipode/continuous.hpp"
#include "antipode/error.hpp"
#include "antipode/graph.hpp"
#include "antipode/io.hpp"
#include "antipode/parallel.hpp"

using namespace antipode;

namespace {

enum Exit { kOk = 0, kParse = 1, kParams = 2, kDisconnected = 3, kAxiom = 4 };

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
      return kParse;
    case ErrorCode::Disconnected:
      return kDisconnected;
    case ErrorCode::ShapeMismatch:
    case ErrorCode::Asymmetric:
    case ErrorCode::NegativeDistance:
    case ErrorCode::NonzeroDiagonal:
    case ErrorCode::ZeroDistance:
    case ErrorCode::TriangleViolation:
    case ErrorCode::BadWeights:
    case ErrorCode::OffDiagonalUndefined:
      return kAxiom;
    default:
      return kParams;
  }
}

std::string witness_text(const std::vector<std::size_t>& w) {
  std::string s = "(";
  for (std::size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + ")";
}

// Family selection shared by generate and analyze.
struct Family {
  std::string name;
  unsigned d = 0;
  std::size_t n = 0;
  std::uint64_t p = 0;
  unsigned k = 0;
  std::vector<std::uint32_t> moduli;
  std::string connection;  // ';'-separated elements, ','- or space-separated entries
  std::uint32_t degree = 0;
  bool symmetrize = false;

  void add_options(CLI::App* app) {
    app->add_option("--d", d, "hypercube dimension");
    app->add_option("--n", n, "vertex count (cycle, complete)");
    app->add_option("--p", p, "prime (padic)");
    app->add_option("--k", k, "depth (padic)");
    app->add_option("--moduli", moduli, "cyclic factors (cayley-abelian)")->delimiter(',');
    app->add_option("--connection", connection, "connection set, elements separated by ';'");
    app->add_option("--degree", degree, "symmetric group degree (cayley-perm)");
    app->add_flag("--symmetrize", symmetrize, "add missing inverses to the connection set");
  }

  std::vector<std::pair<std::string, std::string>> parameters() const {
    std::vector<std::pair<std::string, std::string>> out;
    if (name == "hypercube") out.emplace_back("d", std::to_string(d));
    if (name == "cycle" || name == "complete") out.emplace_back("n", std::to_string(n));
    if (name == "padic") {
      out.emplace_back("p", std::to_string(p));
      out.emplace_back("k", std::to_string(k));
    }
    if (name == "cayley-abelian") {
      std::string m;
      for (std::size_t i = 0; i < moduli.size(); ++i) m += (i ? "," : "") + std::to_string(moduli[i]);
      out.emplace_back("moduli", m);
    }
    if (name == "cayley-perm") out.emplace_back("degree", std::to_string(degree));
    if (name.starts_with("cayley")) {
      out.emplace_back("connection", connection);
      if (symmetrize) out.emplace_back("symmetrize", "true");
    }
    return out;
  }
};

std::vector<std::vector<std::uint32_t>> parse_elements(const std::string& text) {
  std::vector<std::vector<std::uint32_t>> out;
  std::stringstream elements(text);
  std::string element;
  while (std::getline(elements, element, ';')) {
    for (auto& c : element)
      if (c == ',') c = ' ';
    std::istringstream in(element);
    std::vector<std::uint32_t> coords;
    long long value = 0;
    while (in >> value) {
      if (value < 0) throw Error(ErrorCode::BadParameter, "negative entry in connection set: " + element);
      coords.push_back(static_cast<std::uint32_t>(value));
    }
    if (!in.eof()) throw Error(ErrorCode::BadParameter, "cannot read connection element '" + element + "'");
    if (!coords.empty()) out.push_back(std::move(coords));
  }
  if (out.empty()) throw Error(ErrorCode::BadParameter, "--connection is required");
  return out;
}

CayleySpec cayley_spec(const Family& f) {
  const auto elements = parse_elements(f.connection);
  if (f.name == "cayley-abelian") {
    if (f.moduli.empty()) throw Error(ErrorCode::BadParameter, "--moduli is required");
    AbelianGroup g{f.moduli, elements};
    for (auto& e : g.connection_set) {
      if (e.size() != f.moduli.size()) throw Error(ErrorCode::BadParameter, "connection element has the wrong number of coordinates");
      for (std::size_t i = 0; i < e.size(); ++i) e[i] %= f.moduli[i];
    }
    if (f.symmetrize) {
      const auto original = g.connection_set;
      for (const auto& e : original) {
        std::vector<std::uint32_t> inv(e.size());
        for (std::size_t i = 0; i < e.size(); ++i) inv[i] = (f.moduli[i] - e[i]) % f.moduli[i];
        if (std::find(g.connection_set.begin(), g.connection_set.end(), inv) == g.connection_set.end())
          g.connection_set.push_back(inv);
      }
    }
    return g;
  }
  if (f.degree == 0) throw Error(ErrorCode::BadParameter, "--degree is required");
  PermutationGroup g{f.degree, {}};
  for (const auto& e : elements) {
    if (e.size() != f.degree) throw Error(ErrorCode::BadParameter, "permutation has the wrong degree");
    g.connection_set.emplace_back(std::vector<Vertex>(e.begin(), e.end()));
  }
  if (f.symmetrize) {
    const auto original = g.connection_set;
    for (const auto& s : original) {
      auto inv = s.inverse();
      if (std::find(g.connection_set.begin(), g.connection_set.end(), inv) == g.connection_set.end())
        g.connection_set.push_back(std::move(inv));
    }
  }
  return g;
}

GeneratedGraph generate_graph(const Family& f) {
  if (f.name == "hypercube") return hypercube(f.d);
  if (f.name == "cycle") return cycle(f.n);
  if (f.name == "complete") return complete(f.n);
  if (f.name == "petersen") return petersen();
  if (f.name == "cayley-abelian" || f.name == "cayley-perm") return cayley(cayley_spec(f));
  throw Error(ErrorCode::BadParameter, "unknown graph family '" + f.name + "'");
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::BadParameter, "cannot write " + path);
  out << text;
}

int run_generate(const Family& f, const std::string& output) {
  std::ostringstream body;
  std::string summary;
  if (f.name == "padic") {
    const auto t = padic_space(f.p, f.k);
    write_matrix(body, t.space);
    summary = "padic p=" + std::to_string(f.p) + " k=" + std::to_string(f.k) + ": " + std::to_string(t.space.size()) +
              " points";
  } else {
    const auto gen = generate_graph(f);
    write_edge_list(body, gen.graph);
    summary = f.name + ": " + std::to_string(gen.graph.vertex_count()) + " vertices, " +
              std::to_string(gen.graph.edge_count()) + " edges" + (gen.connected ? "" : " (disconnected)");
  }
  if (output.empty() || output == "-") {
    std::cout << body.str();
    std::cerr << summary << '\n';
  } else {
    emit(body.str(), output);
    std::cout << summary << " -> " << output << '\n';
  }
  return kOk;
}

int run_analyze(const Family& f, const std::string& input, const AnalyzeOptions& options, const std::string& format,
                const std::string& output) {
  if (input.empty() == f.name.empty())
    throw Error(ErrorCode::BadParameter, "give exactly one of an input file or --family");

  AnalysisReport report;
  if (!input.empty()) {
    const std::string bytes = read_file(input);
    InputDescriptor desc{"file", input, {}, sha256_hex(bytes)};
    if (detect_input_kind(bytes) == InputKind::EdgeList) {
      GeneratedGraph g;
      g.graph = parse_edge_list(bytes);
      report = analyze_graph(g, std::move(desc), options);
    } else {
      auto file = parse_matrix(bytes);
      const auto space = validate_metric(file.matrix, std::move(file.weights));
      report = analyze_space(space, nullptr, std::move(desc), options);
    }
  } else {
    InputDescriptor desc{"generator", f.name, f.parameters(), ""};
    if (f.name == "padic") {
      const auto t = padic_space(f.p, f.k);
      report = analyze_space(t.space, &t.translations, std::move(desc), options);
    } else {
      report = analyze_graph(generate_graph(f), std::move(desc), options);
    }
  }
  emit(format == "csv" ? report_csv(report) : report_json(report).dump(2) + "\n", output);
  return kOk;
}

int run_sample(const std::string& space, unsigned d, std::uint64_t n, std::uint64_t seed, std::size_t bins,
               const std::string& histogram_path, const std::string& output) {
  nlohmann::json report;
  Histogram histogram;
  if (space == "sphere") {
    const auto r = sphere_distance_histogram(d, n, bins, seed);
    report = sphere_report_json(d, r);
    histogram = r.histogram;
  } else if (space == "torus") {
    const auto r = flat_torus_mean_distance(n, seed, bins);
    report = torus_report_json(r);
    histogram = r.histogram;
  } else {
    throw Error(ErrorCode::BadParameter, "unknown space '" + space + "'");
  }
  if (!histogram_path.empty()) emit(histogram_csv(histogram), histogram_path);
  emit(report.dump(2) + "\n", output);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  CLI::App app{"Distance distributions, bounds and antipodality of homogeneous metric spaces"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(version()));

  std::size_t threads = thread_count();
  app.add_option("--threads", threads, "worker threads (default: ANTIPODE_THREADS or 1)")->check(CLI::PositiveNumber);

  Family gen_family;
  std::string gen_output;
  auto* gen = app.add_subcommand("generate", "write a generated graph (edge list) or p-adic space (matrix)");
  gen->add_option("family", gen_family.name, "hypercube|cycle|complete|petersen|cayley-abelian|cayley-perm|padic")
      ->required()
      ->check(CLI::IsMember({"hypercube", "cycle", "complete", "petersen", "cayley-abelian", "cayley-perm", "padic"}));
  gen_family.add_options(gen);
  gen->add_option("-o,--output", gen_output, "output file (default: stdout)");

  Family an_family;
  std::string an_input, an_format = "json", an_output;
  AnalyzeOptions an_options;
  auto* an = app.add_subcommand("analyze", "run the full analysis on a file or generated family");
  an->add_option("input", an_input, "matrix or edge-list file");
  an->add_option("--family", an_family.name, "generated family instead of a file")
      ->check(CLI::IsMember({"hypercube", "cycle", "complete", "petersen", "cayley-abelian", "cayley-perm", "padic"}));
  an_family.add_options(an);
  an->add_flag("--fast-path", an_options.fast_path, "single BFS under a transitivity certificate");
  an->add_flag("--no-aut", an_options.no_aut, "skip automorphism evidence; antipodality reports evidence_required");
  an->add_option("--budget", an_options.budget, "automorphism search node budget");
  an->add_option("--format", an_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  an->add_option("-o,--output", an_output, "output file (default: stdout)");

  std::string sm_space, sm_histogram, sm_output;
  unsigned sm_d = 2;
  std::uint64_t sm_n = 1000000, sm_seed = 1;
  std::size_t sm_bins = 20;
  auto* sm = app.add_subcommand("sample", "Monte Carlo estimate of the mean distance on a sphere or flat torus");
  sm->add_option("space", sm_space, "sphere or torus")->required()->check(CLI::IsMember({"sphere", "torus"}));
  sm->add_option("--d", sm_d, "sphere dimension");
  sm->add_option("--n", sm_n, "sample count (at least 1000)");
  sm->add_option("--seed", sm_seed, "generator seed");
  sm->add_option("--bins", sm_bins, "histogram bins (even for spheres)");
  sm->add_option("--histogram", sm_histogram, "write the histogram as CSV to this file");
  sm->add_option("-o,--output", sm_output, "output file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParams;
  }
  set_thread_count(threads);

  try {
    if (*gen) return run_generate(gen_family, gen_output);
    if (*an) return run_analyze(an_family, an_input, an_options, an_format, an_output);
    if (*sm) return run_sample(sm_space, sm_d, sm_n, sm_seed, sm_bins, sm_histogram, sm_output);
  } catch (const Error& e) {
    std::cerr << "antipode: " << error_code_name(e.code()) << ": " << e.what();
    if (!e.witness().empty()) std::cerr << " witness " << witness_text(e.witness());
    std::cerr << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "antipode: " << e.what() << '\n';
    return kParse;
  }
  return kOk;
}
