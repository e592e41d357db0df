#include <doctest.h>

#include <sstream>

#include "antipode/analysis.hpp"
#include "antipode/error.hpp"
#include "antipode/io.hpp"
#include "helpers.hpp"

using namespace antipode;

namespace {

ErrorCode parse_error_of(std::string_view text, bool matrix) {
  try {
    if (matrix) parse_matrix(text);
    else parse_edge_list(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("accepted: " << text);
  return ErrorCode::BadParameter;
}

InputDescriptor generated(std::string name) { return InputDescriptor{"generator", std::move(name), {}, ""}; }

bool has_violation(const AnalysisReport& r, const std::string& check) {
  for (const auto& v : r.violations)
    if (v.check == check) return true;
  return false;
}

}  // namespace

TEST_CASE("matrix files") {
  const auto f = parse_matrix("3\n0 1/2 1\n1/2 0 1/2\n\n1 1/2 0\nw: 1/4 1/2 1/4\n");
  REQUIRE(f.matrix.size() == 3);
  CHECK(f.matrix[0][1] == R(1, 2));
  REQUIRE(f.weights);
  CHECK((*f.weights)[1] == R(1, 2));
  const auto space = validate_metric(f.matrix, f.weights);
  CHECK_FALSE(space.uniform_weights());

  std::ostringstream out;
  write_matrix(out, space);
  const auto again = parse_matrix(out.str());
  CHECK(again.matrix == f.matrix);
  CHECK(again.weights == f.weights);

  CHECK(parse_error_of("", true) == ErrorCode::ParseError);
  CHECK(parse_error_of("2 2\n0 1\n1 0\n", true) == ErrorCode::ParseError);
  CHECK(parse_error_of("2\n0 1\n", true) == ErrorCode::ParseError);
  CHECK(parse_error_of("2\n0 1 1\n1 0\n", true) == ErrorCode::ParseError);
  CHECK(parse_error_of("2\n0 a\n1 0\n", true) == ErrorCode::ParseError);
  CHECK(parse_error_of("2\n0 1/0\n1 0\n", true) == ErrorCode::ParseError);
  CHECK(parse_error_of("2\n0 1\n1 0\nw: 1\n", true) == ErrorCode::ParseError);
  CHECK(parse_error_of("2\n0 1\n1 0\n7\n", true) == ErrorCode::ParseError);
  try {
    parse_matrix("2\n0 1\n1 x\n");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("edge-list files") {
  const auto g = parse_edge_list("4 3\n0 1\n1 2\n2 3\n");
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 3);
  std::ostringstream out;
  write_edge_list(out, hypercube(2).graph);
  CHECK(out.str() == "4 4\n0 1\n0 2\n1 3\n2 3\n");
  CHECK(parse_edge_list(out.str()).edges() == hypercube(2).graph.edges());

  CHECK(parse_error_of("3 2\n0 1\n", false) == ErrorCode::ParseError);
  CHECK(parse_error_of("3 1\n0 3\n", false) == ErrorCode::ParseError);
  CHECK(parse_error_of("3 1\n1 1\n", false) == ErrorCode::ParseError);
  CHECK(parse_error_of("3 1\n0 -1\n", false) == ErrorCode::ParseError);
  CHECK(parse_error_of("3 1\n0 1 2\n", false) == ErrorCode::ParseError);

  CHECK(detect_input_kind("4 3\n") == InputKind::EdgeList);
  CHECK(detect_input_kind("\n4\n0 1 1 1\n") == InputKind::Matrix);
  CHECK_THROWS_AS(detect_input_kind("1 2 3\n"), Error);
}

TEST_CASE("sha256") {
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST_CASE("analysis of the hypercube") {
  const auto r = analyze_graph(hypercube(10), generated("hypercube"));
  CHECK(r.bounds.average == 5);
  CHECK(r.bounds.lower_tight);
  REQUIRE(r.antipodality.tier);
  CHECK(*r.antipodality.tier == AntipodalTier::StrictlyAntipodal);
  CHECK(r.transitivity.status == TransitivityStatus::Certificate);
  CHECK(r.transitivity.search_run);
  CHECK(*r.transitivity.group_order == BigInt(3715891200));
  REQUIRE(r.involution);
  CHECK(r.involution->all());
  CHECK(r.symmetry.symmetric);
  CHECK(r.violations.empty());

  const auto j = report_json(r);
  CHECK(j["bounds"]["average"]["exact"] == "5");
  CHECK(j["bounds"]["lower_tight"] == true);
  CHECK(j["antipodality"]["tier"] == "STRICTLY_ANTIPODAL");
  CHECK(j["antipodality"]["antipodal_map"][0] == 1023);
}

TEST_CASE("analysis of the Petersen graph") {
  const auto r = analyze_graph(petersen(), generated("petersen"));
  const auto j = report_json(r);
  CHECK(j["bounds"]["average"]["exact"] == "3/2");
  CHECK(j["bounds"]["average"]["decimal"] == "1.5");
  CHECK(j["antipodality"]["tier"] == "ANTIPODAL");
  CHECK(j["bounds"]["lower_tight"] == false);
  CHECK(j["bounds"]["expected_square"]["exact"] == "27/10");
  CHECK(j["violations"].empty());
}

TEST_CASE("fast path agrees with the full analysis") {
  AnalyzeOptions fast;
  fast.fast_path = true;
  for (const auto& gen : {hypercube(7), cycle(11), petersen(), complete(6)}) {
    const auto a = analyze_graph(gen, generated("g"));
    const auto b = analyze_graph(gen, generated("g"), fast);
    CHECK(b.method == "fast-path");
    CHECK(b.bounds.average == a.bounds.average);
    CHECK(b.bounds.expected_square == a.bounds.expected_square);
    CHECK(*b.antipodality.tier == *a.antipodality.tier);
    CHECK(b.symmetry.symmetric == a.symmetry.symmetric);
    CHECK(b.upper_extremal->extremal == a.upper_extremal->extremal);
    CHECK(invariants_digest(a) == invariants_digest(b));
  }
  // fast path on an edge list without a construction certificate finds one by search
  GeneratedGraph plain;
  plain.graph = hypercube(5).graph;
  const auto r = analyze_graph(plain, InputDescriptor{"file", "q5", {}, "x"}, fast);
  CHECK(r.transitivity.source == "search");
  CHECK(r.bounds.lower_tight);

  GeneratedGraph path;
  path.graph = path_graph(5);
  try {
    analyze_graph(path, generated("path"), fast);
    FAIL("fast path without certificate");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NoCertificate);
  }
}

TEST_CASE("no-aut marks antipodality as evidence required") {
  AnalyzeOptions opts;
  opts.no_aut = true;
  const auto r = analyze_graph(cycle(8), generated("cycle"), opts);
  CHECK(r.antipodality.evidence_required);
  CHECK_FALSE(r.antipodality.tier);
  CHECK_FALSE(r.transitivity.search_run);
  CHECK(r.transitivity.status == TransitivityStatus::Inconclusive);
  CHECK(r.bounds.lower_tight);
  const auto j = report_json(r);
  CHECK(j["antipodality"]["tier"].is_null());
  CHECK(j["antipodality"]["evidence_required"] == true);

  // still refutes through refinement
  GeneratedGraph star;
  star.graph = star_graph(3);
  CHECK(analyze_graph(star, generated("star"), opts).transitivity.status == TransitivityStatus::Refutation);
}

TEST_CASE("theorem checks on non-homogeneous data are flagged as data") {
  GeneratedGraph p3;
  p3.graph = path_graph(3);
  const auto r = analyze_graph(p3, generated("path"));
  CHECK(r.transitivity.status == TransitivityStatus::Refutation);
  CHECK(r.bounds.average == R(8, 9));
  REQUIRE(has_violation(r, "lower_bound"));
  for (const auto& v : r.violations) CHECK_FALSE(v.theorem_applies);
  CHECK_FALSE(r.symmetry.symmetric);
}

TEST_CASE("matrix analysis") {
  const auto t = padic_space(3, 3);
  const auto r = analyze_space(t.space, &t.translations, generated("padic"));
  CHECK(r.method == "matrix");
  CHECK(r.transitivity.status == TransitivityStatus::Certificate);
  CHECK(r.bounds.average == padic_average(3, 3).average);
  CHECK(r.violations.empty());
  REQUIRE(r.antipodality.tier);
  CHECK(*r.antipodality.tier == AntipodalTier::Antipodal);

  const auto rect = validate_metric(rational_matrix({{0, 2, 4, 3}, {2, 0, 3, 4}, {4, 3, 0, 2}, {3, 4, 2, 0}}));
  const auto rr = analyze_space(rect, nullptr, InputDescriptor{"file", "rect", {}, ""});
  CHECK(*rr.antipodality.tier == AntipodalTier::UniquelyAntipodal);
  CHECK(rr.antipodality.strictness_violations == 8);
  CHECK(rr.violations.empty());
}

TEST_CASE("round trip through the edge-list format preserves the invariants") {
  for (const auto& gen : {hypercube(4), cycle(12), petersen(), cayley(AbelianGroup{{3, 4}, {{1, 0}, {2, 0}, {0, 1}, {0, 3}}})}) {
    std::ostringstream out;
    write_edge_list(out, gen.graph);
    GeneratedGraph parsed;
    parsed.graph = parse_edge_list(out.str());
    const auto a = analyze_graph(gen, generated("g"));
    const auto b = analyze_graph(parsed, InputDescriptor{"file", "g.txt", {}, sha256_hex(out.str())});
    CHECK(invariants_digest(a) == invariants_digest(b));
  }
}

TEST_CASE("csv report") {
  const auto r = analyze_graph(cycle(6), generated("cycle"));
  const auto csv = report_csv(r);
  CHECK(csv.rfind("section,field,exact,decimal\n", 0) == 0);
  CHECK(csv.find("bounds,average,3/2,1.5\n") != std::string::npos);
  CHECK(csv.find("antipodality,tier,STRICTLY_ANTIPODAL,\n") != std::string::npos);
  CHECK(csv.find("distribution,3,1/6,") != std::string::npos);
}

TEST_CASE("sampling reports") {
  const auto h = sphere_distance_histogram(1, 2000, 4, 3);
  const auto j = sphere_report_json(1, h);
  for (const char* key : {"mean", "stderr", "n", "seed", "ci99_lo", "ci99_hi"}) CHECK(j["estimate"].contains(key));
  CHECK(j["histogram"].size() == 4);
  CHECK(j["uniformity"].is_object());
  const auto csv = histogram_csv(h.histogram);
  CHECK(csv.rfind("bin_lo,bin_hi,mass\n0,", 0) == 0);
}
