#include "antipode/analysis.hpp"

#include <algorithm>
#include <charconv>
#include <numbers>
#include <sstream>

#include "antipode/error.hpp"
#include "antipode/io.hpp"

#ifndef ANTIPODE_VERSION
#define ANTIPODE_VERSION "0.0.0"
#endif

namespace antipode {

std::string_view version() noexcept { return ANTIPODE_VERSION; }

namespace {

using nlohmann::json;

constexpr std::size_t kReportedWitnesses = 10;
constexpr std::size_t kReportedMapCap = std::size_t{1} << 16;

std::string origin_name(AutomorphismOrigin origin) {
  return origin == AutomorphismOrigin::Construction ? "construction" : "search";
}

void require_connected(const Graph& g) {
  const auto dist = bfs_distances(g, 0);
  const auto it = std::find(dist.begin(), dist.end(), kUnreachable);
  if (it == dist.end()) return;
  const auto witness = static_cast<std::size_t>(it - dist.begin());
  throw Error(ErrorCode::Disconnected,
              "graph is disconnected: vertex " + std::to_string(witness) + " is not reachable from vertex 0",
              {0, witness});
}

// A generator set with a single orbit certifies transitivity by itself; the
// refinement pass inside is_vertex_transitive is only needed to refute.
TransitivityVerdict certificate_verdict(const AutomorphismSet& evidence) {
  TransitivityVerdict v;
  v.status = TransitivityStatus::Certificate;
  v.certificate = TransitivityCertificate{
      evidence.origin() == AutomorphismOrigin::Construction ? CertificateSource::Construction : CertificateSource::Search,
      evidence.basis(), evidence};
  v.reason = "generators act with a single orbit";
  return v;
}

AutomorphismSet no_evidence(std::size_t n) {
  return AutomorphismSet(n, {}, AutomorphismOrigin::Search, "none", SearchStatistics{0, true});
}

void fill_transitivity(TransitivitySummary& t, const TransitivityVerdict& verdict, const AutomorphismSet* evidence,
                       const std::optional<AutomorphismSet>& searched) {
  t.status = verdict.status;
  t.reason = verdict.reason;
  t.separated = verdict.separated;
  if (evidence) {
    t.source = origin_name(evidence->origin());
    t.basis = evidence->basis();
    t.generator_count = evidence->generators().size();
    t.orbit_count = evidence->orbit_count();
  } else {
    t.source = "none";
  }
  if (searched) {
    t.search_run = true;
    t.search_nodes = searched->statistics().nodes;
    t.search_truncated = searched->truncated();
    t.group_order = searched->group_order();
  }
}

const AutomorphismSet* choose_evidence(const std::optional<AutomorphismSet>& searched, const AutomorphismSet* construction) {
  if (searched && searched->complete()) return &*searched;
  if (construction) return construction;
  if (searched) return &*searched;
  return nullptr;
}

void add_violation(AnalysisReport& r, bool applies, std::string check, std::string detail) {
  r.violations.push_back({std::move(check), std::move(detail), applies});
}

// Theorem checks shared by both paths. `applies` says whether the hypotheses
// hold (certified homogeneous, uniform measure).
void check_theorems(AnalysisReport& r, bool applies) {
  const auto& b = r.bounds;
  if (!b.lower_ok) add_violation(r, applies, "lower_bound", "A < D/2 (slack " + to_exact_string(b.lower_slack) + ")");
  if (!b.upper_ok) add_violation(r, applies, "upper_bound", "A > mu D (slack " + to_exact_string(b.upper_slack) + ")");
  if (!b.square_lower_ok)
    add_violation(r, applies, "square_lower_bound", "E[d^2] < D^2/8 (slack " + to_exact_string(b.square_lower_slack) + ")");
  if (!b.square_upper_ok)
    add_violation(r, applies, "square_upper_bound", "E[d^2] > D^2 (slack " + to_exact_string(b.square_upper_slack) + ")");
  if (r.upper_extremal && r.upper_extremal->extremal != b.upper_tight)
    add_violation(r, applies, "upper_extremal", "equal off-diagonal distances and A = mu D disagree");

  const auto& tier = r.antipodality.tier;
  if (!tier) return;
  const bool strict = *tier == AntipodalTier::StrictlyAntipodal;
  if (strict != b.lower_tight)
    add_violation(r, applies, "lower_extremal",
                  strict ? "strictly antipodal but A != D/2" : "A = D/2 but not strictly antipodal");
  if (strict && !r.symmetry.symmetric)
    add_violation(r, applies, "distribution_symmetry", "strictly antipodal but the distance distribution is not symmetric");
  if (strict && r.involution && !r.involution->all()) {
    std::string detail = "antipodal map fails:";
    if (!r.involution->is_involution) detail += " involution";
    if (!r.involution->fixed_point_free) detail += " fixed-point-free";
    if (!r.involution->is_isometry) detail += " isometry";
    if (!r.involution->commutes_with_generators) detail += " central";
    if (!r.involution->even_cardinality) detail += " even-cardinality";
    add_violation(r, applies, "antipodal_involution", detail);
  }
}

std::optional<UpperExtremal> upper_from_distribution(const DistanceDistribution& dist) {
  UpperExtremal u;
  std::size_t positive = 0;
  for (const auto& e : dist.entries)
    if (e.distance > 0) {
      ++positive;
      u.scale = e.distance;
    }
  u.extremal = positive <= 1;
  if (!u.extremal) u.scale = 0;
  return u;
}

// Everything after the metric is known: bounds, antipodality, involution,
// symmetry, extremal cases.
void analyze_metric(AnalysisReport& r, const FiniteMetricSpace& space, const AutomorphismSet* evidence) {
  r.uniform_weights = space.uniform_weights();
  r.bounds = check_bounds(space);
  r.distribution = distance_distribution(space);
  r.symmetry = symmetry_check(r.distribution, r.bounds.diameter);
  r.upper_extremal = detect_extremal_upper(space);

  auto& a = r.antipodality;
  if (space.size() >= 2) {
    try {
      auto c = classify_antipodality(space, evidence);
      a.tier = c.tier;
      a.evidence = evidence_name(c.evidence);
      a.evidence_basis = c.evidence_basis;
      a.antipodes_of_base = c.antipodes[0];
      a.antipodal_map = c.antipodal_map;
      a.strictness_violations = c.witness_count;
      for (std::size_t i = 0; i < std::min(kReportedWitnesses, c.witnesses.size()); ++i) a.witnesses.push_back(c.witnesses[i]);
      a.warnings = c.warnings;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::EvidenceRequired) throw;
      a.evidence_required = true;
      a.evidence = "none";
      a.warnings.push_back(e.what());
    }
  } else {
    r.warnings.push_back("one-point space: antipodality needs at least two points");
  }
  if (a.antipodal_map && evidence) r.involution = verify_involution_properties(*a.antipodal_map, space, *evidence);
  if (a.tier)
    r.lower_extremal = LowerExtremal{*a.tier == AntipodalTier::StrictlyAntipodal, r.bounds.lower_tight, *a.tier};
  if (!space.uniform_weights())
    r.warnings.push_back("non-uniform weights: the bounds are theorems only for the invariant (uniform) measure");
}

}  // namespace

AnalysisReport analyze_graph(const GeneratedGraph& input, InputDescriptor descriptor, const AnalyzeOptions& options) {
  const Graph& g = input.graph;
  const std::size_t n = g.vertex_count();
  AnalysisReport r;
  r.input = std::move(descriptor);
  r.points = n;
  r.edges = g.edge_count();
  r.method = options.fast_path ? "fast-path" : "apsp";
  if (options.fast_path && options.no_aut)
    throw Error(ErrorCode::BadParameter, "the fast path needs a transitivity certificate, which --no-aut discards");
  require_connected(g);

  const AutomorphismSet* construction = nullptr;
  if (input.known_automorphisms) construction = &*input.known_automorphisms;
  else if (input.certificate) construction = &input.certificate->automorphisms;

  std::optional<AutomorphismSet> searched;
  const bool skip_search = options.no_aut || (options.fast_path && construction && construction->transitive());
  if (!skip_search) searched = automorphism_search(g, SearchOptions{options.budget});
  const AutomorphismSet* evidence = options.no_aut ? nullptr : choose_evidence(searched, construction);
  if (searched && searched->truncated())
    r.warnings.push_back("automorphism search exhausted its budget of " + std::to_string(options.budget) + " nodes");

  TransitivityVerdict verdict;
  if (evidence && evidence->transitive()) {
    for (const auto& p : evidence->generators())
      if (!g.preserves_adjacency(p)) throw Error(ErrorCode::InvalidEvidence, "generator is not an automorphism of the graph");
    verdict = certificate_verdict(*evidence);
  } else if (evidence) {
    verdict = is_vertex_transitive(g, *evidence);
  } else {
    verdict = is_vertex_transitive(g, no_evidence(n));
    if (verdict.status == TransitivityStatus::Inconclusive) verdict.reason = "automorphism search skipped";
  }
  fill_transitivity(r.transitivity, verdict, evidence, searched);
  const bool homogeneous = verdict.status == TransitivityStatus::Certificate;

  if (!options.fast_path) {
    const FiniteMetricSpace space = apsp_metric(g);
    analyze_metric(r, space, evidence);
    check_theorems(r, homogeneous);
    return r;
  }

  if (!verdict.certificate)
    throw Error(ErrorCode::NoCertificate, "the fast path needs a transitivity certificate: " + verdict.reason);
  const TransitivityCertificate& cert = *verdict.certificate;
  r.distribution = transitive_distribution(g, &cert);
  r.bounds = bounds_from_distribution(r.distribution);
  r.symmetry = symmetry_check(r.distribution, r.bounds.diameter);
  r.upper_extremal = upper_from_distribution(r.distribution);
  if (n >= 2) {
    const auto ta = transitive_antipodality(g, &cert);
    auto& a = r.antipodality;
    a.tier = ta.tier;
    a.evidence = "transitivity-certificate";
    a.evidence_basis = cert.basis;
    a.antipodes_of_base = ta.antipodes_of_base;
    a.strictness_violations = ta.strictness_violations_at_base;
    a.warnings.push_back("fast path: strictness checked at vertex 0 only, which suffices under the certificate");
    r.lower_extremal = LowerExtremal{ta.tier == AntipodalTier::StrictlyAntipodal, r.bounds.lower_tight, ta.tier};
  }
  check_theorems(r, true);
  return r;
}

AnalysisReport analyze_space(const FiniteMetricSpace& space, const AutomorphismSet* construction,
                             InputDescriptor descriptor, const AnalyzeOptions& options) {
  const std::size_t n = space.size();
  AnalysisReport r;
  r.input = std::move(descriptor);
  r.points = n;
  r.method = "matrix";
  if (options.fast_path) throw Error(ErrorCode::BadParameter, "the fast path applies to graphs only");
  if (construction && !generators_are_isometries(space, *construction))
    throw Error(ErrorCode::InvalidEvidence, "construction generators are not isometries");

  std::optional<AutomorphismSet> searched;
  if (!options.no_aut) {
    if (n <= options.isometry_search_cap) searched = isometry_search(space, SearchOptions{options.budget});
    else r.warnings.push_back("isometry search skipped above " + std::to_string(options.isometry_search_cap) + " points");
  }
  const AutomorphismSet* evidence = options.no_aut ? nullptr : choose_evidence(searched, construction);
  if (searched && searched->truncated())
    r.warnings.push_back("isometry search exhausted its budget of " + std::to_string(options.budget) + " nodes");

  TransitivityVerdict verdict;
  if (evidence && evidence->transitive()) {
    verdict = certificate_verdict(*evidence);
  } else if (evidence) {
    verdict = is_homogeneous(space, *evidence);
  } else if (n <= options.isometry_search_cap) {
    verdict = is_homogeneous(space, no_evidence(n));
    if (verdict.status == TransitivityStatus::Inconclusive) verdict.reason = "isometry search skipped";
  } else {
    verdict.reason = "isometry search skipped";
  }
  fill_transitivity(r.transitivity, verdict, evidence, searched);

  analyze_metric(r, space, evidence);
  check_theorems(r, verdict.status == TransitivityStatus::Certificate && space.uniform_weights());
  return r;
}

json rational_json(const Rational& value) {
  return json{{"exact", to_exact_string(value)}, {"decimal", to_decimal_string(value)}};
}

namespace {

json bounds_json(const BoundsReport& b) {
  return json{
      {"diameter", rational_json(b.diameter)},
      {"average", rational_json(b.average)},
      {"average_off_diagonal", b.average_off_diagonal ? rational_json(*b.average_off_diagonal) : json(nullptr)},
      {"mu", rational_json(b.mu)},
      {"expected_square", rational_json(b.expected_square)},
      {"lower_slack", rational_json(b.lower_slack)},
      {"upper_slack", rational_json(b.upper_slack)},
      {"square_lower_slack", rational_json(b.square_lower_slack)},
      {"square_upper_slack", rational_json(b.square_upper_slack)},
      {"lower_ok", b.lower_ok},
      {"upper_ok", b.upper_ok},
      {"square_lower_ok", b.square_lower_ok},
      {"square_upper_ok", b.square_upper_ok},
      {"lower_tight", b.lower_tight},
      {"upper_tight", b.upper_tight},
  };
}

json distribution_json(const DistanceDistribution& d) {
  json out = json::array();
  for (const auto& e : d.entries) out.push_back(json{{"distance", rational_json(e.distance)}, {"mass", rational_json(e.mass)}});
  return out;
}

json tier_json(const std::optional<AntipodalTier>& tier) {
  return tier ? json(std::string(tier_name(*tier))) : json(nullptr);
}

json symmetry_json(const SymmetryReport& s) {
  return json{{"symmetric", s.symmetric},
              {"first_violation", s.first_violation ? rational_json(*s.first_violation) : json(nullptr)}};
}

json upper_json(const std::optional<UpperExtremal>& u) {
  if (!u) return nullptr;
  return json{{"extremal", u->extremal}, {"scale", rational_json(u->scale)}};
}

json lower_json(const std::optional<LowerExtremal>& l) {
  if (!l) return nullptr;
  return json{{"extremal", l->extremal}, {"lower_tight", l->lower_tight}, {"tier", tier_name(l->tier)}};
}

json invariants_json(const AnalysisReport& r) {
  return json{{"points", r.points},
              {"bounds", bounds_json(r.bounds)},
              {"distribution", distribution_json(r.distribution)},
              {"transitivity", transitivity_status_name(r.transitivity.status)},
              {"tier", tier_json(r.antipodality.tier)},
              {"evidence_required", r.antipodality.evidence_required},
              {"symmetry", symmetry_json(r.symmetry)},
              {"upper_extremal", upper_json(r.upper_extremal)},
              {"lower_extremal", lower_json(r.lower_extremal)}};
}

}  // namespace

std::string invariants_digest(const AnalysisReport& report) { return sha256_hex(invariants_json(report).dump()); }

json report_json(const AnalysisReport& r) {
  json input{{"kind", r.input.kind}, {"name", r.input.name}};
  json params = json::object();
  for (const auto& [k, v] : r.input.parameters) params[k] = v;
  input["parameters"] = params;
  if (!r.input.sha256.empty()) input["sha256"] = r.input.sha256;

  const auto& t = r.transitivity;
  json transitivity{
      {"status", transitivity_status_name(t.status)},
      {"source", t.source},
      {"basis", t.basis},
      {"reason", t.reason},
      {"separated", t.separated ? json::array({t.separated->first, t.separated->second}) : json(nullptr)},
      {"generators", t.generator_count},
      {"orbits", t.orbit_count},
      {"group_order", t.group_order ? json(t.group_order->str()) : json(nullptr)},
      {"search", {{"run", t.search_run}, {"nodes", t.search_nodes}, {"truncated", t.search_truncated}}},
  };

  const auto& a = r.antipodality;
  json witnesses = json::array();
  for (const auto& w : a.witnesses) witnesses.push_back(json::array({w.x, w.y, w.antipode}));
  json map = nullptr;
  if (a.antipodal_map && a.antipodal_map->size() <= kReportedMapCap) {
    const auto images = a.antipodal_map->images();
    map = json(std::vector<Vertex>(images.begin(), images.end()));
  }
  json antipodality{
      {"tier", tier_json(a.tier)},
      {"evidence_required", a.evidence_required},
      {"evidence", a.evidence},
      {"evidence_basis", a.evidence_basis},
      {"antipodes_of_base", a.antipodes_of_base},
      {"antipodal_map", map},
      {"strictness_violations", a.strictness_violations},
      {"witnesses", witnesses},
      {"warnings", a.warnings},
  };

  json involution = nullptr;
  if (r.involution) {
    const auto& i = *r.involution;
    involution = json{{"is_involution", i.is_involution},
                      {"fixed_point_free", i.fixed_point_free},
                      {"is_isometry", i.is_isometry},
                      {"commutes_with_generators", i.commutes_with_generators},
                      {"even_cardinality", i.even_cardinality},
                      {"non_commuting_generator", i.non_commuting_generator ? json(*i.non_commuting_generator) : json(nullptr)}};
  }

  json violations = json::array();
  for (const auto& v : r.violations)
    violations.push_back(json{{"check", v.check}, {"detail", v.detail}, {"theorem_applies", v.theorem_applies}});

  return json{
      {"tool", {{"name", "antipode"}, {"version", std::string(version())}}},
      {"input", input},
      {"method", r.method},
      {"points", r.points},
      {"edges", r.edges ? json(*r.edges) : json(nullptr)},
      {"uniform_weights", r.uniform_weights},
      {"bounds", bounds_json(r.bounds)},
      {"distribution", distribution_json(r.distribution)},
      {"transitivity", transitivity},
      {"antipodality", antipodality},
      {"involution", involution},
      {"symmetry", symmetry_json(r.symmetry)},
      {"extremal", {{"upper", upper_json(r.upper_extremal)}, {"lower", lower_json(r.lower_extremal)}}},
      {"violations", violations},
      {"warnings", r.warnings},
      {"invariants_sha256", invariants_digest(r)},
  };
}

std::string report_csv(const AnalysisReport& r) {
  std::ostringstream out;
  out << "section,field,exact,decimal\n";
  auto text = [&](const std::string& section, const std::string& field, const std::string& value) {
    out << section << ',' << field << ',' << value << ",\n";
  };
  auto flag = [&](const std::string& section, const std::string& field, bool value) {
    text(section, field, value ? "true" : "false");
  };
  auto rational = [&](const std::string& section, const std::string& field, const Rational& value) {
    out << section << ',' << field << ',' << to_exact_string(value) << ',' << to_decimal_string(value) << '\n';
  };

  text("input", "kind", r.input.kind);
  text("input", "name", r.input.name);
  for (const auto& [k, v] : r.input.parameters) text("input", k, v);
  if (!r.input.sha256.empty()) text("input", "sha256", r.input.sha256);
  text("tool", "version", std::string(version()));
  text("report", "method", r.method);
  text("report", "points", std::to_string(r.points));

  const auto& b = r.bounds;
  rational("bounds", "diameter", b.diameter);
  rational("bounds", "average", b.average);
  if (b.average_off_diagonal) rational("bounds", "average_off_diagonal", *b.average_off_diagonal);
  rational("bounds", "mu", b.mu);
  rational("bounds", "expected_square", b.expected_square);
  flag("bounds", "lower_ok", b.lower_ok);
  flag("bounds", "upper_ok", b.upper_ok);
  flag("bounds", "square_lower_ok", b.square_lower_ok);
  flag("bounds", "square_upper_ok", b.square_upper_ok);
  flag("bounds", "lower_tight", b.lower_tight);
  flag("bounds", "upper_tight", b.upper_tight);

  text("transitivity", "status", std::string(transitivity_status_name(r.transitivity.status)));
  text("transitivity", "source", r.transitivity.source);
  text("antipodality", "tier", r.antipodality.tier ? std::string(tier_name(*r.antipodality.tier)) : "");
  flag("antipodality", "evidence_required", r.antipodality.evidence_required);
  text("antipodality", "strictness_violations", std::to_string(r.antipodality.strictness_violations));
  flag("symmetry", "symmetric", r.symmetry.symmetric);
  if (r.upper_extremal) flag("extremal", "upper", r.upper_extremal->extremal);
  if (r.lower_extremal) flag("extremal", "lower", r.lower_extremal->extremal);
  for (const auto& e : r.distribution.entries)
    out << "distribution," << to_exact_string(e.distance) << ',' << to_exact_string(e.mass) << ','
        << to_decimal_string(e.mass) << '\n';
  for (const auto& v : r.violations) text("violation", v.check, v.theorem_applies ? "theorem" : "data");
  text("report", "invariants_sha256", invariants_digest(r));
  return out.str();
}

json estimate_json(const SampleEstimate& e) {
  return json{{"mean", e.mean},       {"stderr", e.standard_error}, {"n", e.count},
              {"seed", e.seed},       {"ci99_lo", e.ci99_lo},       {"ci99_hi", e.ci99_hi},
              {"stddev", e.stddev},   {"degenerate_draws", e.degenerate_draws}};
}

json histogram_json(const Histogram& h) {
  json out = json::array();
  const auto masses = h.masses();
  for (std::size_t b = 0; b < h.counts.size(); ++b)
    out.push_back(json{{"bin_lo", h.bin_lo(b)}, {"bin_hi", h.bin_hi(b)}, {"mass", masses[b]}, {"count", h.counts[b]}});
  return out;
}

std::string histogram_csv(const Histogram& h) {
  // shortest round-trip form of each double
  auto text = [](double x) {
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, end);
  };
  std::ostringstream out;
  out << "bin_lo,bin_hi,mass\n";
  const auto masses = h.masses();
  for (std::size_t b = 0; b < h.counts.size(); ++b)
    out << text(h.bin_lo(b)) << ',' << text(h.bin_hi(b)) << ',' << text(masses[b]) << '\n';
  return out.str();
}

namespace {

json symmetry_test_json(const HistogramSymmetry& s) {
  return json{{"chi_square", s.chi_square},     {"degrees_of_freedom", s.degrees_of_freedom},
              {"critical_value", s.critical_value}, {"max_mass_gap", s.max_mass_gap},
              {"scaled_gap", s.scaled_gap},     {"symmetric", s.symmetric}};
}

json fit_json(const GoodnessOfFit& g) {
  return json{{"chi_square", g.chi_square},
              {"degrees_of_freedom", g.degrees_of_freedom},
              {"critical_value", g.critical_value},
              {"passed", g.passed}};
}

}  // namespace

json sphere_report_json(unsigned d, const SphereHistogram& result) {
  const double pi = std::numbers::pi;
  const auto& e = result.estimate;
  return json{
      {"tool", {{"name", "antipode"}, {"version", std::string(version())}}},
      {"space", "sphere"},
      {"d", d},
      {"estimate", estimate_json(e)},
      {"diameter", pi},
      {"expected_mean", pi / 2},
      {"standard_errors_from_expected", e.standard_error > 0 ? (e.mean - pi / 2) / e.standard_error : 0.0},
      {"symmetry", symmetry_test_json(result.symmetry)},
      {"uniformity", result.uniformity ? fit_json(*result.uniformity) : json(nullptr)},
      {"histogram", histogram_json(result.histogram)},
  };
}

json torus_report_json(const TorusEstimate& result) {
  return json{
      {"tool", {{"name", "antipode"}, {"version", std::string(version())}}},
      {"space", "torus"},
      {"estimate", estimate_json(result.estimate)},
      {"diameter", result.diameter},
      {"lower_ok", result.lower_ok},
      {"upper_ok", result.upper_ok},
      {"symmetry", symmetry_test_json(histogram_symmetry(result.histogram))},
      {"histogram", histogram_json(result.histogram)},
  };
}

}  // namespace antipode
