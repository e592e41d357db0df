#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "antipode/continuous.hpp"
#include "antipode/graph.hpp"
#include "antipode/metric.hpp"
#include "antipode/symmetry.hpp"

namespace antipode {

std::string_view version() noexcept;

/// Enough to re-run the analysis: a generator with its parameters, or a file
/// with the digest of its bytes.
struct InputDescriptor {
  std::string kind;  // "generator" or "file"
  std::string name;  // family name, or the path as given
  std::vector<std::pair<std::string, std::string>> parameters;
  std::string sha256;  // files only
};

struct AnalyzeOptions {
  bool fast_path = false;  // single BFS under a transitivity certificate
  bool no_aut = false;     // skip the automorphism search entirely
  std::uint64_t budget = SearchOptions{}.node_budget;
  std::size_t isometry_search_cap = 2048;  // points; larger matrix inputs skip the search
};

/// A failed theorem check. `theorem_applies` is true when the hypotheses
/// (certified homogeneity, uniform measure) hold, i.e. a true contradiction.
struct Violation {
  std::string check;
  std::string detail;
  bool theorem_applies = false;
};

struct TransitivitySummary {
  TransitivityStatus status = TransitivityStatus::Inconclusive;
  std::string source;  // "construction", "search" or "none"
  std::string basis;
  std::string reason;
  std::optional<std::pair<Vertex, Vertex>> separated;
  std::size_t generator_count = 0;
  std::size_t orbit_count = 0;
  std::optional<BigInt> group_order;
  std::uint64_t search_nodes = 0;
  bool search_truncated = false;
  bool search_run = false;
};

struct AntipodalitySummary {
  std::optional<AntipodalTier> tier;  // empty when evidence was required but absent
  bool evidence_required = false;
  std::string evidence;  // evidence_name, or "transitivity-certificate" on the fast path
  std::string evidence_basis;
  std::vector<Vertex> antipodes_of_base;  // antipodes of point 0
  std::optional<Permutation> antipodal_map;
  std::uint64_t strictness_violations = 0;
  std::vector<StrictnessWitness> witnesses;  // first few
  std::vector<std::string> warnings;
};

struct AnalysisReport {
  InputDescriptor input;
  std::string method;  // "apsp", "fast-path" or "matrix"
  std::size_t points = 0;
  std::optional<std::size_t> edges;
  bool uniform_weights = true;
  BoundsReport bounds;
  DistanceDistribution distribution;
  TransitivitySummary transitivity;
  AntipodalitySummary antipodality;
  std::optional<InvolutionReport> involution;
  SymmetryReport symmetry;
  std::optional<UpperExtremal> upper_extremal;  // needs the full matrix
  std::optional<LowerExtremal> lower_extremal;
  std::vector<Violation> violations;
  std::vector<std::string> warnings;
};

/// Runs validate -> metric -> automorphisms -> transitivity -> bounds ->
/// antipodality -> involution -> symmetry -> extremal cases. Input errors
/// (disconnected graph, missing certificate on the fast path) throw;
/// failed theorem checks land in `violations`.
AnalysisReport analyze_graph(const GeneratedGraph& input, InputDescriptor descriptor, const AnalyzeOptions& options = {});
/// `construction` optionally carries known isometries (e.g. p-adic translations).
AnalysisReport analyze_space(const FiniteMetricSpace& space, const AutomorphismSet* construction,
                             InputDescriptor descriptor, const AnalyzeOptions& options = {});

/// {"exact": "p/q", "decimal": "..."}
nlohmann::json rational_json(const Rational& value);

nlohmann::json report_json(const AnalysisReport& report);
/// section,field,exact,decimal rows.
std::string report_csv(const AnalysisReport& report);

/// SHA-256 over the label-independent results (bounds, distribution, tier,
/// transitivity status, symmetry, extremal flags). Two runs on isomorphic
/// inputs agree on it whatever the input descriptor or evidence source.
std::string invariants_digest(const AnalysisReport& report);

nlohmann::json estimate_json(const SampleEstimate& estimate);
nlohmann::json histogram_json(const Histogram& histogram);
/// bin_lo,bin_hi,mass
std::string histogram_csv(const Histogram& histogram);
nlohmann::json sphere_report_json(unsigned d, const SphereHistogram& result);
nlohmann::json torus_report_json(const TorusEstimate& result);

}  // namespace antipode
