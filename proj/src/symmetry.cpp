#include "antipode/symmetry.hpp"

#include <algorithm>
#include <string>

#include "antipode/error.hpp"
#include "detail/refinement.hpp"

namespace antipode {

ColoredPartition ColoredPartition::uniform(std::size_t n) { return {std::vector<std::uint32_t>(n, 0), n ? 1u : 0u}; }

ColoredPartition ColoredPartition::individualized(std::size_t n, Vertex v) {
  if (v >= n) throw Error(ErrorCode::BadParameter, "vertex out of range", {v});
  ColoredPartition p{std::vector<std::uint32_t>(n, 1), n > 1 ? 2u : 1u};
  p.colors[v] = 0;
  return p;
}

std::vector<std::vector<Vertex>> ColoredPartition::classes() const {
  std::vector<std::vector<Vertex>> out(class_count);
  for (Vertex v = 0; v < colors.size(); ++v) {
    if (colors[v] >= out.size()) out.resize(colors[v] + 1);
    out[colors[v]].push_back(v);
  }
  return out;
}

namespace {

ColoredPartition refine_with(const detail::ColoredAdjacency& adj, const ColoredPartition& initial) {
  ColoredPartition out;
  out.colors = detail::equitable_colors(adj, initial.colors, out.class_count);
  return out;
}

}  // namespace

ColoredPartition refine_colors(const Graph& g, const ColoredPartition& initial) {
  return refine_with(detail::ColoredAdjacency::from_graph(g), initial);
}

ColoredPartition refine_colors(const FiniteMetricSpace& space, const ColoredPartition& initial) {
  return refine_with(detail::ColoredAdjacency::from_metric(space), initial);
}

AutomorphismSet automorphism_search(const Graph& g, SearchOptions options) {
  auto set = detail::search_automorphisms(detail::ColoredAdjacency::from_graph(g), options.node_budget,
                                          "individualization-refinement search");
  for (const auto& p : set.generators())
    if (!g.preserves_adjacency(p)) throw Error(ErrorCode::InvalidEvidence, "search produced a non-automorphism");
  return set;
}

AutomorphismSet isometry_search(const FiniteMetricSpace& space, SearchOptions options) {
  auto set = detail::search_automorphisms(detail::ColoredAdjacency::from_metric(space), options.node_budget,
                                          "individualization-refinement search over distance colours");
  if (!generators_are_isometries(space, set))
    throw Error(ErrorCode::InvalidEvidence, "search produced a non-isometry");
  return set;
}

std::string_view transitivity_status_name(TransitivityStatus status) noexcept {
  switch (status) {
    case TransitivityStatus::Certificate: return "certificate";
    case TransitivityStatus::Refutation: return "refutation";
    case TransitivityStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

namespace {

TransitivityVerdict verdict_from(const AutomorphismSet& auts, const ColoredPartition& refined,
                                 const std::vector<std::size_t>& degrees) {
  TransitivityVerdict verdict;
  if (auts.transitive()) {
    verdict.status = TransitivityStatus::Certificate;
    TransitivityCertificate cert;
    cert.source = auts.origin() == AutomorphismOrigin::Search ? CertificateSource::Search : CertificateSource::Construction;
    cert.basis = auts.basis();
    cert.automorphisms = auts;
    verdict.certificate = std::move(cert);
    return verdict;
  }
  if (refined.class_count >= 2) {
    verdict.status = TransitivityStatus::Refutation;
    const auto classes = refined.classes();
    const Vertex a = classes[0].front(), b = classes[1].front();
    verdict.separated = std::make_pair(std::min(a, b), std::max(a, b));
    if (!degrees.empty() && degrees[a] != degrees[b]) {
      verdict.reason = "degree sequence separates vertex " + std::to_string(a) + " (degree " +
                       std::to_string(degrees[a]) + ") from vertex " + std::to_string(b) + " (degree " +
                       std::to_string(degrees[b]) + ")";
    } else {
      verdict.reason = "equitable refinement splits the points into " + std::to_string(refined.class_count) + " classes";
    }
    return verdict;
  }
  if (auts.complete()) {
    verdict.status = TransitivityStatus::Refutation;
    const auto orbits = auts.orbit_partition();
    verdict.separated = std::make_pair(orbits[0].front(), orbits[1].front());
    verdict.reason = "automorphism group has " + std::to_string(orbits.size()) + " orbits";
    return verdict;
  }
  verdict.status = TransitivityStatus::Inconclusive;
  verdict.reason = "search truncated after " + std::to_string(auts.statistics().nodes) +
                   " nodes with orbits still split; refinement does not separate points";
  return verdict;
}

}  // namespace

TransitivityVerdict is_vertex_transitive(const Graph& g, const AutomorphismSet& auts) {
  const std::size_t n = g.vertex_count();
  if (auts.degree() != n) throw Error(ErrorCode::DimensionMismatch, "automorphisms act on a different vertex count");
  for (const auto& p : auts.generators())
    if (!g.preserves_adjacency(p)) throw Error(ErrorCode::InvalidEvidence, "generator is not an automorphism of the graph");
  std::vector<std::size_t> degrees(n);
  for (Vertex v = 0; v < n; ++v) degrees[v] = g.degree(v);
  return verdict_from(auts, refine_colors(g, ColoredPartition::uniform(n)), degrees);
}

TransitivityVerdict is_homogeneous(const FiniteMetricSpace& space, const AutomorphismSet& isometries) {
  if (isometries.degree() != space.size())
    throw Error(ErrorCode::DimensionMismatch, "isometries act on a different point count");
  if (!generators_are_isometries(space, isometries))
    throw Error(ErrorCode::InvalidEvidence, "generator is not an isometry of the space");
  return verdict_from(isometries, refine_colors(space, ColoredPartition::uniform(space.size())), {});
}

std::vector<Vertex> orbit_of(Vertex v, const AutomorphismSet& auts) {
  if (v >= auts.degree()) throw Error(ErrorCode::BadParameter, "vertex out of range", {v});
  std::vector<Vertex> orbit;
  for (Vertex u = 0; u < auts.degree(); ++u)
    if (auts.same_orbit(u, v)) orbit.push_back(u);
  return orbit;
}

std::optional<Permutation> find_mapping_automorphism(Vertex x, Vertex y, const Graph& g, const AutomorphismSet& auts) {
  if (auts.degree() != g.vertex_count()) throw Error(ErrorCode::DimensionMismatch, "automorphisms act on a different vertex count");
  if (x >= auts.degree() || y >= auts.degree()) throw Error(ErrorCode::BadParameter, "vertex out of range", {x, y});
  if (!auts.same_orbit(x, y)) return std::nullopt;
  Permutation map = auts.transversal(y) * auts.transversal(x).inverse();
  if (map(x) != y) throw Error(ErrorCode::InvalidEvidence, "Schreier words do not compose to the requested mapping");
  if (!g.preserves_adjacency(map)) throw Error(ErrorCode::InvalidEvidence, "composed mapping is not an automorphism");
  return map;
}

}  // namespace antipode
