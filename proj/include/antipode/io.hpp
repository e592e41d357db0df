#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "antipode/graph.hpp"
#include "antipode/metric.hpp"
#include "antipode/rational.hpp"

namespace antipode {

/// Distance matrix as read from disk, before any axiom is checked.
///
///   n
///   d00 d01 ... d0(n-1)
///   ...
///   w: m0 m1 ... m(n-1)      (optional)
///
/// Entries are integers or "p/q". Blank lines are ignored.
struct MatrixFile {
  std::vector<std::vector<Rational>> matrix;
  std::optional<std::vector<Rational>> weights;
};

/// Throws Error(ParseError) with the offending line number.
MatrixFile parse_matrix(std::string_view text);
/// "n m" then m lines "u v", 0-based.
Graph parse_edge_list(std::string_view text);

void write_matrix(std::ostream& out, const FiniteMetricSpace& space);
void write_edge_list(std::ostream& out, const Graph& g);

enum class InputKind { Matrix, EdgeList };

/// One token on the header line means a matrix, two an edge list.
InputKind detect_input_kind(std::string_view text);

/// Whole file as bytes; throws Error(ParseError) if it cannot be read.
std::string read_file(const std::filesystem::path& path);

/// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view bytes);

}  // namespace antipode
