#include "antipode/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include <openssl/evp.h>

#include "antipode/error.hpp"

namespace antipode {

namespace {

struct Line {
  std::size_t number;
  std::vector<std::string_view> tokens;
};

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// Non-blank lines with their 1-based line numbers.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  while (!text.empty()) {
    const auto cut = text.find('\n');
    const auto raw = text.substr(0, cut);
    text = cut == std::string_view::npos ? std::string_view{} : text.substr(cut + 1);
    ++number;
    auto tokens = split_tokens(raw);
    if (!tokens.empty()) lines.push_back({number, std::move(tokens)});
  }
  return lines;
}

[[noreturn]] void fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

std::uint64_t parse_count(std::string_view token, std::size_t line, const char* what) {
  std::uint64_t value = 0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || end != token.data() + token.size())
    fail(line, std::string("expected a non-negative integer ") + what + ", got '" + std::string(token) + "'");
  return value;
}

Rational parse_entry(std::string_view token, std::size_t line) {
  try {
    return parse_rational(token);
  } catch (const Error& e) {
    fail(line, e.what());
  }
}

}  // namespace

MatrixFile parse_matrix(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw Error(ErrorCode::ParseError, "empty matrix file");
  if (lines[0].tokens.size() != 1) fail(lines[0].number, "header must be the single point count n");
  const auto n = parse_count(lines[0].tokens[0], lines[0].number, "point count");
  if (n == 0) fail(lines[0].number, "point count must be positive");

  MatrixFile file;
  std::size_t k = 1;
  for (std::uint64_t i = 0; i < n; ++k, ++i) {
    if (k >= lines.size()) throw Error(ErrorCode::ParseError, "expected " + std::to_string(n) + " rows, found " + std::to_string(i));
    const auto& line = lines[k];
    if (line.tokens.front() == "w:") fail(line.number, "weights line before all rows were read");
    if (line.tokens.size() != n)
      fail(line.number, "row has " + std::to_string(line.tokens.size()) + " entries, expected " + std::to_string(n));
    std::vector<Rational> row;
    row.reserve(n);
    for (auto token : line.tokens) row.push_back(parse_entry(token, line.number));
    file.matrix.push_back(std::move(row));
  }
  if (k < lines.size()) {
    const auto& line = lines[k];
    if (line.tokens.front() != "w:") fail(line.number, "unexpected content after the matrix");
    if (line.tokens.size() != n + 1)
      fail(line.number, "weights line has " + std::to_string(line.tokens.size() - 1) + " entries, expected " + std::to_string(n));
    std::vector<Rational> weights;
    for (std::size_t i = 1; i < line.tokens.size(); ++i) weights.push_back(parse_entry(line.tokens[i], line.number));
    file.weights = std::move(weights);
    if (k + 1 < lines.size()) fail(lines[k + 1].number, "unexpected content after the weights line");
  }
  return file;
}

Graph parse_edge_list(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw Error(ErrorCode::ParseError, "empty edge-list file");
  if (lines[0].tokens.size() != 2) fail(lines[0].number, "header must be \"n m\"");
  const auto n = parse_count(lines[0].tokens[0], lines[0].number, "vertex count");
  const auto m = parse_count(lines[0].tokens[1], lines[0].number, "edge count");
  if (n == 0) fail(lines[0].number, "vertex count must be positive");
  if (n > std::numeric_limits<Vertex>::max()) fail(lines[0].number, "vertex count too large");
  if (lines.size() - 1 != m)
    throw Error(ErrorCode::ParseError,
                "header announces " + std::to_string(m) + " edges, file has " + std::to_string(lines.size() - 1));

  std::vector<std::pair<Vertex, Vertex>> edges;
  edges.reserve(m);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& line = lines[k];
    if (line.tokens.size() != 2) fail(line.number, "expected \"u v\"");
    const auto u = parse_count(line.tokens[0], line.number, "vertex");
    const auto v = parse_count(line.tokens[1], line.number, "vertex");
    if (u >= n || v >= n) fail(line.number, "vertex out of range [0, " + std::to_string(n) + ")");
    if (u == v) fail(line.number, "self-loop at vertex " + std::to_string(u));
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }
  return Graph::from_edges(n, edges);
}

void write_matrix(std::ostream& out, const FiniteMetricSpace& space) {
  const std::size_t n = space.size();
  out << n << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out << ' ';
      out << to_exact_string(space.distance(i, j));
    }
    out << '\n';
  }
  if (!space.uniform_weights()) {
    out << "w:";
    for (const auto& w : space.weights()) out << ' ' << to_exact_string(w);
    out << '\n';
  }
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

InputKind detect_input_kind(std::string_view text) {
  const auto lines = tokenize(text);
  if (lines.empty()) throw Error(ErrorCode::ParseError, "empty input");
  switch (lines[0].tokens.size()) {
    case 1: return InputKind::Matrix;
    case 2: return InputKind::EdgeList;
    default: fail(lines[0].number, "header must be \"n\" (matrix) or \"n m\" (edge list)");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::ParseError, "cannot read " + path.string());
  return buffer.str();
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 digest failed");
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    out.push_back(hex[digest[i] >> 4]);
    out.push_back(hex[digest[i] & 15]);
  }
  return out;
}

}  // namespace antipode
