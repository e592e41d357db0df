#include "antipode/permutation.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "antipode/error.hpp"

namespace antipode {

Permutation::Permutation(std::vector<Vertex> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Vertex v : images_) {
    if (v >= images_.size() || seen[v])
      throw Error(ErrorCode::BadParameter, "images do not form a permutation");
    seen[v] = true;
  }
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<Vertex> images(n);
  for (std::size_t i = 0; i < n; ++i) images[i] = static_cast<Vertex>(i);
  return Permutation(std::move(images), Unchecked{});
}

Permutation Permutation::inverse() const {
  std::vector<Vertex> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = static_cast<Vertex>(i);
  return Permutation(std::move(inv), Unchecked{});
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

std::string Permutation::to_string() const {
  std::string out;
  out.reserve(images_.size() * 4);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) out.push_back(' ');
    out += std::to_string(images_[i]);
  }
  return out;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "composing permutations of different degree");
  std::vector<Vertex> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.images_[b.images_[i]];
  return Permutation(std::move(out), Permutation::Unchecked{});
}

AutomorphismSet::AutomorphismSet(std::size_t degree, std::vector<Permutation> generators, AutomorphismOrigin origin,
                                 std::string basis, SearchStatistics stats, std::optional<BigInt> group_order)
    : degree_(degree),
      generators_(std::move(generators)),
      origin_(origin),
      basis_(std::move(basis)),
      stats_(stats),
      group_order_(std::move(group_order)) {
  for (const auto& g : generators_)
    if (g.size() != degree_) throw Error(ErrorCode::DimensionMismatch, "generator degree differs from set degree");

  // Schreier forest by BFS from the smallest unvisited vertex.
  constexpr auto kNone = static_cast<std::uint32_t>(-1);
  root_.assign(degree_, 0);
  parent_.assign(degree_, 0);
  via_.assign(degree_, kNone);
  std::vector<bool> seen(degree_, false);
  std::deque<Vertex> queue;
  for (Vertex r = 0; r < degree_; ++r) {
    if (seen[r]) continue;
    ++orbit_count_;
    seen[r] = true;
    root_[r] = r;
    parent_[r] = r;
    queue.push_back(r);
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      for (std::uint32_t gi = 0; gi < generators_.size(); ++gi) {
        const Vertex w = generators_[gi](u);
        if (seen[w]) continue;
        seen[w] = true;
        root_[w] = r;
        parent_[w] = u;
        via_[w] = gi;
        queue.push_back(w);
      }
    }
  }
}

std::vector<std::vector<Vertex>> AutomorphismSet::orbit_partition() const {
  std::vector<std::vector<Vertex>> orbits;
  std::vector<std::size_t> index(degree_, 0);
  for (Vertex v = 0; v < degree_; ++v) {
    if (root_[v] == v) {
      index[v] = orbits.size();
      orbits.emplace_back();
    }
    orbits[index[root_[v]]].push_back(v);
  }
  return orbits;
}

std::vector<std::size_t> AutomorphismSet::word(Vertex v) const {
  std::vector<std::size_t> w;
  while (parent_[v] != v) {
    w.push_back(via_[v]);
    v = parent_[v];
  }
  std::reverse(w.begin(), w.end());
  return w;
}

Permutation AutomorphismSet::transversal(Vertex v) const {
  Permutation result = Permutation::identity(degree_);
  for (std::size_t gi : word(v)) result = generators_[gi] * result;
  return result;
}

}  // namespace antipode
