#include "detail/refinement.hpp"

#include <algorithm>
#include <numeric>

#include "antipode/error.hpp"

namespace antipode::detail {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 30;
  h *= 0xbf58476d1ce4e5b9ULL;
  h ^= h >> 27;
  h *= 0x94d049bb133111ebULL;
  h ^= h >> 31;
  return h;
}

}  // namespace

ColoredAdjacency ColoredAdjacency::from_graph(const Graph& g) {
  ColoredAdjacency adj;
  adj.n = g.vertex_count();
  adj.offsets.assign(adj.n + 1, 0);
  adj.targets.reserve(2 * g.edge_count());
  for (Vertex v = 0; v < adj.n; ++v) {
    const auto nb = g.neighbors(v);
    adj.targets.insert(adj.targets.end(), nb.begin(), nb.end());
    adj.offsets[v + 1] = adj.targets.size();
  }
  return adj;
}

ColoredAdjacency ColoredAdjacency::from_metric(const FiniteMetricSpace& space) {
  ColoredAdjacency adj;
  adj.n = space.size();
  std::vector<std::int64_t> values;
  for (std::size_t i = 0; i < adj.n; ++i) {
    const auto r = space.row(i);
    values.insert(values.end(), r.begin(), r.end());
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
  }
  adj.offsets.assign(adj.n + 1, 0);
  adj.targets.reserve(adj.n * (adj.n ? adj.n - 1 : 0));
  adj.colors.reserve(adj.targets.capacity());
  for (std::size_t v = 0; v < adj.n; ++v) {
    const auto r = space.row(v);
    for (std::size_t u = 0; u < adj.n; ++u) {
      if (u == v) continue;
      adj.targets.push_back(static_cast<Vertex>(u));
      adj.colors.push_back(
          static_cast<std::uint32_t>(std::lower_bound(values.begin(), values.end(), r[u]) - values.begin()));
    }
    adj.offsets[v + 1] = adj.targets.size();
  }
  return adj;
}

bool ColoredAdjacency::preserved_by(std::span<const Vertex> images) const {
  if (images.size() != n) return false;
  for (Vertex v = 0; v < n; ++v) {
    const Vertex iv = images[v];
    if (offsets[v + 1] - offsets[v] != offsets[iv + 1] - offsets[iv]) return false;
    const auto image_row = row(iv);
    for (std::size_t idx = offsets[v]; idx < offsets[v + 1]; ++idx) {
      const Vertex iu = images[targets[idx]];
      const auto it = std::lower_bound(image_row.begin(), image_row.end(), iu);
      if (it == image_row.end() || *it != iu) return false;
      if (multicolor() && colors[offsets[iv] + static_cast<std::size_t>(it - image_row.begin())] != colors[idx])
        return false;
    }
  }
  return true;
}

OrderedPartition::OrderedPartition(std::size_t n)
    : elems(n), pos(n), cell(n, 0), end(n, 0), cells(n ? 1 : 0) {
  std::iota(elems.begin(), elems.end(), 0u);
  std::iota(pos.begin(), pos.end(), 0u);
  if (n) end[0] = static_cast<std::uint32_t>(n);
}

OrderedPartition OrderedPartition::from_colors(std::span<const std::uint32_t> colors) {
  const std::size_t n = colors.size();
  OrderedPartition p(n);
  std::stable_sort(p.elems.begin(), p.elems.end(), [&](Vertex a, Vertex b) { return colors[a] < colors[b]; });
  p.cells = 0;
  for (std::uint32_t i = 0; i < n;) {
    std::uint32_t j = i;
    while (j < n && colors[p.elems[j]] == colors[p.elems[i]]) ++j;
    p.end[i] = j;
    for (std::uint32_t q = i; q < j; ++q) {
      p.cell[p.elems[q]] = i;
      p.pos[p.elems[q]] = q;
    }
    ++p.cells;
    i = j;
  }
  return p;
}

std::uint32_t OrderedPartition::individualize(Vertex v) {
  const std::uint32_t c = cell[v];
  const std::uint32_t ce = end[c];
  if (ce - c == 1) return c;
  const std::uint32_t pv = pos[v];
  std::swap(elems[c], elems[pv]);
  pos[elems[pv]] = pv;
  pos[v] = c;
  end[c] = c + 1;
  end[c + 1] = ce;
  for (std::uint32_t q = c + 1; q < ce; ++q) cell[elems[q]] = c + 1;
  ++cells;
  return c;
}

std::uint32_t OrderedPartition::target_cell() const {
  const auto n = static_cast<std::uint32_t>(size());
  std::uint32_t best = n, best_size = 1;
  for (std::uint32_t s = 0; s < n; s = end[s])
    if (end[s] - s > best_size) {
      best = s;
      best_size = end[s] - s;
    }
  return best;
}

std::vector<std::uint32_t> OrderedPartition::cell_starts() const {
  std::vector<std::uint32_t> starts;
  starts.reserve(cells);
  for (std::uint32_t s = 0; s < size(); s = end[s]) starts.push_back(s);
  return starts;
}

Refiner::Refiner(const ColoredAdjacency& adj) : adj_(adj), key_(adj.n, 0), in_queue_(adj.n, 0) {}

void Refiner::compute_keys(const OrderedPartition& p, std::uint32_t start, std::uint32_t stop) {
  touched_.clear();
  if (!adj_.multicolor()) {
    for (std::uint32_t i = start; i < stop; ++i)
      for (Vertex u : adj_.row(p.elems[i])) {
        if (key_[u] == 0) touched_.push_back(u);
        ++key_[u];
      }
    return;
  }

  // Key of u = multiset of edge colours into the splitter, ranked among the
  // touched vertices so that equal multisets share a key.
  pairs_.clear();
  for (std::uint32_t i = start; i < stop; ++i) {
    const Vertex w = p.elems[i];
    for (std::size_t idx = adj_.offsets[w]; idx < adj_.offsets[w + 1]; ++idx)
      pairs_.emplace_back(adj_.targets[idx], adj_.colors[idx]);
  }
  std::sort(pairs_.begin(), pairs_.end());
  sequence_.clear();
  std::vector<std::pair<std::size_t, std::size_t>> spans;  // [begin, end) into sequence_
  for (std::size_t i = 0; i < pairs_.size();) {
    const Vertex u = pairs_[i].first;
    const std::size_t seq_begin = sequence_.size();
    while (i < pairs_.size() && pairs_[i].first == u) {
      const std::uint32_t c = pairs_[i].second;
      std::uint32_t count = 0;
      while (i < pairs_.size() && pairs_[i].first == u && pairs_[i].second == c) {
        ++count;
        ++i;
      }
      sequence_.emplace_back(c, count);
    }
    touched_.push_back(u);
    spans.emplace_back(seq_begin, sequence_.size());
  }
  auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(sequence_.begin() + static_cast<std::ptrdiff_t>(spans[a].first),
                                        sequence_.begin() + static_cast<std::ptrdiff_t>(spans[a].second),
                                        sequence_.begin() + static_cast<std::ptrdiff_t>(spans[b].first),
                                        sequence_.begin() + static_cast<std::ptrdiff_t>(spans[b].second));
  };
  std::vector<std::size_t> order(touched_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), less);
  std::uint64_t rank = 0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || less(order[k - 1], order[k])) ++rank;
    key_[touched_[order[k]]] = rank;
  }
}

std::uint64_t Refiner::refine(OrderedPartition& p, std::span<const std::uint32_t> splitters) {
  std::uint64_t h = 0x6a09e667f3bcc908ULL;
  for (std::uint32_t s : splitters)
    if (!in_queue_[s]) {
      in_queue_[s] = 1;
      queue_.push_back(s);
    }

  std::vector<std::uint32_t> fragments;
  while (!queue_.empty()) {
    if (p.discrete()) {
      for (std::uint32_t s : queue_) in_queue_[s] = 0;
      queue_.clear();
      break;
    }
    const std::uint32_t s = queue_.front();
    queue_.pop_front();
    in_queue_[s] = 0;
    const std::uint32_t e = p.end[s];
    compute_keys(p, s, e);
    h = mix(mix(h, s), e - s);

    std::sort(touched_.begin(), touched_.end(), [&](Vertex a, Vertex b) {
      return p.cell[a] != p.cell[b] ? p.cell[a] < p.cell[b] : key_[a] < key_[b];
    });
    for (std::size_t i = 0; i < touched_.size();) {
      const std::uint32_t c = p.cell[touched_[i]];
      std::size_t j = i;
      while (j < touched_.size() && p.cell[touched_[j]] == c) ++j;
      const std::uint32_t t = static_cast<std::uint32_t>(j - i);
      const std::uint32_t ce = p.end[c];
      const std::uint32_t cell_size = ce - c;
      if (cell_size == 1 || (t == cell_size && key_[touched_[i]] == key_[touched_[j - 1]])) {
        i = j;
        continue;
      }

      // touched vertices to the front in key order, untouched ones last
      for (std::uint32_t k = 0; k < t; ++k) {
        const Vertex u = touched_[i + k];
        const std::uint32_t from = p.pos[u], to = c + k;
        const Vertex displaced = p.elems[to];
        p.elems[to] = u;
        p.pos[u] = to;
        p.elems[from] = displaced;
        p.pos[displaced] = from;
      }
      fragments.assign(1, c);
      for (std::uint32_t k = 1; k < t; ++k)
        if (key_[touched_[i + k]] != key_[touched_[i + k - 1]]) fragments.push_back(c + k);
      if (t < cell_size) fragments.push_back(c + t);

      h = mix(mix(h, c), fragments.size());
      std::size_t largest = 0;
      std::uint32_t largest_size = 0;
      for (std::size_t f = 0; f < fragments.size(); ++f) {
        const std::uint32_t fs = fragments[f];
        const std::uint32_t fe = f + 1 < fragments.size() ? fragments[f + 1] : ce;
        p.end[fs] = fe;
        for (std::uint32_t q = fs; q < fe; ++q) p.cell[p.elems[q]] = fs;
        const std::uint64_t fragment_key = fs < c + t ? key_[p.elems[fs]] : 0;
        h = mix(mix(h, fe - fs), fragment_key);
        if (fe - fs > largest_size) {
          largest = f;
          largest_size = fe - fs;
        }
      }
      p.cells += fragments.size() - 1;

      const bool whole = in_queue_[c] != 0;
      for (std::size_t f = 0; f < fragments.size(); ++f) {
        if (!whole && f == largest) continue;
        if (!in_queue_[fragments[f]]) {
          in_queue_[fragments[f]] = 1;
          queue_.push_back(fragments[f]);
        }
      }
      i = j;
    }
    for (Vertex u : touched_) key_[u] = 0;
  }
  return mix(h, p.cells);
}

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n), flag_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0u); }
  Vertex find(Vertex v) {
    while (parent_[v] != v) {
      parent_[v] = parent_[parent_[v]];
      v = parent_[v];
    }
    return v;
  }
  void unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    flag_[a] |= flag_[b];
  }
  std::uint8_t& flag(Vertex root) { return flag_[root]; }
  void clear_flags() { std::fill(flag_.begin(), flag_.end(), 0); }

 private:
  std::vector<Vertex> parent_;
  std::vector<std::uint8_t> flag_;
};

class Search {
 public:
  Search(const ColoredAdjacency& adj, std::uint64_t budget) : adj_(adj), refiner_(adj), budget_(budget) {}

  AutomorphismSet run(std::string basis) {
    const std::size_t n = adj_.n;
    if (n == 0) return AutomorphismSet(0, {}, AutomorphismOrigin::Search, std::move(basis), {}, BigInt(1));

    OrderedPartition root(n);
    ++nodes_;
    const std::uint32_t whole[] = {0};
    trace_.push_back(refiner_.refine(root, whole));
    path_.push_back(std::move(root));
    while (!path_.back().discrete()) {
      const OrderedPartition& current = path_.back();
      const std::uint32_t s = current.target_cell();
      const Vertex v = *std::min_element(current.elems.begin() + s, current.elems.begin() + current.end[s]);
      OrderedPartition child = current;
      std::uint64_t trace = 0;
      if (!refine_child(child, v, trace)) return finish(n, std::move(basis), BigInt(1));
      target_.push_back(s);
      chosen_.push_back(v);
      trace_.push_back(trace);
      path_.push_back(std::move(child));
    }
    leaf_ = path_.back().elems;

    UnionFind orbits(n);
    BigInt order = 1;
    for (std::size_t l = target_.size(); l-- > 0;) {
      const std::uint32_t s = target_[l];
      std::vector<Vertex> candidates(path_[l].elems.begin() + s, path_[l].elems.begin() + path_[l].end[s]);
      std::sort(candidates.begin(), candidates.end());
      const Vertex v = chosen_[l];
      orbits.clear_flags();
      for (Vertex w : candidates) {
        if (w == v) continue;
        const Vertex rw = orbits.find(w);
        if (rw == orbits.find(v) || orbits.flag(rw)) continue;
        OrderedPartition child = path_[l];
        std::uint64_t trace = 0;
        if (!refine_child(child, w, trace)) break;
        const bool found = trace == trace_[l + 1] && explore(child, l + 1);
        if (truncated_) break;
        if (found) {
          for (Vertex i = 0; i < n; ++i) orbits.unite(i, found_(i));
          generators_.push_back(std::move(found_));
        } else {
          orbits.flag(orbits.find(w)) = 1;
        }
      }
      if (truncated_) break;
      const Vertex rv = orbits.find(v);
      order *= static_cast<std::uint64_t>(
          std::count_if(candidates.begin(), candidates.end(), [&](Vertex w) { return orbits.find(w) == rv; }));
    }
    return finish(n, std::move(basis), std::move(order));
  }

 private:
  AutomorphismSet finish(std::size_t n, std::string basis, BigInt order) {
    SearchStatistics stats{nodes_, truncated_};
    std::optional<BigInt> known_order;
    if (!truncated_) known_order = std::move(order);
    return AutomorphismSet(n, std::move(generators_), AutomorphismOrigin::Search, std::move(basis), stats,
                           std::move(known_order));
  }

  bool refine_child(OrderedPartition& child, Vertex v, std::uint64_t& trace) {
    if (nodes_ >= budget_) {
      truncated_ = true;
      return false;
    }
    ++nodes_;
    const std::uint32_t splitter[] = {child.individualize(v)};
    trace = refiner_.refine(child, splitter);
    return true;
  }

  // `node` sits at `level` of a subtree whose traces so far match the first path.
  bool explore(const OrderedPartition& node, std::size_t level) {
    const std::size_t leaf_level = path_.size() - 1;
    if (node.discrete()) {
      if (level != leaf_level) return false;
      std::vector<Vertex> images(adj_.n);
      for (std::size_t i = 0; i < adj_.n; ++i) images[leaf_[i]] = node.elems[i];
      if (!adj_.preserved_by(images)) return false;
      found_ = Permutation(std::move(images));
      return true;
    }
    if (level >= leaf_level) return false;
    const std::uint32_t s = node.target_cell();
    if (s != target_[level] || node.end[s] != path_[level].end[s]) return false;
    std::vector<Vertex> candidates(node.elems.begin() + s, node.elems.begin() + node.end[s]);
    std::sort(candidates.begin(), candidates.end());
    for (Vertex u : candidates) {
      OrderedPartition child = node;
      std::uint64_t trace = 0;
      if (!refine_child(child, u, trace)) return false;
      if (trace != trace_[level + 1]) continue;
      if (explore(child, level + 1)) return true;
      if (truncated_) return false;
    }
    return false;
  }

  const ColoredAdjacency& adj_;
  Refiner refiner_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool truncated_ = false;

  std::vector<OrderedPartition> path_;
  std::vector<std::uint32_t> target_;
  std::vector<Vertex> chosen_;
  std::vector<std::uint64_t> trace_;
  std::vector<Vertex> leaf_;
  std::vector<Permutation> generators_;
  Permutation found_;
};

}  // namespace

AutomorphismSet search_automorphisms(const ColoredAdjacency& adj, std::uint64_t node_budget, std::string basis) {
  return Search(adj, node_budget).run(std::move(basis));
}

std::vector<std::uint32_t> equitable_colors(const ColoredAdjacency& adj, std::span<const std::uint32_t> initial,
                                            std::size_t& class_count) {
  if (initial.size() != adj.n)
    throw Error(ErrorCode::DimensionMismatch, "initial colouring has the wrong number of vertices");
  OrderedPartition p = OrderedPartition::from_colors(initial);
  const auto starts = p.cell_starts();
  Refiner refiner(adj);
  refiner.refine(p, starts);
  std::vector<std::uint32_t> colors(adj.n);
  class_count = 0;
  for (std::uint32_t s : p.cell_starts()) {
    for (std::uint32_t q = s; q < p.end[s]; ++q) colors[p.elems[q]] = static_cast<std::uint32_t>(class_count);
    ++class_count;
  }
  return colors;
}

}  // namespace antipode::detail
