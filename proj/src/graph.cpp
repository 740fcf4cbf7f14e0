#include "stackcut/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "stackcut/errors.hpp"

namespace stackcut {
namespace {

class Fenwick {
 public:
  explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}

  void add(std::size_t pos) {
    for (++pos; pos < tree_.size(); pos += pos & (~pos + 1)) ++tree_[pos];
  }

  /// Count at positions [0, end).
  std::uint64_t prefix(std::size_t end) const {
    std::uint64_t sum = 0;
    for (; end > 0; end -= end & (~end + 1)) sum += tree_[end];
    return sum;
  }

 private:
  std::vector<std::uint32_t> tree_;
};

// Counts interleaving pairs among the intervals selected by `members`.
// Intervals are visited by increasing left endpoint; an earlier interval a
// crosses b iff a.hi lies strictly inside (b.lo, b.hi). Intervals sharing a
// left endpoint are inserted only after the whole group has been queried.
std::uint64_t sweep_count(std::span<const double> lo, std::span<const double> hi,
                          std::span<const std::uint32_t> members) {
  const std::size_t n = members.size();
  if (n < 2) return 0;
  std::vector<double> values;
  values.reserve(2 * n);
  for (auto i : members) {
    values.push_back(lo[i]);
    values.push_back(hi[i]);
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  const auto rank = [&](double v) {
    return static_cast<std::size_t>(std::lower_bound(values.begin(), values.end(), v) -
                                    values.begin());
  };

  std::vector<std::uint32_t> order(members.begin(), members.end());
  std::sort(order.begin(), order.end(),
            [&](std::uint32_t a, std::uint32_t b) { return lo[a] < lo[b]; });

  Fenwick inserted(values.size());
  std::uint64_t count = 0;
  std::size_t group = 0;
  while (group < n) {
    std::size_t end = group;
    while (end < n && lo[order[end]] == lo[order[group]]) ++end;
    for (std::size_t t = group; t < end; ++t) {
      const std::size_t r_lo = rank(lo[order[t]]);
      const std::size_t r_hi = rank(hi[order[t]]);
      if (r_hi > r_lo + 1) count += inserted.prefix(r_hi) - inserted.prefix(r_lo + 1);
    }
    for (std::size_t t = group; t < end; ++t) inserted.add(rank(hi[order[t]]));
    group = end;
  }
  return count;
}

struct Endpoints {
  std::vector<double> lo;
  std::vector<double> hi;
};

Endpoints endpoints_of(std::span<const Interval> intervals) {
  Endpoints e{std::vector<double>(intervals.size()), std::vector<double>(intervals.size())};
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    e.lo[i] = intervals[i].lo();
    e.hi[i] = intervals[i].hi();
  }
  return e;
}

void check_index_range(std::size_t n) {
  if (n > std::numeric_limits<std::uint32_t>::max())
    throw std::length_error("instance too large for 32-bit vertex ids");
}

void check_coloring(std::span<const Interval> intervals, const Coloring& coloring) {
  if (intervals.size() != coloring.size())
    throw std::invalid_argument("coloring size " + std::to_string(coloring.size()) +
                                " does not match instance size " +
                                std::to_string(intervals.size()));
  coloring.validate();
}

}  // namespace

void OverlapGraph::add_edge(std::uint32_t u, std::uint32_t v) {
  if (u == v) throw std::invalid_argument("self-loop");
  if (u >= num_vertices || v >= num_vertices) throw std::out_of_range("edge endpoint out of range");
  edges.emplace_back(std::min(u, v), std::max(u, v));
}

double CutStats::ratio() const noexcept {
  return m == 0 ? std::numeric_limits<double>::quiet_NaN()
                : static_cast<double>(cut) / static_cast<double>(m);
}

OverlapGraph build_overlap_graph(std::span<const Interval> intervals) {
  check_index_range(intervals.size());
  OverlapGraph g;
  g.num_vertices = intervals.size();
  for (std::uint32_t i = 0; i < intervals.size(); ++i) {
    for (std::uint32_t j = i + 1; j < intervals.size(); ++j) {
      if (overlaps(intervals[i], intervals[j])) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

std::uint64_t count_overlapping_pairs(std::span<const Interval> intervals) {
  check_index_range(intervals.size());
  const auto e = endpoints_of(intervals);
  std::vector<std::uint32_t> all(intervals.size());
  std::iota(all.begin(), all.end(), 0u);
  return sweep_count(e.lo, e.hi, all);
}

std::uint64_t count_overlapping_pairs_among(std::span<const Interval> intervals,
                                            std::span<const std::uint32_t> members) {
  check_index_range(intervals.size());
  for (auto i : members) {
    if (i >= intervals.size()) throw std::out_of_range("member index out of range");
  }
  const auto e = endpoints_of(intervals);
  return sweep_count(e.lo, e.hi, members);
}

std::uint64_t count_overlapping_pairs_naive(std::span<const Interval> intervals) {
  return count_overlapping_pairs_naive(intervals, kernels::active());
}

std::uint64_t count_overlapping_pairs_naive(std::span<const Interval> intervals,
                                            const kernels::KernelTable& kernel) {
  const auto e = endpoints_of(intervals);
  const std::span<const double> lo(e.lo), hi(e.hi);
  std::uint64_t count = 0;
  for (std::size_t i = 0; i + 1 < intervals.size(); ++i)
    count += kernel.count_overlaps_against(lo[i], hi[i], lo.subspan(i + 1), hi.subspan(i + 1));
  return count;
}

std::uint64_t count_same_color_overlaps(std::span<const Interval> intervals,
                                        std::span<const Color> colors, int k) {
  if (intervals.size() != colors.size())
    throw std::invalid_argument("coloring size does not match instance size");
  check_index_range(intervals.size());
  const auto e = endpoints_of(intervals);
  std::vector<std::vector<std::uint32_t>> classes(static_cast<std::size_t>(k));
  for (std::uint32_t i = 0; i < colors.size(); ++i) {
    if (colors[i] < 1 || colors[i] > k) throw std::invalid_argument("color outside [1, k]");
    classes[static_cast<std::size_t>(colors[i] - 1)].push_back(i);
  }
  std::uint64_t same = 0;
  for (const auto& members : classes) same += sweep_count(e.lo, e.hi, members);
  return same;
}

CutStats evaluate_cut(std::span<const Interval> intervals, const Coloring& coloring) {
  check_coloring(intervals, coloring);
  CutStats s;
  s.m = count_overlapping_pairs(intervals);
  s.conflicts = count_same_color_overlaps(intervals, coloring.colors, coloring.k);
  s.cut = s.m - s.conflicts;
  return s;
}

CutStats evaluate_cut_naive(std::span<const Interval> intervals, const Coloring& coloring) {
  check_coloring(intervals, coloring);
  CutStats s;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    for (std::size_t j = i + 1; j < intervals.size(); ++j) {
      if (!overlaps(intervals[i], intervals[j])) continue;
      ++s.m;
      if (coloring.colors[i] != coloring.colors[j]) ++s.cut;
    }
  }
  s.conflicts = s.m - s.cut;
  return s;
}

std::uint64_t cut_size(const OverlapGraph& graph, const Coloring& coloring) {
  if (coloring.size() != graph.num_vertices)
    throw std::invalid_argument("coloring size does not match graph");
  std::uint64_t cut = 0;
  for (const auto& [u, v] : graph.edges) cut += coloring.colors[u] != coloring.colors[v];
  return cut;
}

CutResult max_kcut_exact(const OverlapGraph& graph, int k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  const std::size_t n = graph.num_vertices;
  if (n > kExactSolverMaxVertices)
    throw InstanceTooLarge("exact MAX k-CUT is limited to " +
                           std::to_string(kExactSolverMaxVertices) + " vertices, got " +
                           std::to_string(n));
  CutResult best{0, Coloring{std::vector<Color>(n, 1), k}};
  if (n == 0) return best;

  // earlier[v]: neighbours of v with smaller index.
  std::vector<std::vector<std::uint32_t>> earlier(n);
  for (const auto& [u, v] : graph.edges) earlier[v].push_back(u);
  // pending[d]: edges not yet decided once vertices [0, d) are colored.
  std::vector<std::uint64_t> pending(n + 1, 0);
  for (std::size_t d = n; d-- > 0;) pending[d] = pending[d + 1] + earlier[d].size();

  std::vector<Color> current(n, 0);
  std::int64_t best_cut = -1;
  // Colors are introduced in first-use order, which removes the k! relabelings.
  auto search = [&](auto&& self, std::size_t depth, int used, std::uint64_t cut) -> void {
    if (static_cast<std::int64_t>(cut + pending[depth]) <= best_cut) return;
    if (depth == n) {
      best_cut = static_cast<std::int64_t>(cut);
      best.coloring.colors = current;
      return;
    }
    const int limit = std::min(k, used + 1);
    for (int c = 1; c <= limit; ++c) {
      std::uint64_t gained = 0;
      for (auto u : earlier[depth]) gained += current[u] != c;
      current[depth] = c;
      self(self, depth + 1, std::max(used, c), cut + gained);
    }
    current[depth] = 0;
  };
  search(search, 0, 0, 0);
  best.cut = static_cast<std::uint64_t>(best_cut);
  return best;
}

CutResult greedy_kcut(const OverlapGraph& graph, int k) {
  if (k < 2) throw std::invalid_argument("greedy MAX k-CUT needs k >= 2");
  const std::size_t n = graph.num_vertices;
  std::vector<std::vector<std::uint32_t>> earlier(n);
  for (const auto& [u, v] : graph.edges) earlier[v].push_back(u);

  CutResult result{0, Coloring{std::vector<Color>(n, 0), k}};
  std::vector<std::uint64_t> same(static_cast<std::size_t>(k));
  for (std::size_t v = 0; v < n; ++v) {
    std::fill(same.begin(), same.end(), 0);
    for (auto u : earlier[v]) ++same[static_cast<std::size_t>(result.coloring.colors[u] - 1)];
    const auto pick = std::min_element(same.begin(), same.end()) - same.begin();
    result.coloring.colors[v] = static_cast<Color>(pick) + 1;
    result.cut += earlier[v].size() - same[static_cast<std::size_t>(pick)];
  }
  return result;
}

void write_edge_list(std::ostream& out, const OverlapGraph& graph) {
  out << graph.num_vertices << ' ' << graph.num_edges() << '\n';
  for (const auto& [u, v] : graph.edges) out << u << ' ' << v << '\n';
}

}  // namespace stackcut
