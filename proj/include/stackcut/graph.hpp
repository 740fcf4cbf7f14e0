#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "stackcut/coloring.hpp"
#include "stackcut/kernels.hpp"
#include "stackcut/model.hpp"

namespace stackcut {

/// Vertex per interval, edge per overlapping pair. Edges are (i, j) with i < j,
/// sorted lexicographically.
struct OverlapGraph {
  std::size_t num_vertices = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  std::size_t num_edges() const noexcept { return edges.size(); }
  /// Adds edge {u, v}; rejects self-loops and out-of-range vertices. Does not check duplicates.
  void add_edge(std::uint32_t u, std::uint32_t v);
};

struct CutStats {
  std::uint64_t m = 0;          ///< overlapping pairs
  std::uint64_t cut = 0;        ///< overlapping pairs with distinct colors
  std::uint64_t conflicts = 0;  ///< m - cut

  /// cut / m; NaN when m == 0.
  double ratio() const noexcept;
  friend bool operator==(const CutStats&, const CutStats&) = default;
};

struct CutResult {
  std::uint64_t cut = 0;
  Coloring coloring;
};

/// The intervals intersect and neither contains the other (strict).
inline bool overlaps(const Interval& a, const Interval& b) noexcept {
  return kernels::endpoints_interleave(a.lo(), a.hi(), b.lo(), b.hi());
}

/// Pairwise construction, O(n^2).
OverlapGraph build_overlap_graph(std::span<const Interval> intervals);

/// Number of overlapping pairs by endpoint sweep with a Fenwick tree, O(n log n).
std::uint64_t count_overlapping_pairs(std::span<const Interval> intervals);

/// Overlapping pairs among the intervals listed in `members` (indices into `intervals`).
std::uint64_t count_overlapping_pairs_among(std::span<const Interval> intervals,
                                            std::span<const std::uint32_t> members);

/// Same count by checking every pair; runs on the active SIMD kernel.
std::uint64_t count_overlapping_pairs_naive(std::span<const Interval> intervals);
std::uint64_t count_overlapping_pairs_naive(std::span<const Interval> intervals,
                                            const kernels::KernelTable& kernel);

/// Overlapping pairs whose members share a color, one sweep per color class.
std::uint64_t count_same_color_overlaps(std::span<const Interval> intervals,
                                        std::span<const Color> colors, int k);

/// Cut statistics via sweeps. Throws std::invalid_argument on size mismatch.
CutStats evaluate_cut(std::span<const Interval> intervals, const Coloring& coloring);

/// Cut statistics by pairwise enumeration; the oracle for evaluate_cut.
CutStats evaluate_cut_naive(std::span<const Interval> intervals, const Coloring& coloring);

/// Edges of `graph` whose endpoints get distinct colors.
std::uint64_t cut_size(const OverlapGraph& graph, const Coloring& coloring);

inline constexpr std::size_t kExactSolverMaxVertices = 16;

/// Optimal MAX k-CUT by branch and bound over colorings in canonical
/// (first-use) color order. Returns the lexicographically smallest optimal
/// coloring. Throws InstanceTooLarge above kExactSolverMaxVertices vertices.
CutResult max_kcut_exact(const OverlapGraph& graph, int k);

/// Vertices in index order, each given the color with fewest already-colored
/// neighbors (lowest color on ties). Cut is at least (1 - 1/k) m.
CutResult greedy_kcut(const OverlapGraph& graph, int k);

/// "n m" header then one "i j" line per edge, 0-based.
void write_edge_list(std::ostream& out, const OverlapGraph& graph);

}  // namespace stackcut
