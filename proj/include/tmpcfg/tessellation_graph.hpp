#pragma once

// Face-midpoint graph of a tessellation.
//
// Cells are numbered column-major from the bottom-left: cell (c, r) with
// 1 <= c <= cols, 1 <= r <= rows has id (c-1)*rows + r. Face (cell, slot) has
// global node id 6*(cell-1) + slot.
//
// Columns are stacked like a honeycomb sheared upward, so each cell touches up
// to six neighbours. The three inter-cell pairings, seen from cell (c, r):
//   vertical       (c, r).top         <-> (c, r+1).bottom
//   horizontal     (c, r).upper-right <-> (c+1, r).lower-left
//   anti-diagonal  (c, r).lower-right <-> (c+1, r-1).upper-left
//
// For 2-by-2 this gives E' = {(1,16), (2,11), (7,22), (12,15), (14,23)}.

#include <algorithm>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tmpcfg/cell_kinematics.hpp"
#include "tmpcfg/error.hpp"

namespace tmpcfg {

struct TessellationLayout {
  int cols = 1;
  int rows = 1;

  friend bool operator==(const TessellationLayout&, const TessellationLayout&) = default;

  int n() const noexcept { return cols * rows; }
  int node_count() const noexcept { return 6 * n(); }

  void validate() const {
    if (cols < 1 || rows < 1) throw InvalidParameters("layout needs cols >= 1 and rows >= 1");
  }

  /// 1-based cell id of grid position (col, row).
  int cell_id(int col, int row) const noexcept { return (col - 1) * rows + row; }
};

/// 1-based grid position of a cell.
struct GridCell {
  int col = 1;
  int row = 1;

  friend bool operator==(GridCell, GridCell) = default;
};

inline GridCell grid_position(const TessellationLayout& layout, int cell) {
  return {(cell - 1) / layout.rows + 1, (cell - 1) % layout.rows + 1};
}

constexpr int global_id(int cell, Slot slot) noexcept { return 6 * (cell - 1) + static_cast<int>(slot); }

inline std::pair<int, Slot> face_of(int globalId) {
  return {(globalId - 1) / 6 + 1, static_cast<Slot>((globalId - 1) % 6 + 1)};
}

enum class EdgeKind : std::uint8_t { Intra, Vertical, Horizontal, Diagonal };

/// Undirected edge between global ids, stored with i < j.
struct Edge {
  int i = 0;
  int j = 0;
  EdgeKind kind = EdgeKind::Intra;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct TessellationGraph {
  TessellationLayout bounds;     // bounding grid
  std::vector<GridCell> cells;   // cell id k sits at cells[k-1]
  std::vector<int> grid;         // bounds cell_id -> cell id, 0 when absent
  std::vector<Edge> intraEdges;  // hexagon ring of each cell
  std::vector<Edge> interEdges;  // E', sorted by (i, j)
  std::vector<int> activeNodes;  // V', sorted

  int cell_count() const noexcept { return static_cast<int>(cells.size()); }
  int node_count() const noexcept { return 6 * cell_count(); }

  /// Cell id at (col, row), or 0 when the position is empty or out of bounds.
  int cell_at(int col, int row) const noexcept {
    if (col < 1 || row < 1 || col > bounds.cols || row > bounds.rows) return 0;
    return grid[static_cast<std::size_t>(bounds.cell_id(col, row) - 1)];
  }
};

/// Graph over an arbitrary subset of grid positions. Cells are numbered in
/// the order given, which must be column-major so every cell's lower, left
/// and upper-left neighbours come before it.
inline TessellationGraph build_graph(const TessellationLayout& bounds, std::vector<GridCell> cells) {
  bounds.validate();
  TessellationGraph g;
  g.bounds = bounds;
  g.cells = std::move(cells);
  g.grid.assign(static_cast<std::size_t>(bounds.n()), 0);
  for (std::size_t k = 0; k < g.cells.size(); ++k) {
    const GridCell p = g.cells[k];
    if (p.col < 1 || p.row < 1 || p.col > bounds.cols || p.row > bounds.rows)
      throw InvalidParameters("cell outside the layout bounds");
    if (k > 0) {
      const GridCell q = g.cells[k - 1];
      if (std::pair(q.col, q.row) >= std::pair(p.col, p.row))
        throw InvalidParameters("cells must be listed column-major without repeats");
    }
    g.grid[static_cast<std::size_t>(bounds.cell_id(p.col, p.row) - 1)] = static_cast<int>(k) + 1;
  }

  auto add = [&g](int a, Slot sa, int b, Slot sb, EdgeKind kind) {
    int i = global_id(a, sa), j = global_id(b, sb);
    if (i > j) std::swap(i, j);
    g.interEdges.push_back({i, j, kind});
  };

  for (int id = 1; id <= g.cell_count(); ++id) {
    const GridCell p = g.cells[static_cast<std::size_t>(id - 1)];
    for (int s = 1; s <= 6; ++s) {
      int i = global_id(id, static_cast<Slot>(s)), j = global_id(id, static_cast<Slot>(s % 6 + 1));
      if (i > j) std::swap(i, j);
      g.intraEdges.push_back({i, j, EdgeKind::Intra});
    }
    if (int up = g.cell_at(p.col, p.row + 1)) add(id, Slot::Top, up, Slot::Bottom, EdgeKind::Vertical);
    if (int right = g.cell_at(p.col + 1, p.row))
      add(id, Slot::UpperRight, right, Slot::LowerLeft, EdgeKind::Horizontal);
    if (int diag = g.cell_at(p.col + 1, p.row - 1))
      add(id, Slot::LowerRight, diag, Slot::UpperLeft, EdgeKind::Diagonal);
  }

  auto byEnds = [](const Edge& a, const Edge& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); };
  std::sort(g.intraEdges.begin(), g.intraEdges.end(), byEnds);
  std::sort(g.interEdges.begin(), g.interEdges.end(), byEnds);
  for (const Edge& e : g.interEdges) {
    g.activeNodes.push_back(e.i);
    g.activeNodes.push_back(e.j);
  }
  std::sort(g.activeNodes.begin(), g.activeNodes.end());
  return g;
}

/// Full rectangular tessellation.
inline TessellationGraph build_graph(const TessellationLayout& layout) {
  layout.validate();
  std::vector<GridCell> cells;
  cells.reserve(static_cast<std::size_t>(layout.n()));
  for (int c = 1; c <= layout.cols; ++c)
    for (int r = 1; r <= layout.rows; ++r) cells.push_back({c, r});
  return build_graph(layout, std::move(cells));
}

/// Dense symmetric 0/1 matrix over the global ids, 1-based accessors.
class AdjacencyMatrix {
 public:
  explicit AdjacencyMatrix(int order = 0)
      : order_(order), data_(static_cast<std::size_t>(order) * static_cast<std::size_t>(order), 0) {}

  int order() const noexcept { return order_; }

  std::uint8_t operator()(int i, int j) const noexcept { return data_[index(i, j)]; }

  void set(int i, int j) noexcept {
    data_[index(i, j)] = 1;
    data_[index(j, i)] = 1;
  }

  std::size_t nonzeros() const noexcept {
    return static_cast<std::size_t>(std::count(data_.begin(), data_.end(), std::uint8_t{1}));
  }

  /// Upper-triangle pairs (i < j) with A_ij = 1, lexicographic.
  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 1; i <= order_; ++i)
      for (int j = i + 1; j <= order_; ++j)
        if ((*this)(i, j)) out.emplace_back(i, j);
    return out;
  }

  friend bool operator==(const AdjacencyMatrix&, const AdjacencyMatrix&) = default;

 private:
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(order_) + static_cast<std::size_t>(j - 1);
  }

  int order_;
  std::vector<std::uint8_t> data_;
};

inline AdjacencyMatrix adjacency_matrix(const TessellationGraph& graph) {
  AdjacencyMatrix a(graph.node_count());
  for (const Edge& e : graph.interEdges) a.set(e.i, e.j);
  return a;
}

}  // namespace tmpcfg
