#pragma once

// Brute-force validity: place every cell, measure squared distances between
// face midpoints, and require coincidence wherever the adjacency matrix says
// two faces are attached.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <string>
#include <vector>

#include "tmpcfg/cell_kinematics.hpp"
#include "tmpcfg/error.hpp"
#include "tmpcfg/tessellation_graph.hpp"

namespace tmpcfg {

struct Configuration {
  TessellationLayout layout;
  std::vector<CellState> states;  // cell id k at states[k-1]

  friend bool operator==(const Configuration&, const Configuration&) = default;

  CellState at(int col, int row) const { return states[static_cast<std::size_t>(layout.cell_id(col, row) - 1)]; }

  void validate() const {
    layout.validate();
    if (states.size() != static_cast<std::size_t>(layout.n()))
      throw InvalidConfiguration("configuration has " + std::to_string(states.size()) + " states for " +
                                 std::to_string(layout.n()) + " cells");
  }
};

/// Lexicographic over index_of(state), cell 1 most significant.
inline bool canonical_less(const Configuration& a, const Configuration& b) {
  return std::lexicographical_compare(a.states.begin(), a.states.end(), b.states.begin(), b.states.end(),
                                      [](CellState x, CellState y) { return index_of(x) < index_of(y); });
}

struct PlacedTessellation {
  std::vector<Vec2> positions;              // global id i at positions[i-1]
  std::vector<std::array<Vec2, 6>> corners; // per cell, global frame
};

class DistanceMatrix {
 public:
  explicit DistanceMatrix(int order = 0)
      : order_(order), d_(static_cast<std::size_t>(order) * static_cast<std::size_t>(order), 0.0) {}

  int order() const noexcept { return order_; }
  double operator()(int i, int j) const noexcept { return d_[index(i, j)]; }
  double& operator()(int i, int j) noexcept { return d_[index(i, j)]; }

 private:
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i - 1) * static_cast<std::size_t>(order_) + static_cast<std::size_t>(j - 1);
  }

  int order_;
  std::vector<double> d_;
};

/// Coincidence tolerance on squared distances.
inline double coincidence_tolerance(const CreaseParameters& params) {
  const double s = params.scale();
  return 1e-9 * s * s;
}

namespace detail {

inline Vec2 corner_at(const std::array<Vec2, 6>& c, Corner k) { return c[static_cast<std::size_t>(corner_index(k))]; }

// Global origin (bottom-left corner) of cell `id`, all earlier cells placed.
inline Vec2 cell_origin(const TessellationGraph& g, const std::vector<std::array<Vec2, 6>>& placed,
                        const std::array<CellGeometry, 4>& geo, const std::vector<CellState>& states, int id) {
  const GridCell p = g.cells[static_cast<std::size_t>(id - 1)];
  if (int below = g.cell_at(p.col, p.row - 1))
    return corner_at(placed[static_cast<std::size_t>(below - 1)], Corner::TopLeft);
  if (int left = g.cell_at(p.col - 1, p.row))
    return corner_at(placed[static_cast<std::size_t>(left - 1)], Corner::RightJoint);
  if (int upperLeft = g.cell_at(p.col - 1, p.row + 1)) {
    const CellGeometry& own = geo[static_cast<std::size_t>(index_of(states[static_cast<std::size_t>(id - 1)]))];
    return corner_at(placed[static_cast<std::size_t>(upperLeft - 1)], Corner::BottomRight) -
           own.corner(Corner::LeftJoint);
  }
  return {0.0, 0.0};
}

}  // namespace detail

/// Places each cell's canonical geometry in the global frame. Cell 1 sits at
/// the origin; a cell with a lower neighbour rests on its top face, otherwise
/// it hangs off the right joint of its left neighbour, otherwise its left
/// joint meets the bottom-right corner of its upper-left neighbour.
inline PlacedTessellation place_cells(const TessellationGraph& graph, const std::vector<CellState>& states,
                                      const CreaseParameters& params) {
  if (states.size() != graph.cells.size()) throw InvalidConfiguration("state count does not match cell count");
  const auto geo = canonical_geometries(params);
  const int n = graph.cell_count();

  PlacedTessellation out;
  out.positions.resize(static_cast<std::size_t>(6 * n));
  out.corners.resize(static_cast<std::size_t>(n));
  for (int id = 1; id <= n; ++id) {
    const CellGeometry& g = geo[static_cast<std::size_t>(index_of(states[static_cast<std::size_t>(id - 1)]))];
    const Vec2 origin = detail::cell_origin(graph, out.corners, geo, states, id);
    for (std::size_t k = 0; k < 6; ++k) {
      out.corners[static_cast<std::size_t>(id - 1)][k] = origin + g.corners[k];
      out.positions[static_cast<std::size_t>(6 * (id - 1)) + k] = origin + g.anchors[k];
    }
  }
  return out;
}

inline PlacedTessellation place_cells(const Configuration& config, const CreaseParameters& params) {
  config.validate();
  return place_cells(build_graph(config.layout), config.states, params);
}

inline DistanceMatrix distance_matrix(const PlacedTessellation& placed) {
  const int order = static_cast<int>(placed.positions.size());
  DistanceMatrix d(order);
  for (int i = 1; i <= order; ++i)
    for (int j = i + 1; j <= order; ++j) {
      const double v = squared_norm(placed.positions[static_cast<std::size_t>(i - 1)] -
                                    placed.positions[static_cast<std::size_t>(j - 1)]);
      d(i, j) = v;
      d(j, i) = v;
    }
  return d;
}

/// D_ij <= eps for every pair with A_ij = 1.
inline bool satisfies(const AdjacencyMatrix& a, const DistanceMatrix& d, double eps) {
  for (int i = 1; i <= a.order(); ++i)
    for (int j = i + 1; j <= a.order(); ++j)
      if (a(i, j) && d(i, j) > eps) return false;
  return true;
}

/// Same test evaluated only over the stored edge list of A.
inline bool is_valid(const TessellationGraph& graph, const std::vector<CellState>& states,
                     const CreaseParameters& params) {
  const PlacedTessellation placed = place_cells(graph, states, params);
  const double eps = coincidence_tolerance(params);
  for (const Edge& e : graph.interEdges) {
    const Vec2 diff = placed.positions[static_cast<std::size_t>(e.i - 1)] - placed.positions[static_cast<std::size_t>(e.j - 1)];
    if (squared_norm(diff) > eps) return false;
  }
  return true;
}

inline bool is_valid(const Configuration& config, const CreaseParameters& params) {
  config.validate();
  return is_valid(build_graph(config.layout), config.states, params);
}

inline constexpr std::uint64_t kDefaultBruteForceCap = std::uint64_t{1} << 24;  // 4^12

/// Cap from TMPCFG_BRUTE_FORCE_CAP when set to a positive integer, else 4^12.
inline std::uint64_t brute_force_cap_from_env() {
  if (const char* v = std::getenv("TMPCFG_BRUTE_FORCE_CAP")) {
    char* end = nullptr;
    const unsigned long long cap = std::strtoull(v, &end, 10);
    if (end != v && *end == '\0' && cap > 0) return cap;
  }
  return kDefaultBruteForceCap;
}

struct OracleOptions {
  std::uint64_t cap = kDefaultBruteForceCap;
  bool allowLarge = false;  // lift the cap and prune on the first failed pair
};

namespace detail {

inline std::vector<CellState> sorted_states(StateSet allowed) {
  std::vector<CellState> out;
  for (CellState s : kAllStates)
    if (allowed.contains(s)) out.push_back(s);
  return out;
}

// allowed^n, or max when it overflows.
inline std::uint64_t candidate_count(int k, int n) {
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(k))
      return std::numeric_limits<std::uint64_t>::max();
    total *= static_cast<std::uint64_t>(k);
  }
  return total;
}

// Depth-first over cells with placement and checks done incrementally; each
// edge is tested once both of its cells are placed.
class PrunedOracle {
 public:
  PrunedOracle(const TessellationGraph& g, const std::vector<CellState>& alphabet, const CreaseParameters& params)
      : g_(g), alphabet_(alphabet), geo_(canonical_geometries(params)), eps_(coincidence_tolerance(params)) {
    const int n = g.cell_count();
    states_.resize(static_cast<std::size_t>(n));
    corners_.resize(static_cast<std::size_t>(n));
    anchors_.resize(static_cast<std::size_t>(n));
    edgesAt_.resize(static_cast<std::size_t>(n));
    for (const Edge& e : g.interEdges) edgesAt_[static_cast<std::size_t>((e.j - 1) / 6)].push_back(e);
  }

  template <class Emit>
  void run(Emit&& emit) { descend(1, emit); }

 private:
  template <class Emit>
  void descend(int id, Emit& emit) {
    if (id > g_.cell_count()) {
      emit(states_);
      return;
    }
    const auto k = static_cast<std::size_t>(id - 1);
    for (CellState s : alphabet_) {
      states_[k] = s;
      const CellGeometry& cg = geo_[static_cast<std::size_t>(index_of(s))];
      const Vec2 origin = cell_origin(g_, corners_, geo_, states_, id);
      for (std::size_t c = 0; c < 6; ++c) {
        corners_[k][c] = origin + cg.corners[c];
        anchors_[k][c] = origin + cg.anchors[c];
      }
      if (edges_hold(k)) descend(id + 1, emit);
    }
  }

  bool edges_hold(std::size_t k) const {
    for (const Edge& e : edgesAt_[k]) {
      const Vec2 a = anchors_[static_cast<std::size_t>((e.i - 1) / 6)][static_cast<std::size_t>((e.i - 1) % 6)];
      const Vec2 b = anchors_[static_cast<std::size_t>((e.j - 1) / 6)][static_cast<std::size_t>((e.j - 1) % 6)];
      if (squared_norm(a - b) > eps_) return false;
    }
    return true;
  }

  const TessellationGraph& g_;
  const std::vector<CellState>& alphabet_;
  std::array<CellGeometry, 4> geo_;
  double eps_;
  std::vector<CellState> states_;
  std::vector<std::array<Vec2, 6>> corners_;
  std::vector<std::array<Vec2, 6>> anchors_;
  std::vector<std::vector<Edge>> edgesAt_;
};

}  // namespace detail

/// Every assignment in allowed^n that passes is_valid, in canonical order.
/// Throws BudgetExceeded when allowed^n exceeds the cap and allowLarge is off.
inline std::vector<Configuration> brute_force_enumerate(const TessellationLayout& layout, StateSet allowed,
                                                        const CreaseParameters& params,
                                                        const OracleOptions& options = {}) {
  layout.validate();
  params.validate();
  if (allowed.size() < 3) throw InvalidParameters("brute force needs three or four allowed states");
  const auto alphabet = detail::sorted_states(allowed);
  const int n = layout.n();
  const TessellationGraph graph = build_graph(layout);
  std::vector<Configuration> out;

  if (options.allowLarge) {
    detail::PrunedOracle oracle(graph, alphabet, params);
    oracle.run([&](const std::vector<CellState>& s) { out.push_back({layout, s}); });
    return out;
  }

  const std::uint64_t total = detail::candidate_count(static_cast<int>(alphabet.size()), n);
  if (total > options.cap)
    throw BudgetExceeded(std::to_string(alphabet.size()) + "^" + std::to_string(n) +
                         " candidates exceed the brute-force cap of " + std::to_string(options.cap));

  // Odometer with the last cell fastest, which is canonical order.
  std::vector<std::size_t> digit(static_cast<std::size_t>(n), 0);
  std::vector<CellState> states(static_cast<std::size_t>(n), alphabet.front());
  for (std::uint64_t c = 0; c < total; ++c) {
    if (is_valid(graph, states, params)) out.push_back({layout, states});
    for (int k = n - 1; k >= 0; --k) {
      const auto uk = static_cast<std::size_t>(k);
      if (++digit[uk] < alphabet.size()) {
        states[uk] = alphabet[digit[uk]];
        break;
      }
      digit[uk] = 0;
      states[uk] = alphabet.front();
    }
  }
  return out;
}

}  // namespace tmpcfg
