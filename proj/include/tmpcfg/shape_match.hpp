#pragma once

// Cross sections, landmark sampling and orthogonal Procrustes scoring.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "tmpcfg/block_library.hpp"
#include "tmpcfg/cell_kinematics.hpp"
#include "tmpcfg/config_search.hpp"
#include "tmpcfg/error.hpp"
#include "tmpcfg/geometric_oracle.hpp"
#include "tmpcfg/tessellation_graph.hpp"

namespace tmpcfg {

struct LandmarkSet {
  std::vector<Vec2> points;

  std::size_t size() const noexcept { return points.size(); }
};

struct CrossSection {
  TessellationLayout layout;
  std::vector<bool> occupancy;              // by cell id - 1; true when not Defect
  std::vector<std::vector<Vec2>> outline;   // closed loops, counter-clockwise for outer boundaries

  bool occupied(int col, int row) const { return occupancy[static_cast<std::size_t>(layout.cell_id(col, row) - 1)]; }
};

namespace detail {

using PointKey = std::pair<std::int64_t, std::int64_t>;

inline PointKey key_of(Vec2 p, double scale) {
  const double q = 1e-9 * scale;
  return {std::llround(p.x / q), std::llround(p.y / q)};
}

// Boundary of the union of non-flat cell polygons: directed hexagon edges
// whose reverse also occurs are interior and cancel; the rest are chained.
inline std::vector<std::vector<Vec2>> union_outline(const PlacedTessellation& placed,
                                                    const std::vector<CellState>& states, double scale) {
  std::map<std::pair<PointKey, PointKey>, int> edges;
  std::map<PointKey, Vec2> where;
  for (std::size_t c = 0; c < states.size(); ++c) {
    if (states[c] == CellState::Defect) continue;
    const auto& h = placed.corners[c];
    for (std::size_t k = 0; k < 6; ++k) {
      const PointKey a = key_of(h[k], scale), b = key_of(h[(k + 1) % 6], scale);
      if (a == b) continue;
      where[a] = h[k];
      where[b] = h[(k + 1) % 6];
      auto rev = edges.find({b, a});
      if (rev != edges.end()) {
        if (--rev->second == 0) edges.erase(rev);
      } else {
        ++edges[{a, b}];
      }
    }
  }

  std::multimap<PointKey, PointKey> next;
  for (const auto& [e, mult] : edges)
    for (int i = 0; i < mult; ++i) next.emplace(e.first, e.second);

  std::vector<std::vector<Vec2>> loops;
  while (!next.empty()) {
    auto it = next.begin();
    const PointKey start = it->first;
    PointKey cur = start;
    std::vector<PointKey> loop;
    while (true) {
      auto step = next.find(cur);
      if (step == next.end()) break;
      loop.push_back(cur);
      cur = step->second;
      next.erase(step);
      if (cur == start) break;
    }
    // drop spikes: a -> b -> a
    bool changed = true;
    while (changed && loop.size() >= 3) {
      changed = false;
      for (std::size_t i = 0; i < loop.size() && loop.size() >= 3; ++i) {
        const std::size_t m = loop.size();
        if (loop[(i + m - 1) % m] == loop[(i + 1) % m]) {
          const std::size_t hi = std::max(i, (i + 1) % m), lo = std::min(i, (i + 1) % m);
          loop.erase(loop.begin() + static_cast<std::ptrdiff_t>(hi));
          loop.erase(loop.begin() + static_cast<std::ptrdiff_t>(lo));
          changed = true;
          break;
        }
      }
    }
    if (loop.size() < 3) continue;
    std::vector<Vec2> pts;
    pts.reserve(loop.size());
    for (const PointKey& k : loop) pts.push_back(where[k]);
    loops.push_back(std::move(pts));
  }
  return loops;
}

inline Vec2 cell_center(const PlacedTessellation& placed, std::size_t cell) {
  Vec2 c{};
  for (std::size_t k = 0; k < 6; ++k) c = c + placed.positions[6 * cell + k];
  return (1.0 / 6.0) * c;
}

}  // namespace detail

inline CrossSection cross_section(const Configuration& config, const CreaseParameters& params) {
  config.validate();
  CrossSection cs;
  cs.layout = config.layout;
  for (CellState s : config.states) cs.occupancy.push_back(s != CellState::Defect);
  const PlacedTessellation placed = place_cells(config, params);
  cs.outline = detail::union_outline(placed, config.states, params.scale());
  return cs;
}

/// Whether a non-flat cell lies on the perimeter: some lattice neighbour
/// (left, right, up, down, upper-left, lower-right) is missing or flat.
inline bool is_perimetral(const Configuration& config, int col, int row) {
  if (config.at(col, row) == CellState::Defect) return false;
  static constexpr std::array<std::pair<int, int>, 6> kNeighbours = {
      {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {-1, 1}, {1, -1}}};
  for (auto [dc, dr] : kNeighbours) {
    const int c = col + dc, r = row + dr;
    if (c < 1 || r < 1 || c > config.layout.cols || r > config.layout.rows) return true;
    if (config.at(c, r) == CellState::Defect) return true;
  }
  return false;
}

/// Sorts points counter-clockwise about their centroid, starting from the
/// lowest (then leftmost) point.
inline void order_counter_clockwise(std::vector<Vec2>& pts) {
  if (pts.size() < 2) return;
  Vec2 centroid{};
  for (Vec2 p : pts) centroid = centroid + p;
  centroid = (1.0 / static_cast<double>(pts.size())) * centroid;

  const Vec2 start = *std::min_element(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  });
  const double a0 = std::atan2(start.y - centroid.y, start.x - centroid.x);
  auto rel = [&](Vec2 p) {
    double a = std::atan2(p.y - centroid.y, p.x - centroid.x) - a0;
    while (a < 0.0) a += 2.0 * std::numbers::pi;
    while (a >= 2.0 * std::numbers::pi) a -= 2.0 * std::numbers::pi;
    return a;
  };
  std::stable_sort(pts.begin(), pts.end(), [&](Vec2 a, Vec2 b) {
    if (a == start || b == start) return a == start && !(b == start);
    const double ra = rel(a), rb = rel(b);
    if (std::abs(ra - rb) > 1e-12) return ra < rb;
    return squared_norm(a - centroid) < squared_norm(b - centroid);
  });
}

/// Centers (mean of the six face midpoints) of the perimetral non-flat cells,
/// counter-clockwise from the lowest-leftmost. Throws DegenerateShape when
/// every cell is flat.
inline LandmarkSet sample_landmarks(const Configuration& config, const CreaseParameters& params) {
  config.validate();
  const PlacedTessellation placed = place_cells(config, params);
  LandmarkSet out;
  bool any = false;
  for (int id = 1; id <= config.layout.n(); ++id) {
    const GridCell p = grid_position(config.layout, id);
    if (config.states[static_cast<std::size_t>(id - 1)] != CellState::Defect) any = true;
    if (is_perimetral(config, p.col, p.row)) out.points.push_back(detail::cell_center(placed, static_cast<std::size_t>(id - 1)));
  }
  if (!any) throw DegenerateShape("configuration has no non-flat cell");
  order_counter_clockwise(out.points);
  return out;
}

struct ProcrustesResult {
  Eigen::Matrix2d rotation = Eigen::Matrix2d::Identity();
  double disparity = 0.0;  // ||R A - B||_F^2 in normalized units
  LandmarkSet alignedA;    // R A, normalized frame
  Eigen::Vector2d singularValues = Eigen::Vector2d::Zero();
  Eigen::Matrix2d U = Eigen::Matrix2d::Identity();
  Eigen::Matrix2d V = Eigen::Matrix2d::Identity();
};

/// Centered, unit Frobenius norm 2 x n matrix. Throws DegenerateShape.
inline Eigen::Matrix2Xd normalize_landmarks(const LandmarkSet& s) {
  Eigen::Matrix2Xd m(2, static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) m.col(static_cast<Eigen::Index>(i)) << s.points[i].x, s.points[i].y;
  m.colwise() -= m.rowwise().mean();
  const double norm = m.norm();
  if (!(norm > 1e-12)) throw DegenerateShape("landmark set collapses to a single point");
  return m / norm;
}

/// Orthogonal Procrustes: center, scale to unit Frobenius norm, then
/// R = V U^T from the SVD U S V^T of A B^T. Reflections are allowed unless
/// `forceProperRotation` is set.
inline ProcrustesResult procrustes(const LandmarkSet& a, const LandmarkSet& b, bool forceProperRotation = false) {
  if (a.size() != b.size())
    throw DimensionMismatch("landmark sets differ in size: " + std::to_string(a.size()) + " vs " +
                            std::to_string(b.size()));
  if (a.size() < 2) throw DimensionMismatch("need at least two landmarks");
  const Eigen::Matrix2Xd A = normalize_landmarks(a);
  const Eigen::Matrix2Xd B = normalize_landmarks(b);

  const Eigen::JacobiSVD<Eigen::Matrix2d> svd(A * B.transpose(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  ProcrustesResult r;
  r.U = svd.matrixU();
  r.V = svd.matrixV();
  r.singularValues = svd.singularValues();
  if (forceProperRotation && (r.V * r.U.transpose()).determinant() < 0.0) r.V.col(1) *= -1.0;
  r.rotation = r.V * r.U.transpose();

  const Eigen::Matrix2Xd aligned = r.rotation * A;
  r.disparity = (aligned - B).squaredNorm();
  r.alignedA.points.reserve(a.size());
  for (Eigen::Index i = 0; i < aligned.cols(); ++i) r.alignedA.points.push_back({aligned(0, i), aligned(1, i)});
  return r;
}

struct MatchRecord {
  Configuration config;
  double disparity = 0.0;
};

/// Scores every valid configuration whose landmark count equals the target's
/// and returns them by ascending disparity, ties in canonical order.
inline std::vector<MatchRecord> rank_matches(const TessellationLayout& layout, StateSet allowed,
                                             const LandmarkSet& target, const BlockLibrary& lib,
                                             const SearchOptions& options = {}, bool forceProperRotation = false) {
  detail::check_request(layout, allowed, lib, options);
  if (target.size() < 2) throw DimensionMismatch("target needs at least two landmarks");
  normalize_landmarks(target);

  const SearchPlan plan(layout, lib, detail::uniform_masks(layout, allowed));
  using Batch = std::vector<MatchRecord>;
  std::vector<MatchRecord> out;
  reduce_plan<Batch>(
      plan, options.threads,
      [&](Batch& batch, const std::vector<CellState>& s) {
        if (std::all_of(s.begin(), s.end(), [](CellState c) { return c == CellState::Defect; })) return;
        Configuration c{layout, s};
        const LandmarkSet lm = sample_landmarks(c, options.params);
        if (lm.size() != target.size()) return;
        batch.push_back({std::move(c), procrustes(lm, target, forceProperRotation).disparity});
      },
      [&](Batch&& batch) {
        for (auto& m : batch) out.push_back(std::move(m));
      });
  std::stable_sort(out.begin(), out.end(),
                   [](const MatchRecord& x, const MatchRecord& y) { return x.disparity < y.disparity; });
  return out;
}

}  // namespace tmpcfg
