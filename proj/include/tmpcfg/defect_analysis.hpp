#pragma once

// Distribution of valid configurations over their number of Defect cells.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "tmpcfg/block_library.hpp"
#include "tmpcfg/config_search.hpp"
#include "tmpcfg/error.hpp"
#include "tmpcfg/tessellation_graph.hpp"

namespace tmpcfg {

struct DefectHistogram {
  TessellationLayout layout;
  int nCell = 0;
  std::vector<std::uint64_t> counts;  // index = number of defects, 0..nCell
  std::uint64_t nMax = 0;

  std::uint64_t total() const {
    std::uint64_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }
};

/// grid(col, row) = configurations with exactly k defects that have a Defect
/// at (col, row). Coordinates are 1-based from the bottom-left.
struct OccurrenceMap {
  TessellationLayout layout;
  int k = 0;
  std::vector<std::uint64_t> cells;  // by cell id - 1

  std::uint64_t operator()(int col, int row) const {
    return cells[static_cast<std::size_t>(layout.cell_id(col, row) - 1)];
  }

  std::uint64_t sum() const {
    std::uint64_t t = 0;
    for (auto c : cells) t += c;
    return t;
  }
};

/// Histogram plus occurrence maps for every k, gathered in one pass.
struct DefectStatistics {
  DefectHistogram histogram;
  std::vector<OccurrenceMap> occurrence;  // index k
};

namespace detail {

struct DefectAccumulator {
  std::vector<std::uint64_t> counts;
  std::vector<std::uint64_t> occurrence;  // [k * n + cell]
};

}  // namespace detail

inline DefectStatistics defect_statistics(const TessellationLayout& layout, const BlockLibrary& lib,
                                          const SearchOptions& options = {}) {
  detail::check_request(layout, StateSet::all(), lib, options);
  const auto n = static_cast<std::size_t>(layout.n());
  const SearchPlan plan(layout, lib, detail::uniform_masks(layout, StateSet::all()));

  detail::DefectAccumulator total{std::vector<std::uint64_t>(n + 1, 0), std::vector<std::uint64_t>((n + 1) * n, 0)};
  reduce_plan<detail::DefectAccumulator>(
      plan, options.threads,
      [n](detail::DefectAccumulator& acc, const std::vector<CellState>& s) {
        if (acc.counts.empty()) {
          acc.counts.assign(n + 1, 0);
          acc.occurrence.assign((n + 1) * n, 0);
        }
        std::size_t k = 0;
        for (CellState c : s) k += c == CellState::Defect;
        ++acc.counts[k];
        std::uint64_t* row = acc.occurrence.data() + k * n;
        for (std::size_t i = 0; i < n; ++i) row[i] += s[i] == CellState::Defect;
      },
      [&](detail::DefectAccumulator&& acc) {
        for (std::size_t i = 0; i < acc.counts.size(); ++i) total.counts[i] += acc.counts[i];
        for (std::size_t i = 0; i < acc.occurrence.size(); ++i) total.occurrence[i] += acc.occurrence[i];
      });

  DefectStatistics out;
  out.histogram.layout = layout;
  out.histogram.nCell = static_cast<int>(n);
  out.histogram.counts = total.counts;
  out.histogram.nMax = *std::max_element(total.counts.begin(), total.counts.end());
  for (std::size_t k = 0; k <= n; ++k) {
    OccurrenceMap m{layout, static_cast<int>(k), {}};
    m.cells.assign(total.occurrence.begin() + static_cast<std::ptrdiff_t>(k * n),
                   total.occurrence.begin() + static_cast<std::ptrdiff_t>((k + 1) * n));
    out.occurrence.push_back(std::move(m));
  }
  return out;
}

inline DefectHistogram defect_histogram(const TessellationLayout& layout, const BlockLibrary& lib,
                                        const SearchOptions& options = {}) {
  return defect_statistics(layout, lib, options).histogram;
}

inline OccurrenceMap occurrence_map(const TessellationLayout& layout, int k, const BlockLibrary& lib,
                                    const SearchOptions& options = {}) {
  if (k < 0 || k > layout.n()) throw InvalidParameters("defect count must lie in 0..n");
  return defect_statistics(layout, lib, options).occurrence[static_cast<std::size_t>(k)];
}

struct CurvePoint {
  double x = 0.0;  // N_defect / N_cell
  double y = 0.0;  // N_con / N_max
};

inline std::vector<CurvePoint> normalized_curve(const DefectHistogram& h) {
  if (h.nMax == 0 || h.nCell == 0) throw InvalidParameters("histogram is empty");
  std::vector<CurvePoint> out;
  for (std::size_t k = 0; k < h.counts.size(); ++k)
    out.push_back({static_cast<double>(k) / h.nCell, static_cast<double>(h.counts[k]) / static_cast<double>(h.nMax)});
  return out;
}

/// x of the curve maximum; the smallest such x on ties.
inline double peak_x(const std::vector<CurvePoint>& curve) {
  if (curve.empty()) throw InvalidParameters("curve is empty");
  const CurvePoint* best = &curve.front();
  for (const CurvePoint& p : curve)
    if (p.y > best->y) best = &p;
  return best->x;
}

}  // namespace tmpcfg
