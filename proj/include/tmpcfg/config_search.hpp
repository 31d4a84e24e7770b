#pragma once

// Block-library driven search over all valid configurations.
//
// Cells are assigned in id order (columns left to right, each bottom to top).
// When cell (c, r) is reached its left, upper-left and lower neighbours are
// already fixed, and its candidates are the intersection of
//   TwoCellsLeft third states for (left, upper-left)   when both exist
//   TwoCellsRight third states for (left, below)       when both exist
//   horizontal projection of left blocks               when only left exists
//   vertical projection of left blocks                 in the first column
// Candidates are tried in state-index order, so results stream out in
// canonical order without sorting.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "tmpcfg/block_library.hpp"
#include "tmpcfg/cell_kinematics.hpp"
#include "tmpcfg/error.hpp"
#include "tmpcfg/geometric_oracle.hpp"
#include "tmpcfg/parallel.hpp"
#include "tmpcfg/tessellation_graph.hpp"

namespace tmpcfg {

struct SearchOptions {
  CreaseParameters params{};
  int threads = 1;
};

struct CountResult {
  TessellationLayout layout;
  StateSet allowedStates;
  std::uint64_t count = 0;
  std::chrono::duration<double, std::milli> elapsed{};
};

struct Composition {
  int nTMP = 0;
  int nOTPlus = 0;
  int nOTMinus = 0;
  int nDefect = 0;

  friend bool operator==(const Composition&, const Composition&) = default;
  int total() const noexcept { return nTMP + nOTPlus + nOTMinus + nDefect; }
};

inline Composition composition(const std::vector<CellState>& states) {
  Composition c;
  for (CellState s : states) {
    switch (s) {
      case CellState::TMP: ++c.nTMP; break;
      case CellState::OTPlus: ++c.nOTPlus; break;
      case CellState::OTMinus: ++c.nOTMinus; break;
      case CellState::Defect: ++c.nDefect; break;
    }
  }
  return c;
}

inline Composition composition(const Configuration& config) { return composition(config.states); }

/// Per-cell neighbour ids and candidate masks for one layout.
class SearchPlan {
 public:
  SearchPlan(const TessellationLayout& layout, const BlockLibrary& lib, std::vector<StateSet> cellMasks)
      : layout_(layout), lib_(lib), masks_(std::move(cellMasks)) {
    const int n = layout.n();
    left_.resize(static_cast<std::size_t>(n));
    upperLeft_.resize(static_cast<std::size_t>(n));
    below_.resize(static_cast<std::size_t>(n));
    for (int id = 1; id <= n; ++id) {
      const GridCell p = grid_position(layout, id);
      const auto k = static_cast<std::size_t>(id - 1);
      left_[k] = p.col > 1 ? layout.cell_id(p.col - 1, p.row) - 1 : -1;
      upperLeft_[k] = p.col > 1 && p.row < layout.rows ? layout.cell_id(p.col - 1, p.row + 1) - 1 : -1;
      below_[k] = p.row > 1 ? id - 2 : -1;
    }
  }

  const TessellationLayout& layout() const noexcept { return layout_; }
  int size() const noexcept { return layout_.n(); }

  /// Candidates for cell index k (0-based) given states of cells 0..k-1.
  StateSet candidates(std::size_t k, const std::vector<CellState>& s) const noexcept {
    StateSet m = masks_[k];
    const int left = left_[k], upperLeft = upperLeft_[k], below = below_[k];
    if (left >= 0) {
      const CellState l = s[static_cast<std::size_t>(left)];
      if (upperLeft >= 0) m = m & lib_.third_states(BlockShape::TwoCellsLeft, l, s[static_cast<std::size_t>(upperLeft)]);
      if (below >= 0) m = m & lib_.third_states(BlockShape::TwoCellsRight, l, s[static_cast<std::size_t>(below)]);
      if (upperLeft < 0 && below < 0) m = m & lib_.horizontal_states(l);
    } else if (below >= 0) {
      m = m & lib_.vertical_states(s[static_cast<std::size_t>(below)]);
    }
    return m;
  }

 private:
  TessellationLayout layout_;
  const BlockLibrary& lib_;
  std::vector<StateSet> masks_;
  std::vector<int> left_, upperLeft_, below_;
};

namespace detail {

// Depth-first from cell `from`, cells before it already set in `s`.
template <class Visit>
void search_from(const SearchPlan& plan, std::vector<CellState>& s, std::size_t from, Visit& visit) {
  if (from == s.size()) {
    visit(static_cast<const std::vector<CellState>&>(s));
    return;
  }
  const StateSet m = plan.candidates(from, s);
  for (CellState c : kAllStates) {
    if (!m.contains(c)) continue;
    s[from] = c;
    search_from(plan, s, from + 1, visit);
  }
}

inline std::uint64_t count_from(const SearchPlan& plan, std::vector<CellState>& s, std::size_t from) {
  const StateSet m = plan.candidates(from, s);
  if (from + 1 == s.size()) return static_cast<std::uint64_t>(m.size());
  std::uint64_t total = 0;
  for (CellState c : kAllStates) {
    if (!m.contains(c)) continue;
    s[from] = c;
    total += count_from(plan, s, from + 1);
  }
  return total;
}

// Valid assignments of the first `depth` cells, in canonical order.
inline std::vector<std::vector<CellState>> seed_prefixes(const SearchPlan& plan, std::size_t depth) {
  std::vector<std::vector<CellState>> out;
  std::vector<CellState> s(static_cast<std::size_t>(plan.size()), CellState::TMP);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == depth) {
      out.emplace_back(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(depth));
      return;
    }
    const StateSet m = plan.candidates(k, s);
    for (CellState c : kAllStates) {
      if (!m.contains(c)) continue;
      s[k] = c;
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

inline constexpr std::size_t kSeedDepth = 3;

inline void check_request(const TessellationLayout& layout, StateSet allowed, const BlockLibrary& lib,
                          const SearchOptions& options) {
  layout.validate();
  options.params.validate();
  if (allowed.size() < 3) throw InvalidParameters("search needs three or four allowed states");
  if (!(lib.params() == options.params))
    throw LibraryMismatch("block library was derived for different crease parameters");
}

inline std::vector<StateSet> uniform_masks(const TessellationLayout& layout, StateSet allowed) {
  return std::vector<StateSet>(static_cast<std::size_t>(layout.n()), allowed);
}

}  // namespace detail

/// Partitions the search tree at the seed cells across workers and folds the
/// per-seed accumulators in seed order. `visit(acc, states)` sees every valid
/// configuration; `fold(acc)` consumes each finished accumulator.
template <class Acc, class Visit, class Fold>
void reduce_plan(const SearchPlan& plan, int threads, Visit&& visit, Fold&& fold) {
  const std::size_t n = static_cast<std::size_t>(plan.size());
  const auto seeds = detail::seed_prefixes(plan, std::min(n, detail::kSeedDepth));
  ordered_parallel(
      seeds.size(), threads,
      [&](std::size_t i) {
        Acc acc{};
        std::vector<CellState> s(n, CellState::TMP);
        std::copy(seeds[i].begin(), seeds[i].end(), s.begin());
        auto v = [&](const std::vector<CellState>& states) { visit(acc, states); };
        detail::search_from(plan, s, seeds[i].size(), v);
        return acc;
      },
      [&](std::size_t, Acc&& acc) { fold(std::move(acc)); });
}

/// Streams every valid configuration in canonical order to `emit`, called on
/// the calling thread regardless of the worker count.
template <class Emit>
void for_each_valid(const TessellationLayout& layout, StateSet allowed, const BlockLibrary& lib,
                    const SearchOptions& options, Emit&& emit) {
  detail::check_request(layout, allowed, lib, options);
  const SearchPlan plan(layout, lib, detail::uniform_masks(layout, allowed));
  using Batch = std::vector<std::vector<CellState>>;
  reduce_plan<Batch>(
      plan, options.threads, [](Batch& b, const std::vector<CellState>& s) { b.push_back(s); },
      [&](Batch&& b) {
        for (auto& s : b) emit(Configuration{layout, std::move(s)});
      });
}

inline std::vector<Configuration> enumerate_valid(const TessellationLayout& layout, StateSet allowed,
                                                  const BlockLibrary& lib, const SearchOptions& options = {}) {
  std::vector<Configuration> out;
  for_each_valid(layout, allowed, lib, options, [&](Configuration&& c) { out.push_back(std::move(c)); });
  return out;
}

inline CountResult count_valid(const TessellationLayout& layout, StateSet allowed, const BlockLibrary& lib,
                               const SearchOptions& options = {}) {
  detail::check_request(layout, allowed, lib, options);
  const auto start = std::chrono::steady_clock::now();
  const SearchPlan plan(layout, lib, detail::uniform_masks(layout, allowed));
  const std::size_t n = static_cast<std::size_t>(layout.n());
  const auto seeds = detail::seed_prefixes(plan, std::min(n, detail::kSeedDepth));

  CountResult result{layout, allowed, 0, {}};
  if (seeds.empty() || seeds.front().size() == n) {
    result.count = seeds.size();
  } else {
    ordered_parallel(
        seeds.size(), options.threads,
        [&](std::size_t i) {
          std::vector<CellState> s(n, CellState::TMP);
          std::copy(seeds[i].begin(), seeds[i].end(), s.begin());
          return detail::count_from(plan, s, seeds[i].size());
        },
        [&](std::size_t, std::uint64_t c) { result.count += c; });
  }
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

enum class Direction { AddColumn, AddRow };

/// All valid configurations of the layout grown by one column (on the right)
/// or one row (on top) that agree with `config` on the original cells.
inline std::vector<Configuration> extend(const Configuration& config, Direction direction, const BlockLibrary& lib) {
  config.validate();
  const TessellationLayout& from = config.layout;
  const TessellationLayout to = direction == Direction::AddColumn ? TessellationLayout{from.cols + 1, from.rows}
                                                                  : TessellationLayout{from.cols, from.rows + 1};
  std::vector<StateSet> masks(static_cast<std::size_t>(to.n()), StateSet::all());
  for (int c = 1; c <= from.cols; ++c)
    for (int r = 1; r <= from.rows; ++r)
      masks[static_cast<std::size_t>(to.cell_id(c, r) - 1)] = StateSet::of({config.at(c, r)});

  const SearchPlan plan(to, lib, std::move(masks));
  std::vector<Configuration> out;
  std::vector<CellState> s(static_cast<std::size_t>(to.n()), CellState::TMP);
  auto visit = [&](const std::vector<CellState>& states) { out.push_back({to, states}); };
  detail::search_from(plan, s, 0, visit);
  return out;
}

}  // namespace tmpcfg
