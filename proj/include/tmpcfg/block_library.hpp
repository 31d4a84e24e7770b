#pragma once

// Valid phase triples on the two L-shaped 3-cell arrangements.
//
// TwoCellsLeft:  cells (A, B, C) at (1,1), (1,2), (2,1); a vertical pair with
//                a third cell to the right of its lower cell.
// TwoCellsRight: cells (P, Q, S) at (1,2), (2,1), (2,2); a vertical pair with
//                a third cell to the left of its upper cell.
//
// During search a new cell (c, r) is the third cell of a TwoCellsLeft block
// whose known pair is its left and upper-left neighbours, and of a
// TwoCellsRight block whose known pair is its left and lower neighbours.

#include <array>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "tmpcfg/cell_kinematics.hpp"
#include "tmpcfg/error.hpp"
#include "tmpcfg/geometric_oracle.hpp"
#include "tmpcfg/tessellation_graph.hpp"

namespace tmpcfg {

enum class BlockShape : std::uint8_t { TwoCellsRight = 0, TwoCellsLeft = 1 };

inline constexpr std::array<BlockShape, 2> kBlockShapes = {BlockShape::TwoCellsRight, BlockShape::TwoCellsLeft};

inline const char* shape_name(BlockShape s) noexcept { return s == BlockShape::TwoCellsRight ? "right" : "left"; }

/// Grid positions of a block's cells, in block cell order.
inline std::array<GridCell, 3> block_cells(BlockShape s) {
  if (s == BlockShape::TwoCellsLeft) return {GridCell{1, 1}, GridCell{1, 2}, GridCell{2, 1}};
  return {GridCell{1, 2}, GridCell{2, 1}, GridCell{2, 2}};
}

inline TessellationGraph build_block_graph(BlockShape s) {
  const auto cells = block_cells(s);
  return build_graph(TessellationLayout{2, 2}, std::vector<GridCell>(cells.begin(), cells.end()));
}

struct BlockEntry {
  BlockShape shape{};
  std::array<CellState, 3> states{};

  friend bool operator==(const BlockEntry&, const BlockEntry&) = default;
};

/// Left-right mirror of a block: the shape tag flips, phases swap OT+ <-> OT-,
/// and the cells are re-listed in the target shape's order.
///   left (A, B, C)  -> right (C', A', B')
///   right (P, Q, S) -> left (Q', S', P')
inline BlockEntry mirror_block(const BlockEntry& e) {
  const auto& s = e.states;
  if (e.shape == BlockShape::TwoCellsLeft)
    return {BlockShape::TwoCellsRight, {mirror_state(s[2]), mirror_state(s[0]), mirror_state(s[1])}};
  return {BlockShape::TwoCellsLeft, {mirror_state(s[1]), mirror_state(s[2]), mirror_state(s[0])}};
}

class BlockLibrary {
 public:
  BlockLibrary() = default;

  BlockLibrary(CreaseParameters params, std::vector<BlockEntry> entries)
      : params_(params), entries_(std::move(entries)) {
    for (const BlockEntry& e : entries_) {
      auto& m = third_[shape_slot(e.shape)][slot(e.states[0])][slot(e.states[1])];
      m.insert(e.states[2]);
      // projections onto the horizontal pair (A, C) and the vertical pair (A, B)
      if (e.shape == BlockShape::TwoCellsLeft) {
        horizontal_[slot(e.states[0])].insert(e.states[2]);
        vertical_[slot(e.states[0])].insert(e.states[1]);
      }
    }
  }

  const CreaseParameters& params() const noexcept { return params_; }
  const std::vector<BlockEntry>& entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }

  /// Third states completing (s1, s2) on `shape`.
  StateSet third_states(BlockShape shape, CellState s1, CellState s2) const noexcept {
    return third_[shape_slot(shape)][slot(s1)][slot(s2)];
  }

  /// Right neighbours of a cell allowed by some left block (its upper cell free).
  StateSet horizontal_states(CellState left) const noexcept { return horizontal_[slot(left)]; }

  /// Upper neighbours of a cell allowed by some left block (its right cell free).
  StateSet vertical_states(CellState below) const noexcept { return vertical_[slot(below)]; }

  bool contains(const BlockEntry& e) const {
    return third_states(e.shape, e.states[0], e.states[1]).contains(e.states[2]);
  }

  std::size_t count(BlockShape shape) const {
    std::size_t k = 0;
    for (const BlockEntry& e : entries_) k += e.shape == shape;
    return k;
  }

  /// One line per entry: `<shape>,<s1><s2><s3>`.
  std::string to_fixture() const {
    std::string out;
    for (const BlockEntry& e : entries_) {
      out += shape_name(e.shape);
      out += ',';
      for (CellState s : e.states) out += state_letter(s);
      out += '\n';
    }
    return out;
  }

  /// FNV-1a digest of the fixture text.
  std::uint64_t fingerprint() const {
    std::uint64_t h = 1469598103934665603ull;
    for (char c : to_fixture()) {
      h ^= static_cast<unsigned char>(c);
      h *= 1099511628211ull;
    }
    return h;
  }

 private:
  static std::size_t slot(CellState s) noexcept { return static_cast<std::size_t>(index_of(s)); }
  static std::size_t shape_slot(BlockShape s) noexcept { return static_cast<std::size_t>(s); }

  CreaseParameters params_{};
  std::vector<BlockEntry> entries_;
  std::array<std::array<std::array<StateSet, 4>, 4>, 2> third_{};
  std::array<StateSet, 4> horizontal_{};
  std::array<StateSet, 4> vertical_{};
};

/// Runs all 2 * 4^3 candidates through the oracle. Entries are ordered by
/// shape (right first), then lexicographically by state index.
inline BlockLibrary derive_block_library(const CreaseParameters& params) {
  params.validate();
  std::vector<BlockEntry> entries;
  for (BlockShape shape : kBlockShapes) {
    const TessellationGraph g = build_block_graph(shape);
    for (CellState a : kAllStates)
      for (CellState b : kAllStates)
        for (CellState c : kAllStates)
          if (is_valid(g, {a, b, c}, params)) entries.push_back({shape, {a, b, c}});
  }
  return BlockLibrary(params, std::move(entries));
}

/// Parses fixture text back into entries. Throws InvalidConfiguration on a
/// malformed line.
inline std::vector<BlockEntry> parse_block_fixture(const std::string& text) {
  std::vector<BlockEntry> out;
  std::istringstream in(text);
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    const std::string tag = line.substr(0, comma);
    BlockEntry e;
    if (tag == "right") e.shape = BlockShape::TwoCellsRight;
    else if (tag == "left") e.shape = BlockShape::TwoCellsLeft;
    else throw InvalidConfiguration("block fixture line " + std::to_string(lineNo) + ": unknown shape");
    const std::string letters = comma == std::string::npos ? "" : line.substr(comma + 1);
    if (letters.size() != 3) throw InvalidConfiguration("block fixture line " + std::to_string(lineNo) + ": need 3 states");
    for (std::size_t k = 0; k < 3; ++k)
      if (!state_from_letter(letters[k], e.states[k]))
        throw InvalidConfiguration("block fixture line " + std::to_string(lineNo) + ": bad state letter");
    out.push_back(e);
  }
  return out;
}

}  // namespace tmpcfg
