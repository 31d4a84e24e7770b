#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "tmpcfg/config_search.hpp"
#include "tmpcfg/export_io.hpp"

using namespace tmpcfg;

namespace {

const CreaseParameters kCanon = CreaseParameters::canonical();

const BlockLibrary& lib() {
  static const BlockLibrary l = derive_block_library(kCanon);
  return l;
}

const StateSet kTPM = StateSet::of({CellState::TMP, CellState::OTPlus, CellState::OTMinus});

std::uint64_t count(int c, int r, StateSet s = StateSet::all()) { return count_valid({c, r}, s, lib()).count; }

std::vector<StateSet> three_state_subsets() {
  std::vector<StateSet> out;
  for (CellState drop : kAllStates) {
    StateSet s;
    for (CellState c : kAllStates)
      if (c != drop) s.insert(c);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST(ConfigSearch, TwoByTwoEqualsOracle) {
  const auto found = enumerate_valid({2, 2}, StateSet::all(), lib());
  EXPECT_EQ(found.size(), 32u);
  EXPECT_EQ(found, brute_force_enumerate({2, 2}, StateSet::all(), kCanon));
}

TEST(ConfigSearch, ThreeByThreeCount) { EXPECT_EQ(enumerate_valid({3, 3}, StateSet::all(), lib()).size(), 256u); }

TEST(ConfigSearch, EqualsOracleForEveryLayoutUpToNineCells) {
  for (int c = 1; c <= 9; ++c)
    for (int r = 1; c * r <= 9; ++r) {
      std::vector<StateSet> subsets = three_state_subsets();
      subsets.push_back(StateSet::all());
      for (StateSet s : subsets)
        EXPECT_EQ(enumerate_valid({c, r}, s, lib()), brute_force_enumerate({c, r}, s, kCanon))
            << c << "x" << r << " " << format_states(s);
    }
}

TEST(ConfigSearch, LargeCounts) {
  EXPECT_EQ(count(7, 7), 1048576u);
  EXPECT_EQ(count(2, 8), 131072u);
  EXPECT_EQ(count(8, 2), 2048u);
}

TEST(ConfigSearch, ThreeByThreeSubsetsAllGiveFifty) {
  for (StateSet s : three_state_subsets()) EXPECT_EQ(count(3, 3, s), 50u) << format_states(s);
}

TEST(ConfigSearch, SubsetCountsAgreeAndStayBelowFull) {
  for (auto [c, r] : {std::pair{4, 4}, std::pair{2, 5}, std::pair{5, 3}, std::pair{6, 6}}) {
    const auto full = count(c, r);
    const auto subsets = three_state_subsets();
    const auto first = count(c, r, subsets.front());
    for (StateSet s : subsets) {
      EXPECT_EQ(count(c, r, s), first) << c << "x" << r << " " << format_states(s);
      EXPECT_LE(count(c, r, s), full);
    }
  }
}

TEST(ConfigSearch, ZeroDefectFilterEqualsThreeStateSearch) {
  for (auto [c, r] : {std::pair{3, 3}, std::pair{4, 3}, std::pair{2, 5}}) {
    std::vector<Configuration> filtered;
    for (auto& cfg : enumerate_valid({c, r}, StateSet::all(), lib()))
      if (composition(cfg).nDefect == 0) filtered.push_back(cfg);
    EXPECT_EQ(filtered, enumerate_valid({c, r}, kTPM, lib()));
  }
}

TEST(ConfigSearch, StreamIsCanonicallySortedAndValid) {
  const auto all = enumerate_valid({4, 3}, StateSet::all(), lib());
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end(), canonical_less));
  for (std::size_t i = 0; i < all.size(); i += 37) EXPECT_TRUE(is_valid(all[i], kCanon));
}

TEST(ConfigSearch, CountMatchesStreamLength) {
  for (auto [c, r] : {std::pair{1, 1}, std::pair{1, 3}, std::pair{3, 1}, std::pair{4, 4}, std::pair{5, 2}}) {
    const auto res = count_valid({c, r}, StateSet::all(), lib());
    EXPECT_EQ(res.count, enumerate_valid({c, r}, StateSet::all(), lib()).size());
    EXPECT_LE(static_cast<double>(res.count), std::pow(4.0, c * r));
    EXPECT_GE(res.elapsed.count(), 0.0);
  }
}

TEST(ConfigSearch, AllTmpTwoByTwoExtensions) {
  const auto base = decode_config("TTTT", {2, 2});
  const auto cols = extend(base, Direction::AddColumn, lib());
  const auto rows = extend(base, Direction::AddRow, lib());
  EXPECT_EQ(cols.size(), 2u);
  EXPECT_EQ(rows.size(), 4u);
  for (const auto& c : cols) {
    EXPECT_EQ(c.layout, (TessellationLayout{3, 2}));
    EXPECT_TRUE(is_valid(c, kCanon));
    for (int col = 1; col <= 2; ++col)
      for (int row = 1; row <= 2; ++row) EXPECT_EQ(c.at(col, row), CellState::TMP);
  }
  for (const auto& c : rows) {
    EXPECT_EQ(c.layout, (TessellationLayout{2, 3}));
    EXPECT_TRUE(is_valid(c, kCanon));
    for (int col = 1; col <= 2; ++col)
      for (int row = 1; row <= 2; ++row) EXPECT_EQ(c.at(col, row), CellState::TMP);
  }
}

TEST(ConfigSearch, ExtensionsPartitionTheLargerLayout) {
  std::size_t colTotal = 0, rowTotal = 0;
  for (const auto& c : enumerate_valid({2, 2}, StateSet::all(), lib())) {
    colTotal += extend(c, Direction::AddColumn, lib()).size();
    rowTotal += extend(c, Direction::AddRow, lib()).size();
  }
  EXPECT_EQ(colTotal, 64u);
  EXPECT_EQ(rowTotal, 128u);
}

TEST(ConfigSearch, Composition) {
  EXPECT_EQ(composition(decode_config("TTTT", {2, 2})), (Composition{4, 0, 0, 0}));
  for (const auto& c : enumerate_valid({3, 3}, StateSet::all(), lib())) EXPECT_EQ(composition(c).total(), 9);
}

TEST(ConfigSearch, FourByFourHeterogeneousCompositions) {
  bool a = false, b = false;
  for (const auto& c : enumerate_valid({4, 4}, StateSet::all(), lib())) {
    const auto k = composition(c);
    a |= k == Composition{6, 2, 6, 2};
    b |= k == Composition{1, 3, 5, 7};
  }
  EXPECT_TRUE(a);
  EXPECT_TRUE(b);
}

TEST(ConfigSearch, GrowthLaws) {
  for (int x = 1; x < 7; ++x)
    for (int y = 1; y <= 6; ++y) {
      EXPECT_EQ(count(x + 1, y), 2 * count(x, y)) << x << "x" << y;
      EXPECT_EQ(count(y, x + 1), 4 * count(y, x)) << y << "x" << x;
    }
}

TEST(ConfigSearch, ResultsIndependentOfThreadCount) {
  for (auto [c, r] : {std::pair{4, 4}, std::pair{3, 5}}) {
    SearchOptions one{kCanon, 1}, many{kCanon, 6};
    EXPECT_EQ(enumerate_valid({c, r}, StateSet::all(), lib(), one), enumerate_valid({c, r}, StateSet::all(), lib(), many));
    EXPECT_EQ(count_valid({c, r}, kTPM, lib(), one).count, count_valid({c, r}, kTPM, lib(), many).count);
  }
}

TEST(ConfigSearch, RejectsForeignLibrary) {
  CreaseParameters other = kCanon;
  other.l = 3.0;
  EXPECT_THROW(count_valid({2, 2}, StateSet::all(), lib(), {other, 1}), LibraryMismatch);
  EXPECT_THROW(count_valid({2, 2}, StateSet::of({CellState::TMP}), lib()), InvalidParameters);
}
