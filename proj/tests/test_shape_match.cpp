#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "support.hpp"
#include "tmpcfg/export_io.hpp"
#include "tmpcfg/shape_match.hpp"

using namespace tmpcfg;

namespace {

const CreaseParameters kCanon = CreaseParameters::canonical();

const BlockLibrary& lib() {
  static const BlockLibrary l = derive_block_library(kCanon);
  return l;
}

Configuration fixture_config(const std::string& name) {
  std::istringstream in(read_file(source_path("tests/fixtures/" + name)));
  std::string header, line;
  std::getline(in, header);
  std::getline(in, line);
  int cols = 0, rows = 0;
  char enc[128] = {};
  EXPECT_EQ(std::sscanf(line.c_str(), "%d,%d,%127s", &cols, &rows, enc), 3);
  return decode_config(enc, {cols, rows});
}

LandmarkSet chair_target() {
  std::ifstream in(source_path("tests/fixtures/chair_target.csv"));
  return read_target_csv(in);
}

// Cells with a face midpoint that meets no face
// midpoint of another non-flat cell in the placed tessellation.
std::size_t exposed_face_cells(const Configuration& c) {
  const auto placed = place_cells(c, kCanon);
  const double eps = coincidence_tolerance(kCanon);
  std::size_t count = 0;
  const auto n = c.states.size();
  for (std::size_t a = 0; a < n; ++a) {
    if (c.states[a] == CellState::Defect) continue;
    bool exposed = false;
    for (std::size_t s = 0; s < 6 && !exposed; ++s) {
      bool met = false;
      for (std::size_t b = 0; b < n && !met; ++b) {
        if (b == a || c.states[b] == CellState::Defect) continue;
        for (std::size_t t = 0; t < 6 && !met; ++t)
          met = squared_norm(placed.positions[6 * a + s] - placed.positions[6 * b + t]) <= eps;
      }
      exposed = !met;
    }
    count += exposed;
  }
  return count;
}

// Perimeter walk on the occupancy grid padded by one ring of empty sites: a
// non-flat cell counts when a step along any of the six lattice directions
// lands on an empty site.
std::size_t grid_perimeter_cells(const Configuration& c) {
  const int W = c.layout.cols + 2, H = c.layout.rows + 2;
  std::vector<char> full(static_cast<std::size_t>(W * H), 0);
  for (int col = 1; col <= c.layout.cols; ++col)
    for (int row = 1; row <= c.layout.rows; ++row)
      full[static_cast<std::size_t>(row * W + col)] = c.at(col, row) != CellState::Defect;
  const int steps[6][2] = {{1, 0}, {1, -1}, {0, -1}, {-1, 0}, {-1, 1}, {0, 1}};
  std::size_t count = 0;
  for (int row = 1; row < H - 1; ++row)
    for (int col = 1; col < W - 1; ++col) {
      if (!full[static_cast<std::size_t>(row * W + col)]) continue;
      bool edge = false;
      for (const auto& s : steps) edge |= !full[static_cast<std::size_t>((row + s[1]) * W + col + s[0])];
      count += edge;
    }
  return count;
}

LandmarkSet random_points(std::size_t n) {
  LandmarkSet s;
  for (std::size_t i = 0; i < n; ++i) s.points.push_back({uniform(-3, 3), uniform(-3, 3)});
  return s;
}

LandmarkSet similar(const LandmarkSet& a, double theta, double scale, Vec2 shift) {
  LandmarkSet b;
  for (Vec2 p : a.points)
    b.points.push_back({scale * (std::cos(theta) * p.x - std::sin(theta) * p.y) + shift.x,
                        scale * (std::sin(theta) * p.x + std::cos(theta) * p.y) + shift.y});
  return b;
}

// Minimum of ||R A - B||^2 over rotations and reflections sampled every 1e-4 rad.
double grid_search_disparity(const LandmarkSet& a, const LandmarkSet& b) {
  const Eigen::Matrix2Xd A = normalize_landmarks(a), B = normalize_landmarks(b);
  double best = 1e300;
  const double step = 1e-4;
  for (double t = 0; t < 2 * std::numbers::pi; t += step) {
    Eigen::Matrix2d rot, refl;
    rot << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
    refl << std::cos(t), std::sin(t), std::sin(t), -std::cos(t);
    best = std::min({best, (rot * A - B).squaredNorm(), (refl * A - B).squaredNorm()});
  }
  return best;
}

}  // namespace

TEST(ShapeMatch, AllFlatHasEmptyCrossSection) {
  const auto c = decode_config("FFFF", {2, 2});
  const auto cs = cross_section(c, kCanon);
  EXPECT_EQ(std::count(cs.occupancy.begin(), cs.occupancy.end(), true), 0);
  EXPECT_TRUE(cs.outline.empty());
  EXPECT_THROW(sample_landmarks(c, kCanon), DegenerateShape);
}

TEST(ShapeMatch, AllTmpIsFullyOccupiedWithOneOutline) {
  const auto cs = cross_section(decode_config("TTTT", {2, 2}), kCanon);
  EXPECT_EQ(std::count(cs.occupancy.begin(), cs.occupancy.end(), true), 4);
  ASSERT_EQ(cs.outline.size(), 1u);
  // four hexagons share five faces: 24 - 2*5 boundary edges
  EXPECT_EQ(cs.outline.front().size(), 14u);
}

TEST(ShapeMatch, ChairFixtureOccupancy) {
  const auto c = fixture_config("chair_config.csv");
  ASSERT_TRUE(is_valid(c, kCanon));
  const auto cs = cross_section(c, kCanon);
  std::string bitmap;
  for (int r = 4; r >= 1; --r) {
    for (int col = 1; col <= 4; ++col) bitmap += cs.occupied(col, r) ? '#' : '.';
    bitmap += '\n';
  }
  EXPECT_EQ(bitmap, read_file(source_path("tests/fixtures/chair_occupancy.txt")));
}

TEST(ShapeMatch, ChairFixtureIsTheBestMatch) {
  const auto ranked = rank_matches({4, 4}, StateSet::all(), chair_target(), lib());
  ASSERT_FALSE(ranked.empty());
  EXPECT_EQ(ranked.front().config, fixture_config("chair_config.csv"));
  EXPECT_NEAR(ranked.front().disparity, 0.150267, 1e-6);
  for (std::size_t i = 1; i < ranked.size(); ++i) EXPECT_LE(ranked[i - 1].disparity, ranked[i].disparity);
}

TEST(ShapeMatch, SingleCellLandmark) {
  const auto c = decode_config("FFFT", {2, 2});
  const auto lm = sample_landmarks(c, kCanon);
  ASSERT_EQ(lm.size(), 1u);
  const auto placed = place_cells(c, kCanon);
  Vec2 center{};
  for (std::size_t k = 18; k < 24; ++k) center = center + placed.positions[k];
  EXPECT_NEAR(lm.points[0].x, center.x / 6, 1e-12);
  EXPECT_NEAR(lm.points[0].y, center.y / 6, 1e-12);
}

TEST(ShapeMatch, AllTmpThreeByThreeHasEightLandmarks) {
  EXPECT_EQ(sample_landmarks(decode_config("TTTTTTTTT", {3, 3}), kCanon).size(), 8u);
}

TEST(ShapeMatch, TubeAndFlatFixtureMatchesExposedFaceCount) {
  const auto c = fixture_config("tube_flat_3x3.csv");
  ASSERT_TRUE(is_valid(c, kCanon));
  const auto k = composition(c);
  EXPECT_EQ(k.nDefect, 4);
  EXPECT_EQ(k.nOTMinus, 5);
  EXPECT_EQ(sample_landmarks(c, kCanon).size(), grid_perimeter_cells(c));
  EXPECT_EQ(sample_landmarks(c, kCanon).size(), exposed_face_cells(c));
  EXPECT_EQ(sample_landmarks(c, kCanon).size(), 5u);
}

TEST(ShapeMatch, PerimeterRuleMatchesGridWalk) {
  for (const auto& c : enumerate_valid({4, 3}, StateSet::all(), lib())) {
    if (composition(c).nDefect == 12) continue;
    const auto n = sample_landmarks(c, kCanon).size();
    EXPECT_EQ(n, grid_perimeter_cells(c)) << encode_config(c);
    // a collapsed flat cell can let its neighbours close over it, so the
    // geometric count is only a lower bound
    EXPECT_LE(exposed_face_cells(c), n) << encode_config(c);
  }
}

TEST(ShapeMatch, LandmarksRunCounterClockwiseFromLowestLeft) {
  std::vector<Vec2> pts = {{1, 1}, {-1, 1}, {0, -1}, {1, -1}, {-1, -1}};
  order_counter_clockwise(pts);
  EXPECT_EQ(pts.front(), (Vec2{-1, -1}));
  EXPECT_EQ(pts[1], (Vec2{0, -1}));
  EXPECT_EQ(pts[2], (Vec2{1, -1}));
  EXPECT_EQ(pts[3], (Vec2{1, 1}));
  EXPECT_EQ(pts[4], (Vec2{-1, 1}));
}

TEST(ShapeMatch, IdenticalSetsGiveZeroDisparity) {
  const auto a = random_points(6);
  const auto r = procrustes(a, a);
  EXPECT_NEAR(r.disparity, 0.0, 1e-12);
  EXPECT_TRUE(r.rotation.isApprox(Eigen::Matrix2d::Identity(), 1e-10));
}

TEST(ShapeMatch, SimilarityTransformsGiveZeroDisparity) {
  for (int t = 0; t < 100; ++t) {
    const auto a = random_points(3 + static_cast<std::size_t>(t % 8));
    const auto b = similar(a, uniform(-4, 4), uniform(0.01, 50), {uniform(-100, 100), uniform(-100, 100)});
    EXPECT_LE(procrustes(a, b).disparity, 1e-10);
  }
}

TEST(ShapeMatch, AgreesWithRotationGridSearch) {
  for (int t = 0; t < 5; ++t) {
    const auto a = random_points(6), b = random_points(6);
    EXPECT_NEAR(procrustes(a, b).disparity, grid_search_disparity(a, b), 1e-6);
  }
}

TEST(ShapeMatch, RoleSymmetryOrthogonalityAndTrace) {
  for (int t = 0; t < 100; ++t) {
    const auto a = random_points(7), b = random_points(7);
    const auto r = procrustes(a, b);
    EXPECT_NEAR(r.disparity, procrustes(b, a).disparity, 1e-10);
    EXPECT_LE((r.rotation.transpose() * r.rotation - Eigen::Matrix2d::Identity()).norm(), 1e-10);
    const Eigen::Matrix2d S = r.singularValues.asDiagonal();
    EXPECT_NEAR((S * r.V.transpose() * r.rotation * r.U).trace(), r.singularValues.sum(), 1e-8);
    EXPECT_GE(r.disparity, 0.0);
  }
}

TEST(ShapeMatch, ForcedProperRotation) {
  LandmarkSet a = random_points(5), b = a;
  for (Vec2& p : b.points) p.x = -p.x;
  const auto free = procrustes(a, b);
  EXPECT_NEAR(free.disparity, 0.0, 1e-10);
  EXPECT_LT(free.rotation.determinant(), 0.0);
  const auto proper = procrustes(a, b, true);
  EXPECT_NEAR(proper.rotation.determinant(), 1.0, 1e-10);
  EXPECT_GT(proper.disparity, free.disparity);
}

TEST(ShapeMatch, InputErrors) {
  EXPECT_THROW(procrustes(random_points(4), random_points(5)), DimensionMismatch);
  EXPECT_THROW(procrustes(random_points(1), random_points(1)), DimensionMismatch);
  LandmarkSet same{{{1, 1}, {1, 1}, {1, 1}}};
  EXPECT_THROW(procrustes(same, random_points(3)), DegenerateShape);
}
