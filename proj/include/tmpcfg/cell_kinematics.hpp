#pragma once

// Unit-cell phases and their 2D cross-section geometry.
//
// A cell's cross-section is a hexagon with a horizontal bottom and top face
// (length l) and four side faces. Each side face either stands raised at the
// fold angle or lies folded flat, both with cross-section length m*sin(alpha):
//
//   TMP      all four side faces raised        (convex bellows, height 2h)
//   OT+      upper-right/lower-left raised     (tube, height h)
//   OT-      lower-right/upper-left raised     (mirror tube, height h)
//   Defect   all four folded flat              (height 0)
//
// Going upward, a side face tilts either right or left. A face on the right
// side carries the same tilt as the face on the left side it is flush against
// in a neighbour, so every phase is fully described by two tilt bits:
//   lower tilt: lower-right face == upper-left face
//   upper tilt: upper-right face == lower-left face

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <numbers>
#include <string>

#include "tmpcfg/error.hpp"

namespace tmpcfg {

enum class CellState : std::uint8_t { TMP = 0, OTPlus = 1, OTMinus = 2, Defect = 3 };

inline constexpr std::array<CellState, 4> kAllStates = {CellState::TMP, CellState::OTPlus,
                                                        CellState::OTMinus, CellState::Defect};

constexpr int index_of(CellState s) noexcept { return static_cast<int>(s); }

constexpr CellState state_from_index(int i) noexcept { return static_cast<CellState>(i); }

inline const char* state_name(CellState s) noexcept {
  switch (s) {
    case CellState::TMP: return "TMP";
    case CellState::OTPlus: return "OT+";
    case CellState::OTMinus: return "OT-";
    case CellState::Defect: return "Defect";
  }
  return "?";
}

/// Encoding letters: T, P (OT+), M (OT-), F (flat Defect).
constexpr char state_letter(CellState s) noexcept { return "TPMF"[index_of(s)]; }

/// Inverse of state_letter; false for any other character.
constexpr bool state_from_letter(char c, CellState& out) noexcept {
  switch (c) {
    case 'T': out = CellState::TMP; return true;
    case 'P': out = CellState::OTPlus; return true;
    case 'M': out = CellState::OTMinus; return true;
    case 'F': out = CellState::Defect; return true;
    default: return false;
  }
}

/// Left-right mirror image of a phase.
constexpr CellState mirror_state(CellState s) noexcept {
  switch (s) {
    case CellState::OTPlus: return CellState::OTMinus;
    case CellState::OTMinus: return CellState::OTPlus;
    default: return s;
  }
}

/// Subset of the four phases as a bitmask over index_of(state).
struct StateSet {
  std::uint8_t bits = 0;

  static constexpr StateSet all() noexcept { return {0x0F}; }
  static constexpr StateSet of(std::initializer_list<CellState> states) noexcept {
    StateSet s;
    for (CellState c : states) s.insert(c);
    return s;
  }

  constexpr void insert(CellState s) noexcept { bits = static_cast<std::uint8_t>(bits | (1u << index_of(s))); }
  constexpr bool contains(CellState s) const noexcept { return (bits >> index_of(s)) & 1u; }
  constexpr int size() const noexcept { return std::popcount(static_cast<unsigned>(bits)); }
  constexpr bool empty() const noexcept { return bits == 0; }

  friend constexpr bool operator==(StateSet, StateSet) = default;
  friend constexpr StateSet operator&(StateSet a, StateSet b) noexcept {
    return {static_cast<std::uint8_t>(a.bits & b.bits)};
  }
  friend constexpr StateSet operator|(StateSet a, StateSet b) noexcept {
    return {static_cast<std::uint8_t>(a.bits | b.bits)};
  }
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) noexcept { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) noexcept { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double k, Vec2 a) noexcept { return {k * a.x, k * a.y}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) noexcept = default;
};

constexpr double squared_norm(Vec2 v) noexcept { return v.x * v.x + v.y * v.y; }

constexpr Vec2 midpoint(Vec2 a, Vec2 b) noexcept { return {0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}; }

/// Crease parameters. Lengths in model units, angles in radians.
struct CreaseParameters {
  double l = 2.0;                               // top/bottom face length
  double m = 2.0;                               // side panel crease length
  double d = 1.0;                               // extrusion depth
  double alpha = std::numbers::pi / 4.0;        // sector angle of the side panels
  double tmpFoldAngle = std::numbers::pi / 4.0; // fold angle of raised side faces

  friend bool operator==(const CreaseParameters&, const CreaseParameters&) = default;

  static CreaseParameters canonical() { return {}; }

  /// Cross-section length of one side face.
  double side_length() const { return m * std::sin(alpha); }

  /// Largest length parameter; the scale for validity tolerances.
  double scale() const { return std::max({l, m, d}); }

  void validate() const {
    auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(l) || !finite(m) || !finite(d) || !finite(alpha) || !finite(tmpFoldAngle))
      throw InvalidParameters("crease parameters must be finite");
    if (!(l > 0.0) || !(m > 0.0) || !(d > 0.0))
      throw InvalidParameters("lengths l, m, d must be positive");
    if (!(alpha > 0.0) || !(alpha < std::numbers::pi / 2.0))
      throw InvalidParameters("alpha must lie strictly between 0 and pi/2");
    if (!(tmpFoldAngle > 0.0) || !(tmpFoldAngle < std::numbers::pi / 2.0))
      throw InvalidParameters("tmp fold angle must lie strictly between flat (0) and folded (pi/2)");
  }
};

/// Face slots, counter-clockwise from the upper-right face. The numbering is
/// what the global node ids 6*(cell-1)+slot are built from.
enum class Slot : std::uint8_t {
  UpperRight = 1,
  Top = 2,
  UpperLeft = 3,
  LowerLeft = 4,
  Bottom = 5,
  LowerRight = 6,
};

constexpr int slot_index(Slot s) noexcept { return static_cast<int>(s) - 1; }

/// Hexagon corners, listed so that corner k and corner k+1 bound one face.
/// BottomLeft is the cell's placement origin.
enum class Corner : std::uint8_t {
  BottomLeft = 0,
  BottomRight = 1,
  RightJoint = 2,  // between lower-right and upper-right faces
  TopRight = 3,
  TopLeft = 4,
  LeftJoint = 5,   // between lower-left and upper-left faces
};

constexpr int corner_index(Corner c) noexcept { return static_cast<int>(c); }

struct CellGeometry {
  CellState state{};
  std::array<Vec2, 6> anchors{};   // face midpoints, index slot_index(slot)
  std::array<Vec2, 6> corners{};   // index corner_index(corner), counter-clockwise from bottom-left
  double width = 0.0;              // horizontal extent of the corners
  double height = 0.0;

  Vec2 anchor(Slot s) const { return anchors[static_cast<std::size_t>(slot_index(s))]; }
  Vec2 corner(Corner c) const { return corners[static_cast<std::size_t>(corner_index(c))]; }
};

/// Two tilt bits per phase. `lowerRaised` is true when the lower-right face
/// stands raised (tilting right); `upperRaised` when the upper-right face does
/// (tilting left). Flat faces point the other way.
struct TiltBits {
  bool lowerRaised;
  bool upperRaised;
};

constexpr TiltBits tilt_bits(CellState s) noexcept {
  switch (s) {
    case CellState::TMP: return {true, true};
    case CellState::OTPlus: return {false, true};
    case CellState::OTMinus: return {true, false};
    case CellState::Defect: return {false, false};
  }
  return {false, false};
}

namespace detail {

// Upward vectors of the side faces.
inline Vec2 lower_face(bool raised, double s, double phi) {
  return raised ? Vec2{s * std::cos(phi), s * std::sin(phi)} : Vec2{-s, 0.0};
}

inline Vec2 upper_face(bool raised, double s, double phi) {
  return raised ? Vec2{-s * std::cos(phi), s * std::sin(phi)} : Vec2{s, 0.0};
}

}  // namespace detail

/// Canonical cross-section of `state` in the cell-local frame (bottom-left
/// corner at the origin). Throws InvalidParameters.
inline CellGeometry canonical_geometry(CellState state, const CreaseParameters& params) {
  params.validate();
  const double s = params.side_length();
  const double phi = params.tmpFoldAngle;
  const TiltBits bits = tilt_bits(state);

  const Vec2 lower = detail::lower_face(bits.lowerRaised, s, phi);  // LR and UL
  const Vec2 upper = detail::upper_face(bits.upperRaised, s, phi);  // UR and LL

  CellGeometry g;
  g.state = state;
  auto& c = g.corners;
  c[0] = {0.0, 0.0};
  c[1] = {params.l, 0.0};
  c[2] = c[1] + lower;
  c[3] = c[2] + upper;
  c[5] = c[0] + upper;
  c[4] = c[5] + lower;  // equals c[3] - (l, 0)

  // anchors follow slot order: UR, top, UL, LL, bottom, LR
  g.anchors = {midpoint(c[2], c[3]), midpoint(c[3], c[4]), midpoint(c[4], c[5]),
               midpoint(c[5], c[0]), midpoint(c[0], c[1]), midpoint(c[1], c[2])};

  double xmin = c[0].x, xmax = c[0].x;
  for (const Vec2& p : c) {
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
  }
  g.width = xmax - xmin;
  g.height = c[3].y;  // top face height; exactly 0 for Defect
  return g;
}

/// Reflect a geometry across the cell's vertical axis (x = l/2, through the
/// bottom-face midpoint). Faces swap sides, so slots and corners are permuted
/// to keep their meaning.
inline CellGeometry reflect(const CellGeometry& g, const CreaseParameters& params) {
  const double axis2 = params.l;  // 2 * (l / 2)
  auto flip = [axis2](Vec2 p) { return Vec2{axis2 - p.x, p.y}; };

  CellGeometry r;
  r.state = mirror_state(g.state);
  r.width = g.width;
  r.height = g.height;

  constexpr std::array<std::size_t, 6> cornerMap = {1, 0, 5, 4, 3, 2};
  for (std::size_t k = 0; k < 6; ++k) r.corners[k] = flip(g.corners[cornerMap[k]]);

  // UR<->UL, LR<->LL, top and bottom stay.
  constexpr std::array<std::size_t, 6> slotMap = {2, 1, 0, 5, 4, 3};
  for (std::size_t k = 0; k < 6; ++k) r.anchors[k] = flip(g.anchors[slotMap[k]]);
  return r;
}

/// All four canonical geometries, indexed by index_of(state).
inline std::array<CellGeometry, 4> canonical_geometries(const CreaseParameters& params) {
  std::array<CellGeometry, 4> out;
  for (CellState s : kAllStates) out[static_cast<std::size_t>(index_of(s))] = canonical_geometry(s, params);
  return out;
}

}  // namespace tmpcfg
