#pragma once

// Encodings, tabular writers, mesh export and parameter files.
//
// Numbers are written with 12 significant digits (%.12g), -0 as 0; every line
// ends with '\n'.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tmpcfg/cell_kinematics.hpp"
#include "tmpcfg/config_search.hpp"
#include "tmpcfg/defect_analysis.hpp"
#include "tmpcfg/error.hpp"
#include "tmpcfg/geometric_oracle.hpp"
#include "tmpcfg/shape_match.hpp"
#include "tmpcfg/tessellation_graph.hpp"

namespace tmpcfg {

inline std::string encode_config(const Configuration& config) {
  std::string s;
  s.reserve(config.states.size());
  for (CellState c : config.states) s += state_letter(c);
  return s;
}

/// Throws DecodeError (LengthMismatch or BadCharacter with 1-based position).
inline Configuration decode_config(const std::string& text, const TessellationLayout& layout) {
  layout.validate();
  const auto n = static_cast<std::size_t>(layout.n());
  Configuration c{layout, {}};
  c.states.reserve(n);
  for (std::size_t i = 0; i < text.size(); ++i) {
    CellState s{};
    if (!state_from_letter(text[i], s))
      throw DecodeError(DecodeError::Kind::BadCharacter, i + 1,
                        "bad character '" + std::string(1, text[i]) + "' at position " + std::to_string(i + 1));
    c.states.push_back(s);
  }
  if (text.size() != n)
    throw DecodeError(DecodeError::Kind::LengthMismatch, text.size(),
                      "encoding has length " + std::to_string(text.size()) + ", layout needs " + std::to_string(n));
  return c;
}

/// Parses a comma list of state letters such as "T,P,M".
inline StateSet parse_states(const std::string& text) {
  StateSet set;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    CellState s{};
    if (tok.size() != 1 || !state_from_letter(tok[0], s))
      throw InvalidParameters("unknown state '" + tok + "' (expected T, P, M or F)");
    if (set.contains(s)) throw InvalidParameters("state '" + tok + "' listed twice");
    set.insert(s);
  }
  return set;
}

inline std::string format_states(StateSet set) {
  std::string out;
  for (CellState s : kAllStates) {
    if (!set.contains(s)) continue;
    if (!out.empty()) out += ',';
    out += state_letter(s);
  }
  return out;
}

inline std::string format_number(double v) {
  if (v == 0.0) v = 0.0;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  std::string s = buf;
  if (s == "-0") s = "0";
  return s;
}

struct ConfigRecord {
  std::string encoding;
  int cols = 0;
  int rows = 0;
  Composition composition;
  std::optional<double> disparity;
};

inline ConfigRecord make_record(const Configuration& c, std::optional<double> disparity = std::nullopt) {
  return {encode_config(c), c.layout.cols, c.layout.rows, composition(c), disparity};
}

/// One JSON object per line with keys in sorted order.
inline void write_jsonl(std::ostream& os, const ConfigRecord& r) {
  os << "{\"cols\":" << r.cols;
  if (r.disparity) os << ",\"disparity\":" << format_number(*r.disparity);
  os << ",\"encoding\":\"" << r.encoding << '"' << ",\"n_defect\":" << r.composition.nDefect
     << ",\"n_otm\":" << r.composition.nOTMinus << ",\"n_otp\":" << r.composition.nOTPlus
     << ",\"n_tmp\":" << r.composition.nTMP << ",\"rows\":" << r.rows << "}\n";
}

inline void write_adjacency_csv(std::ostream& os, const AdjacencyMatrix& a) {
  os << "i,j\n";
  for (auto [i, j] : a.pairs()) os << i << ',' << j << '\n';
}

inline void write_histogram_csv(std::ostream& os, const DefectHistogram& h) {
  os << "n_defect,n_con\n";
  for (std::size_t k = 0; k < h.counts.size(); ++k) os << k << ',' << h.counts[k] << '\n';
}

inline void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& curve) {
  os << "x,y\n";
  for (const CurvePoint& p : curve) os << format_number(p.x) << ',' << format_number(p.y) << '\n';
}

/// Rows top to bottom; header lists column indices.
inline void write_occurrence_csv(std::ostream& os, const OccurrenceMap& m) {
  os << "row";
  for (int c = 1; c <= m.layout.cols; ++c) os << ',' << c;
  os << '\n';
  for (int r = m.layout.rows; r >= 1; --r) {
    os << r;
    for (int c = 1; c <= m.layout.cols; ++c) os << ',' << m(c, r);
    os << '\n';
  }
}

inline void write_match_csv(std::ostream& os, const std::vector<MatchRecord>& matches) {
  os << "encoding,disparity\n";
  for (const MatchRecord& m : matches) os << encode_config(m.config) << ',' << format_number(m.disparity) << '\n';
}

/// Reads `x,y` rows; a non-numeric first line is taken as a header.
inline LandmarkSet read_target_csv(std::istream& in) {
  LandmarkSet out;
  std::string line;
  int lineNo = 0;
  while (std::getline(in, line)) {
    ++lineNo;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw InvalidParameters("target line " + std::to_string(lineNo) + ": expected x,y");
    try {
      std::size_t px = 0, py = 0;
      const std::string xs = line.substr(0, comma), ys = line.substr(comma + 1);
      const double x = std::stod(xs, &px), y = std::stod(ys, &py);
      if (px != xs.size() || py != ys.size()) throw std::invalid_argument("trailing text");
      out.points.push_back({x, y});
    } catch (const std::logic_error&) {
      if (out.points.empty() && lineNo == 1) continue;
      throw InvalidParameters("target line " + std::to_string(lineNo) + ": expected x,y");
    }
  }
  return out;
}

inline void write_target_csv(std::ostream& os, const LandmarkSet& s) {
  os << "x,y\n";
  for (Vec2 p : s.points) os << format_number(p.x) << ',' << format_number(p.y) << '\n';
}

/// Extrudes every placed cell polygon from z = 0 to z = d as Wavefront OBJ:
/// six front vertices, six back vertices, front and back hexagons, six side
/// quads. Defect cells are degenerate (zero area) unless skipped.
inline std::string export_geometry(const Configuration& config, const CreaseParameters& params,
                                   const std::string& format, bool skipFlat = false) {
  if (format != "obj") throw UnsupportedFormat("unsupported mesh format '" + format + "' (supported: obj)");
  const PlacedTessellation placed = place_cells(config, params);
  std::ostringstream os;
  os << "# tmpcfg " << config.layout.cols << "x" << config.layout.rows << " " << encode_config(config) << '\n';
  int base = 0;
  for (std::size_t c = 0; c < config.states.size(); ++c) {
    if (skipFlat && config.states[c] == CellState::Defect) continue;
    os << "o cell" << (c + 1) << '\n';
    for (double z : {0.0, params.d})
      for (Vec2 p : placed.corners[c])
        os << "v " << format_number(p.x) << ' ' << format_number(p.y) << ' ' << format_number(z) << '\n';
    os << "f";
    for (int k = 6; k >= 1; --k) os << ' ' << base + k;
    os << "\nf";
    for (int k = 1; k <= 6; ++k) os << ' ' << base + 6 + k;
    os << '\n';
    for (int k = 0; k < 6; ++k) {
      const int a = base + 1 + k, b = base + 1 + (k + 1) % 6;
      os << "f " << a << ' ' << b << ' ' << b + 6 << ' ' << a + 6 << '\n';
    }
    base += 12;
  }
  return os.str();
}

/// Key-value parameter text: `key = value` lines, '#' comments. Keys l, m, d,
/// alpha_deg, tmp_fold_deg; missing keys keep their defaults.
inline CreaseParameters parse_parameters(const std::string& text) {
  CreaseParameters p;
  std::istringstream in(text);
  std::string line;
  int lineNo = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineNo;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw InvalidParameters("parameter line " + std::to_string(lineNo) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq)), val = trim(line.substr(eq + 1));
    double v = 0.0;
    try {
      std::size_t used = 0;
      v = std::stod(val, &used);
      if (used != val.size()) throw std::invalid_argument("trailing text");
    } catch (const std::logic_error&) {
      throw InvalidParameters("parameter line " + std::to_string(lineNo) + ": '" + val + "' is not a number");
    }
    const double rad = v * std::numbers::pi / 180.0;
    if (key == "l") p.l = v;
    else if (key == "m") p.m = v;
    else if (key == "d") p.d = v;
    else if (key == "alpha_deg") p.alpha = rad;
    else if (key == "tmp_fold_deg") p.tmpFoldAngle = rad;
    else throw InvalidParameters("parameter line " + std::to_string(lineNo) + ": unknown key '" + key + "'");
  }
  p.validate();
  return p;
}

inline CreaseParameters load_parameters(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidParameters("cannot read parameter file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_parameters(ss.str());
}

}  // namespace tmpcfg
