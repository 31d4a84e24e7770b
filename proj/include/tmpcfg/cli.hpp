#pragma once

// Command-line front end. Exit codes: 0 success, 1 usage error, 2 domain error.

#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "tmpcfg/tmpcfg.hpp"

namespace tmpcfg::cli {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string command;
  int cols = 2;
  int rows = 2;
  std::string states = "T,P,M,F";
  std::string config;
  std::string paramsFile;
  std::string out;
  int threads = 1;
  int numDefects = -1;
  std::string target;
  std::string format;
  bool skipFlat = false;
  bool forceProperRotation = false;
  bool allowLarge = false;
};

namespace detail {

inline std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

inline std::string hex64(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

inline nlohmann::json manifest(const Flags& f, const CreaseParameters& p, const BlockLibrary& lib) {
  nlohmann::json flags = {{"cols", f.cols},
                          {"rows", f.rows},
                          {"states", f.states},
                          {"config", f.config},
                          {"params", f.paramsFile},
                          {"out", f.out},
                          {"threads", f.threads},
                          {"num_defects", f.numDefects},
                          {"target", f.target},
                          {"format", f.format},
                          {"skip_flat", f.skipFlat},
                          {"force_proper_rotation", f.forceProperRotation},
                          {"allow_large", f.allowLarge}};
  return {{"command", f.command},
          {"flags", flags},
          {"parameters",
           {{"l", p.l}, {"m", p.m}, {"d", p.d}, {"alpha_rad", p.alpha}, {"tmp_fold_rad", p.tmpFoldAngle}}},
          {"library_fingerprint", hex64(lib.fingerprint())},
          {"library_entries", lib.size()},
          {"timestamp", utc_timestamp()}};
}

// Output sink: the --out file, or the given stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw UsageError("cannot open output file " + path);
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

inline TessellationLayout layout_of(const Flags& f) {
  if (f.cols < 1 || f.rows < 1) throw UsageError("--cols and --rows must be positive");
  return {f.cols, f.rows};
}

inline StateSet states_of(const Flags& f) {
  try {
    const StateSet s = parse_states(f.states);
    if (s.size() < 3) throw UsageError("--states needs three or four states");
    return s;
  } catch (const InvalidParameters& e) {
    throw UsageError(std::string("--states: ") + e.what());
  }
}

inline Configuration config_of(const Flags& f) {
  if (f.config.empty()) throw UsageError("--config is required");
  try {
    return decode_config(f.config, layout_of(f));
  } catch (const DecodeError& e) {
    throw UsageError(std::string("--config: ") + e.what());
  }
}

}  // namespace detail

/// Parses argv and runs one subcommand, writing results to `out` (or --out)
/// and diagnostics plus the manifest (when there is no --out) to `err`.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Enumerate and analyze Tachi-Miura polyhedron tessellations", "tmpcfg"};
  app.require_subcommand(1);
  Flags f;

  auto layoutFlags = [&f](CLI::App* sub) {
    sub->add_option("--cols", f.cols, "number of columns (X)");
    sub->add_option("--rows", f.rows, "number of rows (Y)");
  };
  auto common = [&f](CLI::App* sub) {
    sub->add_option("--params", f.paramsFile, "crease parameter file (l, m, d, alpha_deg, tmp_fold_deg)");
    sub->add_option("--out", f.out, "output path (default stdout)");
    sub->add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
  };

  auto* count = app.add_subcommand("count", "count valid configurations");
  layoutFlags(count);
  common(count);
  count->add_option("--states", f.states, "allowed states, e.g. T,P,M");

  auto* enumerate = app.add_subcommand("enumerate", "stream valid configurations");
  layoutFlags(enumerate);
  common(enumerate);
  enumerate->add_option("--states", f.states, "allowed states, e.g. T,P,M");
  enumerate->add_option("--num-defects", f.numDefects, "keep only configurations with this many defects");
  enumerate->add_option("--format", f.format, "jsonl (default) or text");

  auto* validate = app.add_subcommand("validate", "check one configuration with the geometric oracle");
  layoutFlags(validate);
  common(validate);
  validate->add_option("--config", f.config, "encoding over T, P, M, F, column-major from bottom-left");

  auto* oracle = app.add_subcommand("oracle", "brute-force enumeration through the distance-matrix test");
  layoutFlags(oracle);
  common(oracle);
  oracle->add_option("--states", f.states, "allowed states, e.g. T,P,M");
  oracle->add_flag("--allow-large", f.allowLarge, "lift the candidate cap and prune early");

  auto* blocks = app.add_subcommand("blocks", "print the 3-cell block library");
  common(blocks);

  auto* defects = app.add_subcommand("defects", "defect histogram or normalized curve");
  layoutFlags(defects);
  common(defects);
  defects->add_option("--format", f.format, "histogram (default) or curve");

  auto* heatmap = app.add_subcommand("heatmap", "per-cell defect occurrence for a fixed defect count");
  layoutFlags(heatmap);
  common(heatmap);
  heatmap->add_option("--num-defects", f.numDefects, "number of defects")->required();

  auto* match = app.add_subcommand("match", "rank configurations by Procrustes disparity to a target");
  layoutFlags(match);
  common(match);
  match->add_option("--states", f.states, "allowed states, e.g. T,P,M");
  match->add_option("--target", f.target, "target landmarks, CSV x,y in order")->required();
  match->add_flag("--force-proper-rotation", f.forceProperRotation, "exclude reflections");

  auto* exportCmd = app.add_subcommand("export", "export geometry of one configuration");
  layoutFlags(exportCmd);
  common(exportCmd);
  exportCmd->add_option("--config", f.config, "encoding over T, P, M, F");
  exportCmd->add_option("--format", f.format, "obj (default) or adjacency");
  exportCmd->add_flag("--skip-flat", f.skipFlat, "omit Defect cells");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }
  f.command = app.get_subcommands().front()->get_name();

  try {
    const CreaseParameters params = [&] {
      if (f.paramsFile.empty()) return CreaseParameters::canonical();
      try {
        return load_parameters(f.paramsFile);
      } catch (const InvalidParameters& e) {
        throw UsageError(e.what());
      }
    }();
    const BlockLibrary lib = derive_block_library(params);
    const SearchOptions options{params, f.threads};
    detail::Sink sink(f.out, out);
    std::ostream& os = sink.stream();
    int code = 0;

    if (f.command == "count") {
      const CountResult r = count_valid(detail::layout_of(f), detail::states_of(f), lib, options);
      nlohmann::json j = {{"cols", f.cols},
                          {"rows", f.rows},
                          {"states", format_states(r.allowedStates)},
                          {"count", r.count},
                          {"elapsed_ms", r.elapsed.count()}};
      os << j.dump() << '\n';
    } else if (f.command == "enumerate") {
      const std::string fmt = f.format.empty() ? "jsonl" : f.format;
      if (fmt != "jsonl" && fmt != "text") throw UsageError("--format must be jsonl or text");
      for_each_valid(detail::layout_of(f), detail::states_of(f), lib, options, [&](Configuration&& c) {
        if (f.numDefects >= 0 && composition(c).nDefect != f.numDefects) return;
        if (fmt == "text") os << encode_config(c) << '\n';
        else write_jsonl(os, make_record(c));
      });
    } else if (f.command == "validate") {
      const Configuration c = detail::config_of(f);
      const bool ok = is_valid(c, params);
      os << (ok ? "valid" : "invalid") << '\n';
      code = ok ? 0 : 2;
    } else if (f.command == "oracle") {
      OracleOptions o{brute_force_cap_from_env(), f.allowLarge};
      for (const Configuration& c : brute_force_enumerate(detail::layout_of(f), detail::states_of(f), params, o))
        os << encode_config(c) << '\n';
    } else if (f.command == "blocks") {
      os << lib.to_fixture();
    } else if (f.command == "defects") {
      const std::string fmt = f.format.empty() ? "histogram" : f.format;
      if (fmt != "histogram" && fmt != "curve") throw UsageError("--format must be histogram or curve");
      const DefectHistogram h = defect_histogram(detail::layout_of(f), lib, options);
      if (fmt == "curve") write_curve_csv(os, normalized_curve(h));
      else write_histogram_csv(os, h);
    } else if (f.command == "heatmap") {
      const TessellationLayout layout = detail::layout_of(f);
      if (f.numDefects < 0 || f.numDefects > layout.n()) throw UsageError("--num-defects must lie in 0..n");
      write_occurrence_csv(os, occurrence_map(layout, f.numDefects, lib, options));
    } else if (f.command == "match") {
      std::ifstream in(f.target);
      if (!in) throw UsageError("cannot read target file " + f.target);
      LandmarkSet target;
      try {
        target = read_target_csv(in);
      } catch (const InvalidParameters& e) {
        throw UsageError(e.what());
      }
      write_match_csv(os, rank_matches(detail::layout_of(f), detail::states_of(f), target, lib, options,
                                       f.forceProperRotation));
    } else if (f.command == "export") {
      const std::string fmt = f.format.empty() ? "obj" : f.format;
      if (fmt == "adjacency") {
        write_adjacency_csv(os, adjacency_matrix(build_graph(detail::layout_of(f))));
      } else {
        if (fmt != "obj") throw UsageError("--format must be obj or adjacency");
        os << export_geometry(detail::config_of(f), params, fmt, f.skipFlat);
      }
    }
    os.flush();

    const std::string m = detail::manifest(f, params, lib).dump(2);
    if (f.out.empty()) {
      err << m << '\n';
    } else {
      std::ofstream mf(f.out + ".manifest.json", std::ios::binary);
      mf << m << '\n';
    }
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n\n" << app.get_subcommands().front()->help();
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace tmpcfg::cli
