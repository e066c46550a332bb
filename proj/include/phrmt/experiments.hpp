#pragma once

// Experiment runs behind the command-line tool. Each run returns
// its output files in memory plus a manifest; write_outputs puts them on
// disk all-or-nothing.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "phrmt/stats.hpp"
#include "phrmt/walk.hpp"

namespace phrmt {

inline constexpr const char* kArtifactVersion = "1.0.0";

/// Bad arguments or configuration (exit code 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
/// Output could not be written (exit code 3).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutputFile {
  std::string name;
  std::string content;
};

struct LabeledReport {
  std::string label;  // e.g. "cc", "real"
  std::string law;    // empty when no closed law exists
  std::optional<GofReport> report;
  bool reference_only = false;
};

struct RunResult {
  std::string command;
  nlohmann::json parameters;
  std::vector<OutputFile> files;
  std::vector<LabeledReport> reports;

  /// False when any asserted (non reference-only) report failed.
  bool passed() const;
};

struct CommonOptions {
  std::uint64_t seed = 1;
  unsigned threads = 0;
  std::size_t bins = 50;
};

struct Spacing2x2Params {
  std::string family = "F1";
  double sigma = 1.0;
  double epsilon = 1.0;
  std::size_t count = 100000;
  std::optional<double> ks_threshold;
};

enum class CyclicClass { cc, rc, generic, all };
enum class BlockMode { none, gaussian, ising };

struct SpacingCyclicParams {
  long n = 3;
  double a = 1.0;
  std::size_t count = 10000;
  CyclicClass cls = CyclicClass::all;
  BlockMode blocks = BlockMode::none;
  double ising_scale = 1.0;
  std::optional<double> ks_threshold;
};

/// Flat key = value walk configuration. Either (w, p) or a sparse hop row
/// "row = k:value k:value ..." with 1-based k; start is a 1-based site.
struct WalkConfigSpec {
  std::optional<long> sites;
  std::optional<double> w;
  std::optional<double> p;
  std::vector<std::pair<long, double>> row;
  long start = 1;
};

WalkConfigSpec parse_walk_config(const std::string& text);
/// Builds and validates the configuration; throws UsageError naming the
/// violated invariant.
WalkConfig build_walk_config(const WalkConfigSpec& spec);

struct WalkParams {
  WalkConfigSpec config;
  std::int64_t t_max = 100;
};

struct RmtDecayParams {
  std::int64_t t_max = 200;
  std::vector<long> n_values{8, 32, 128};
  std::size_t realizations = 0;  // 0 disables the Monte Carlo column
};

std::optional<CyclicClass> parse_cyclic_class(const std::string& name);
std::optional<BlockMode> parse_block_mode(const std::string& name);
std::string to_string(CyclicClass cls);
std::string to_string(BlockMode mode);

RunResult run_spacing2x2(const Spacing2x2Params& params, const CommonOptions& common);
RunResult run_spacing_cyclic(const SpacingCyclicParams& params, const CommonOptions& common);
RunResult run_walk(const WalkParams& params, const CommonOptions& common);
RunResult run_rmt_decay(const RmtDecayParams& params, const CommonOptions& common);

/// Re-runs the command recorded in a manifest.
RunResult replay_manifest(const nlohmann::json& manifest);

/// The run's manifest: command, parameters, seed, version, timestamps and
/// output list. Timestamps are supplied by the caller.
nlohmann::json make_manifest(const RunResult& result, const CommonOptions& common,
                             const std::string& started_at, const std::string& finished_at);

/// Writes every file plus manifest.json into `dir`. Either all files land
/// or none do; failures throw IoError.
void write_outputs(const std::filesystem::path& dir, const RunResult& result,
                   const nlohmann::json& manifest);

}  // namespace phrmt
