// phrmt: experiment runs for pseudo-Hermitian random matrices.

#include <CLI11.hpp>

#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include "phrmt/experiments.hpp"

namespace {

using phrmt::CommonOptions;
using phrmt::RunResult;

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw phrmt::UsageError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void print_reports(const RunResult& result) {
  for (const auto& r : result.reports) {
    std::cout << result.command << " " << r.label << ": ";
    if (!r.report) {
      std::cout << (r.law.empty() ? "no closed law\n" : "no samples\n");
      continue;
    }
    std::cout << "KS " << r.report->ks_distance << " (n=" << r.report->n << ", threshold "
              << r.report->pass_threshold << ") "
              << (r.reference_only ? "reference" : (r.report->passed ? "pass" : "FAIL")) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-Hermitian random matrix experiments"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string out_dir = "out";
  bool assert_mode = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "RNG seed");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--threads", common.threads, "worker threads (0 = hardware)");
    sub->add_flag("--assert", assert_mode, "exit 4 when a goodness-of-fit check fails");
    sub->add_option("--bins", common.bins, "histogram bins")->check(CLI::PositiveNumber);
  };

  phrmt::Spacing2x2Params s2;
  auto* c_s2 = app.add_subcommand("spacing2x2", "2x2 family spacing histogram");
  c_s2->add_option("--family", s2.family, "F1..F5");
  c_s2->add_option("--sigma", s2.sigma, "parameter scale");
  c_s2->add_option("--epsilon", s2.epsilon, "F3 metric parameter");
  c_s2->add_option("--count", s2.count, "number of draws");
  c_s2->add_option("--ks-threshold", s2.ks_threshold, "KS pass threshold");
  add_common(c_s2);

  phrmt::SpacingCyclicParams sc;
  std::string cls_name = "all";
  std::string blocks_name = "none";
  auto* c_sc = app.add_subcommand("spacing_cyclic", "cyclic and block-cyclic spacing statistics");
  c_sc->add_option("--N,-N", sc.n, "matrix size or number of blocks");
  c_sc->add_option("--A,-A", sc.a, "ensemble weight A");
  c_sc->add_option("--count", sc.count, "realizations");
  c_sc->add_option("--class", cls_name, "cc|rc|generic|all");
  c_sc->add_option("--blocks", blocks_name, "none|gaussian|ising");
  c_sc->add_option("--ising-scale", sc.ising_scale, "std. dev. of Ising block parameters");
  c_sc->add_option("--ks-threshold", sc.ks_threshold, "KS pass threshold");
  add_common(c_sc);

  phrmt::WalkParams wp;
  std::string config_path;
  std::optional<long> sites;
  std::optional<double> w, p;
  std::optional<long> start;
  auto* c_walk = app.add_subcommand("walk", "entropy and relaxation of a circulant random walk");
  c_walk->add_option("--config", config_path, "key = value walk configuration file");
  c_walk->add_option("--sites", sites, "number of sites");
  c_walk->add_option("--w", w, "jump probability");
  c_walk->add_option("--p", p, "bias");
  c_walk->add_option("--start", start, "1-based start site");
  c_walk->add_option("--t-max", wp.t_max, "last time step");
  add_common(c_walk);

  phrmt::RmtDecayParams rd;
  auto* c_rd = app.add_subcommand("rmt_decay", "ensemble-averaged relaxation law");
  c_rd->add_option("--t-max", rd.t_max, "last time step");
  c_rd->add_option("--N,-N", rd.n_values, "lattice sizes (first one drives Monte Carlo)");
  c_rd->add_option("--realizations", rd.realizations, "Monte Carlo realizations (0 = off)");
  add_common(c_rd);

  std::string manifest_path;
  auto* c_replay = app.add_subcommand("replay", "re-run the command recorded in a manifest");
  c_replay->add_option("manifest", manifest_path, "manifest.json")->required();
  c_replay->add_option("--out", out_dir, "output directory");
  c_replay->add_option("--threads", common.threads, "worker threads (0 = hardware)");
  c_replay->add_flag("--assert", assert_mode, "exit 4 when a goodness-of-fit check fails");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::string started = utc_now();
    RunResult result;
    if (*c_s2) {
      result = phrmt::run_spacing2x2(s2, common);
    } else if (*c_sc) {
      const auto cls = phrmt::parse_cyclic_class(cls_name);
      if (!cls) throw phrmt::UsageError("unknown class '" + cls_name + "'");
      const auto blocks = phrmt::parse_block_mode(blocks_name);
      if (!blocks) throw phrmt::UsageError("unknown blocks '" + blocks_name + "'");
      sc.cls = *cls;
      sc.blocks = *blocks;
      result = phrmt::run_spacing_cyclic(sc, common);
    } else if (*c_walk) {
      if (!config_path.empty()) wp.config = phrmt::parse_walk_config(read_file(config_path));
      if (sites) wp.config.sites = *sites;
      if (w || p) wp.config.row.clear();
      if (w) wp.config.w = *w;
      if (p) wp.config.p = *p;
      if (start) wp.config.start = *start;
      result = phrmt::run_walk(wp, common);
    } else if (*c_rd) {
      result = phrmt::run_rmt_decay(rd, common);
    } else {
      nlohmann::json manifest;
      try {
        manifest = nlohmann::json::parse(read_file(manifest_path));
      } catch (const nlohmann::json::exception& e) {
        throw phrmt::UsageError(std::string("manifest: ") + e.what());
      }
      result = phrmt::replay_manifest(manifest);
      common.seed = manifest.at("seed").get<std::uint64_t>();
      common.bins = manifest.at("parameters").at("bins").get<std::size_t>();
    }
    const auto manifest = phrmt::make_manifest(result, common, started, utc_now());
    phrmt::write_outputs(out_dir, result, manifest);
    print_reports(result);
    if (assert_mode && !result.passed()) return 4;
    return 0;
  } catch (const phrmt::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const phrmt::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
}
