#include "phrmt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "phrmt/blockcirc.hpp"
#include "phrmt/circulant.hpp"
#include "phrmt/pseudo2x2.hpp"

namespace phrmt {
namespace {

using nlohmann::json;

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::vector<std::string>& header) { row_strings(header); }

  void row(const std::vector<double>& values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(num(v));
    row_strings(cells);
  }

  std::string str() const { return out_.str(); }

 private:
  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }
  std::ostringstream out_;
};

json report_json(const LabeledReport& r) {
  json j;
  j["label"] = r.label;
  j["law"] = r.law.empty() ? json(nullptr) : json(r.law);
  j["reference_only"] = r.reference_only;
  if (r.report) {
    j["ks_distance"] = r.report->ks_distance;
    j["n"] = r.report->n;
    j["pass_threshold"] = r.report->pass_threshold;
    j["passed"] = r.report->passed;
  } else {
    j["ks_distance"] = nullptr;
    j["n"] = 0;
    j["pass_threshold"] = nullptr;
    j["passed"] = nullptr;
  }
  return j;
}

OutputFile gof_file(const RunResult& result) {
  json j;
  j["command"] = result.command;
  j["reports"] = json::array();
  for (const auto& r : result.reports) j["reports"].push_back(report_json(r));
  return {"gof_report.json", j.dump(2) + "\n"};
}

/// Histogram CSV with an optional analytic density column.
std::string density_csv(const std::vector<double>& sample, const std::vector<double>& edges,
                        const std::function<double(double)>* analytic) {
  const Histogram h = histogram(sample, edges);
  const std::vector<double> density = h.density();
  std::vector<std::string> header{"bin_center", "empirical_density"};
  if (analytic) header.push_back("analytic_density");
  CsvWriter csv(header);
  for (std::size_t b = 0; b < h.bins(); ++b) {
    std::vector<double> row{h.center(b), density[b]};
    if (analytic) row.push_back((*analytic)(h.center(b)));
    csv.row(row);
  }
  return csv.str();
}

void require(bool ok, const std::string& message) {
  if (!ok) throw UsageError(message);
}

}  // namespace

bool RunResult::passed() const {
  return std::all_of(reports.begin(), reports.end(), [](const LabeledReport& r) {
    return r.reference_only || !r.report || r.report->passed;
  });
}

std::optional<CyclicClass> parse_cyclic_class(const std::string& name) {
  if (name == "cc") return CyclicClass::cc;
  if (name == "rc") return CyclicClass::rc;
  if (name == "generic") return CyclicClass::generic;
  if (name == "all") return CyclicClass::all;
  return std::nullopt;
}

std::optional<BlockMode> parse_block_mode(const std::string& name) {
  if (name == "none") return BlockMode::none;
  if (name == "gaussian") return BlockMode::gaussian;
  if (name == "ising") return BlockMode::ising;
  return std::nullopt;
}

std::string to_string(CyclicClass cls) {
  switch (cls) {
    case CyclicClass::cc: return "cc";
    case CyclicClass::rc: return "rc";
    case CyclicClass::generic: return "generic";
    case CyclicClass::all: return "all";
  }
  return "all";
}

std::string to_string(BlockMode mode) {
  switch (mode) {
    case BlockMode::none: return "none";
    case BlockMode::gaussian: return "gaussian";
    case BlockMode::ising: return "ising";
  }
  return "none";
}

// ---------------------------------------------------------------- spacing2x2

RunResult run_spacing2x2(const Spacing2x2Params& params, const CommonOptions& common) {
  const auto tag = parse_family(params.family);
  require(tag.has_value(), "unknown family '" + params.family + "' (expected F1..F5)");
  require(params.count >= 1, "count must be >= 1");
  require(params.sigma > 0.0, "sigma must be positive");
  require(params.epsilon > 0.0, "epsilon must be positive");
  require(common.bins >= 1, "bins must be >= 1");
  const Family2x2 family{*tag, params.epsilon};

  RunResult result;
  result.command = "spacing2x2";
  result.parameters = {{"family", std::string(to_string(*tag))},
                       {"sigma", params.sigma},
                       {"epsilon", params.epsilon},
                       {"count", params.count},
                       {"bins", common.bins}};
  if (params.ks_threshold) result.parameters["ks_threshold"] = *params.ks_threshold;

  const auto edges = uniform_edges(0.0, 5.0 * params.sigma, common.bins);
  const std::string stem = "spacing2x2_" + std::string(to_string(*tag));
  if (*tag == Family2x2Tag::F1_antidiag_imag) {
    F1Spacings s = spacing_samples_f1(params.count, params.sigma, common.seed, common.threads);
    auto& real = s.real_sector.values;
    std::sort(real.begin(), real.end());
    const double sigma = params.sigma;
    const std::function<double(double)> law = [sigma](double x) { return spacing_pdf_f1(x, sigma); };
    result.files.push_back({stem + ".csv", density_csv(real, edges, &law)});
    LabeledReport rep{"real", "bessel_k0", std::nullopt, false};
    if (!real.empty()) {
      rep.report = ks_statistic(real, [sigma](double x) { return spacing_cdf_f1(x, sigma); },
                                params.ks_threshold.value_or(0.01));
    }
    result.reports.push_back(rep);
    // The conjugate-pair sector has no closed law; keep its histogram.
    auto& cc = s.cc_sector.values;
    std::sort(cc.begin(), cc.end());
    result.files.push_back({stem + "_cc_sector.csv", density_csv(cc, edges, nullptr)});
  } else {
    SpacingSample s =
        spacing_samples_family(family, params.count, params.sigma, common.seed, common.threads);
    std::sort(s.values.begin(), s.values.end());
    result.files.push_back({stem + ".csv", density_csv(s.values, edges, nullptr)});
    result.reports.push_back({"all", "", std::nullopt, false});
  }
  result.files.push_back(gof_file(result));
  return result;
}

// ------------------------------------------------------------ spacing_cyclic

RunResult run_spacing_cyclic(const SpacingCyclicParams& params, const CommonOptions& common) {
  require(params.n >= 3, "N must be >= 3");
  require(params.count >= 1, "count must be >= 1");
  require(params.a > 0.0, "A must be positive");
  require(common.bins >= 1, "bins must be >= 1");
  require(params.ising_scale > 0.0, "ising scale must be positive");
  if (params.blocks == BlockMode::none && params.n == 3) {
    require(params.cls != CyclicClass::generic, "no generic pairs at N=3");
  }

  RunResult result;
  result.command = "spacing_cyclic";
  result.parameters = {{"N", params.n},
                       {"A", params.a},
                       {"count", params.count},
                       {"class", to_string(params.cls)},
                       {"blocks", to_string(params.blocks)},
                       {"ising_scale", params.ising_scale},
                       {"bins", common.bins}};
  if (params.ks_threshold) result.parameters["ks_threshold"] = *params.ks_threshold;

  SpacingClasses classes;
  if (params.blocks == BlockMode::none) {
    classes = cyclic_spacing_ensemble(params.n, params.a, params.count, common.seed, common.threads);
  } else {
    BlockEnsembleOptions opts;
    opts.kind = params.blocks == BlockMode::gaussian ? BlockKind::gaussian : BlockKind::ising;
    opts.ising_scale = params.ising_scale;
    classes = block_spacing_ensemble(params.n, params.count, common.seed, common.threads, opts);
  }

  struct ClassSpec {
    CyclicClass cls;
    SpacingSample* sample;
    std::string law;
    std::function<double(double)> pdf;
    std::function<double(double)> cdf;
    double threshold;
    bool reference_only;
  };
  const bool scalar = params.blocks == BlockMode::none;
  const bool ising = params.blocks == BlockMode::ising;
  const double block_threshold = 0.02;
  std::vector<ClassSpec> specs{
      {CyclicClass::cc, &classes.cc, "gaussian_cc", pdf_cc, cdf_cc,
       scalar ? 0.01 : (ising ? 0.05 : block_threshold), false},
      {CyclicClass::rc, &classes.rc, "rc_bessel_i0", pdf_rc, cdf_rc,
       scalar ? 0.015 : block_threshold, ising},
      {CyclicClass::generic, &classes.generic, "rayleigh", pdf_generic, cdf_generic,
       scalar ? 0.015 : block_threshold, ising},
  };

  const auto edges = uniform_edges(0.0, 4.0, common.bins);
  for (auto& spec : specs) {
    if (params.cls != CyclicClass::all && params.cls != spec.cls) continue;
    const std::string label = to_string(spec.cls);
    LabeledReport rep{label, spec.law, std::nullopt, spec.reference_only};
    if (spec.sample->values.empty()) {
      result.reports.push_back(rep);
      continue;
    }
    SpacingSample normalized = normalize_unit_mean(std::move(*spec.sample));
    auto& values = normalized.values;
    std::sort(values.begin(), values.end());
    rep.report = ks_statistic(values, spec.cdf, params.ks_threshold.value_or(spec.threshold));
    result.reports.push_back(rep);
    result.files.push_back({"spacing_" + label + ".csv", density_csv(values, edges, &spec.pdf)});
  }
  result.files.push_back(gof_file(result));
  return result;
}

// ---------------------------------------------------------------------- walk

WalkConfigSpec parse_walk_config(const std::string& text) {
  WalkConfigSpec spec;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  auto number = [&](const std::string& value, int at) {
    try {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      return v;
    } catch (const std::exception&) {
      throw UsageError("config line " + std::to_string(at) + ": not a number: '" + value + "'");
    }
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "sites") {
      spec.sites = static_cast<long>(number(value, lineno));
    } else if (key == "w") {
      spec.w = number(value, lineno);
    } else if (key == "p") {
      spec.p = number(value, lineno);
    } else if (key == "start") {
      spec.start = static_cast<long>(number(value, lineno));
    } else if (key == "row") {
      std::istringstream items(value);
      std::string item;
      while (items >> item) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) {
          throw UsageError("config line " + std::to_string(lineno) + ": row entries are k:value");
        }
        spec.row.emplace_back(static_cast<long>(number(item.substr(0, colon), lineno)),
                              number(item.substr(colon + 1), lineno));
      }
    } else {
      throw UsageError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
  return spec;
}

WalkConfig build_walk_config(const WalkConfigSpec& spec) {
  require(spec.sites.has_value(), "walk config: 'sites' is required");
  const long sites = *spec.sites;
  require(sites >= 2, "walk config: sites >= 2 violated");
  require(spec.start >= 1 && spec.start <= sites, "walk config: start must lie in 1..sites");
  const bool has_row = !spec.row.empty();
  const bool has_wp = spec.w.has_value() || spec.p.has_value();
  require(has_row != has_wp, "walk config: give either (w, p) or row, not both or neither");
  try {
    if (has_wp) {
      require(spec.w.has_value() && spec.p.has_value(), "walk config: both w and p are required");
      return WalkConfig::biased(sites, *spec.w, *spec.p);
    }
    RealVector row = RealVector::Zero(sites);
    for (const auto& [k, v] : spec.row) {
      require(k >= 1 && k <= sites, "walk config: row index " + std::to_string(k) +
                                        " outside 1.." + std::to_string(sites));
      row[k - 1] += v;
    }
    return WalkConfig::general(std::move(row));
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("walk config: ") + e.what());
  }
}

RunResult run_walk(const WalkParams& params, const CommonOptions& common) {
  require(params.t_max >= 0, "t_max must be >= 0");
  const WalkConfig cfg = build_walk_config(params.config);
  RunResult result;
  result.command = "walk";
  json row = json::array();
  for (Eigen::Index k = 0; k < cfg.sites(); ++k) row.push_back(cfg.hop_row()[k]);
  result.parameters = {{"sites", cfg.sites()},
                       {"hop_row", row},
                       {"start", params.config.start},
                       {"t_max", params.t_max},
                       {"bins", common.bins}};

  const WalkState p0 = delta_state(cfg.sites(), params.config.start - 1);
  const double uniform = 1.0 / static_cast<double>(cfg.sites());
  CsvWriter csv({"t", "entropy_kB", "max_abs_deviation"});
  for (std::int64_t t = 0; t <= params.t_max; ++t) {
    const WalkState s = evolve_spectral(cfg, p0, t);
    const double dev = (s.probs.array() - uniform).abs().maxCoeff();
    csv.row({static_cast<double>(t), entropy(s), dev});
  }
  result.files.push_back({"walk.csv", csv.str()});
  return result;
}

// ----------------------------------------------------------------- rmt_decay

RunResult run_rmt_decay(const RmtDecayParams& params, const CommonOptions& common) {
  require(params.t_max >= 1, "t_max must be >= 1");
  require(!params.n_values.empty(), "at least one N is required");
  for (long n : params.n_values) require(n >= 3, "every N must be >= 3");

  RunResult result;
  result.command = "rmt_decay";
  result.parameters = {{"t_max", params.t_max},
                       {"N", params.n_values},
                       {"realizations", params.realizations},
                       {"bins", common.bins}};

  const bool mc = params.realizations > 0;
  std::vector<std::string> header{"t", "closed_form", "asymptotic", "percent_difference"};
  if (mc) {
    header.push_back("monte_carlo");
    header.push_back("monte_carlo_stderr");
  }
  CsvWriter main(header);
  std::vector<std::string> by_n_header{"t"};
  for (long n : params.n_values) by_n_header.push_back("average_N" + std::to_string(n));
  CsvWriter by_n(by_n_header);

  const long mc_n = params.n_values.front();
  for (std::int64_t t = 0; t <= params.t_max; ++t) {
    const double closed = rmt_decay_closed_form(t, mc_n);
    const double asym = rmt_decay_asymptotic(t);
    std::vector<double> row{static_cast<double>(t), closed, asym,
                            100.0 * std::abs(closed - asym) / closed};
    if (mc) {
      // Every t gets its own stream family so columns stay independent.
      const MonteCarloEstimate est = rmt_decay_monte_carlo(
          mc_n, t, params.realizations, common.seed + static_cast<std::uint64_t>(t) * 0x9E3779B97F4A7C15ull,
          common.threads);
      row.push_back(est.mean);
      row.push_back(est.standard_error);
    }
    main.row(row);
    std::vector<double> avg{static_cast<double>(t)};
    for (long n : params.n_values) avg.push_back(rmt_decay_average(t, n));
    by_n.row(avg);
  }
  result.files.push_back({"rmt_decay.csv", main.str()});
  result.files.push_back({"rmt_decay_by_n.csv", by_n.str()});
  return result;
}

// -------------------------------------------------------------------- replay

RunResult replay_manifest(const json& manifest) {
  try {
    const std::string command = manifest.at("command").get<std::string>();
    const json& p = manifest.at("parameters");
    CommonOptions common;
    common.seed = manifest.at("seed").get<std::uint64_t>();
    common.bins = p.at("bins").get<std::size_t>();
    if (command == "spacing2x2") {
      Spacing2x2Params sp;
      sp.family = p.at("family").get<std::string>();
      sp.sigma = p.at("sigma").get<double>();
      sp.epsilon = p.at("epsilon").get<double>();
      sp.count = p.at("count").get<std::size_t>();
      if (p.contains("ks_threshold")) sp.ks_threshold = p.at("ks_threshold").get<double>();
      return run_spacing2x2(sp, common);
    }
    if (command == "spacing_cyclic") {
      SpacingCyclicParams sp;
      sp.n = p.at("N").get<long>();
      sp.a = p.at("A").get<double>();
      sp.count = p.at("count").get<std::size_t>();
      const auto cls = parse_cyclic_class(p.at("class").get<std::string>());
      const auto blocks = parse_block_mode(p.at("blocks").get<std::string>());
      require(cls && blocks, "manifest: bad class or blocks");
      sp.cls = *cls;
      sp.blocks = *blocks;
      sp.ising_scale = p.at("ising_scale").get<double>();
      if (p.contains("ks_threshold")) sp.ks_threshold = p.at("ks_threshold").get<double>();
      return run_spacing_cyclic(sp, common);
    }
    if (command == "walk") {
      WalkParams wp;
      const auto row = p.at("hop_row").get<std::vector<double>>();
      wp.config.sites = static_cast<long>(row.size());
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k] != 0.0) wp.config.row.emplace_back(static_cast<long>(k + 1), row[k]);
      }
      wp.config.start = p.at("start").get<long>();
      wp.t_max = p.at("t_max").get<std::int64_t>();
      return run_walk(wp, common);
    }
    if (command == "rmt_decay") {
      RmtDecayParams rp;
      rp.t_max = p.at("t_max").get<std::int64_t>();
      rp.n_values = p.at("N").get<std::vector<long>>();
      rp.realizations = p.at("realizations").get<std::size_t>();
      return run_rmt_decay(rp, common);
    }
    throw UsageError("manifest: unknown command '" + command + "'");
  } catch (const json::exception& e) {
    throw UsageError(std::string("manifest: ") + e.what());
  }
}

json make_manifest(const RunResult& result, const CommonOptions& common,
                   const std::string& started_at, const std::string& finished_at) {
  json outputs = json::array();
  for (const auto& f : result.files) outputs.push_back(f.name);
  return {{"command", result.command},       {"parameters", result.parameters},
          {"seed", common.seed},             {"threads", common.threads},
          {"artifact_version", kArtifactVersion}, {"started_at", started_at},
          {"finished_at", finished_at},      {"outputs", outputs}};
}

void write_outputs(const std::filesystem::path& dir, const RunResult& result,
                   const json& manifest) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "'");
  }
  std::vector<OutputFile> files = result.files;
  files.push_back({"manifest.json", manifest.dump(2) + "\n"});

  std::vector<fs::path> staged;
  auto discard = [&] {
    for (const auto& p : staged) fs::remove(p, ec);
  };
  for (const auto& f : files) {
    const fs::path tmp = dir / ("." + f.name + ".tmp");
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (out) staged.push_back(tmp);
    out << f.content;
    out.close();
    if (!out) {
      discard();
      throw IoError("cannot write '" + (dir / f.name).string() + "'");
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    fs::rename(staged[i], dir / files[i].name, ec);
    if (ec) {
      for (std::size_t k = 0; k < i; ++k) fs::remove(dir / files[k].name, ec);
      discard();
      throw IoError("cannot move output into place in '" + dir.string() + "'");
    }
  }
}

}  // namespace phrmt
