#include "sqbsm/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "sqbsm/ancilla.hpp"
#include "sqbsm/oracle.hpp"
#include "sqbsm/povm.hpp"

namespace sqbsm::cli {

namespace {

int resolution_for(const RunConfig& cfg, const std::string& command) {
  if (cfg.resolution) return *cfg.resolution;
  return command == "verify" ? kVerifyResolution : kDefaultResolution;
}

ClassifierConfig classifier_of(const RunConfig& cfg) { return ClassifierConfig{cfg.epsilon}; }

std::string emit_sweep(const RunConfig& cfg) {
  const auto grid = grid_of(cfg);
  SweepOptions opts;
  opts.phi = cfg.phi;
  opts.n_max = resolution_for(cfg, "sweep");
  opts.classifier = classifier_of(cfg);
  opts.prune_threshold = cfg.prune;
  const SweepResult result = sweep(cfg.dimension, grid, cfg.scheme, opts);
  if (cfg.format.value_or(Format::csv) == Format::csv) return sweep_csv(result);
  return sweep_json(result).dump(2) + "\n";
}

double patterns_r(const RunConfig& cfg) {
  if (!cfg.peak) return *cfg.r;
  SweepOptions opts;
  opts.phi = cfg.phi;
  opts.n_max = resolution_for(cfg, "patterns");
  opts.classifier = classifier_of(cfg);
  opts.prune_threshold = cfg.prune;
  const auto grid = grid_of(cfg);
  return sweep(cfg.dimension, grid, cfg.scheme, opts).peak().r;
}

std::string emit_patterns(const RunConfig& cfg) {
  const int n_max = resolution_for(cfg, "patterns");
  const auto classifier = classifier_of(cfg);
  std::vector<RankedPattern> ranked;
  switch (cfg.scheme) {
    case Scheme::squeezed: {
      const double r = patterns_r(cfg);
      const auto squeeze = SqueezeConfig::uniform(static_cast<std::size_t>(2 * cfg.dimension), r, cfg.phi);
      const Evaluation ev = evaluate(prepare_squeezed_inputs(cfg.dimension, n_max, cfg.prune), squeeze, classifier);
      ranked = rank_unique_patterns(ev.classification, cfg.limit);
      break;
    }
    case Scheme::ancilla:
      ranked = rank_unique_patterns(run_ancilla_bsm(cfg.dimension, n_max, classifier, cfg.prune).classification,
                                    cfg.limit);
      break;
    case Scheme::combined: {
      const double r = patterns_r(cfg);
      const auto res = run_combined_bsm(cfg.dimension, r, n_max, classifier, cfg.phi, cfg.prune);
      ranked = rank_unique_patterns(res.classification, cfg.limit);
      break;
    }
  }
  return patterns_json(ranked).dump(2) + "\n";
}

int write_output(const RunConfig& cfg, const std::string& text, std::ostream& out, std::ostream& err) {
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
    out.flush();
    return out ? kSuccess : kIoError;
  }
  std::ofstream file(cfg.output, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "error: cannot open " << cfg.output << " for writing\n";
    return kIoError;
  }
  file << text;
  file.close();
  if (!file) {
    err << "error: failed writing " << cfg.output << "\n";
    return kIoError;
  }
  return kSuccess;
}

}  // namespace

void validate(const RunConfig& cfg, const std::string& command) {
  const bool ancilla_like = cfg.scheme != Scheme::squeezed;
  if (cfg.dimension < 2) throw ConfigError("--dimension must be >= 2");
  if (cfg.dimension > 16) throw ConfigError("--dimension must be <= 16");
  if (ancilla_like && cfg.dimension < 3) throw ConfigError("ancilla and combined schemes need --dimension >= 3");
  if (ancilla_like && static_cast<std::size_t>(cfg.dimension * cfg.dimension + cfg.dimension) > kMaxModes) {
    throw ConfigError("ancilla and combined schemes support --dimension <= 5");
  }
  if (static_cast<std::size_t>(2 * cfg.dimension) > kMaxModes) throw ConfigError("--dimension must be <= " + std::to_string(kMaxModes / 2));
  const int n_max = resolution_for(cfg, command);
  if (n_max < 1 || n_max > kMaxOccupation) {
    throw ConfigError("--resolution must be in [1, " + std::to_string(kMaxOccupation) + "]");
  }
  if (!std::isfinite(cfg.phi)) throw ConfigError("--phi must be finite");
  if (!(cfg.epsilon > 0.0) || !std::isfinite(cfg.epsilon)) throw ConfigError("--epsilon must be positive");
  if (!(cfg.prune >= 0.0) || !std::isfinite(cfg.prune)) throw ConfigError("--prune must be non-negative");
  if (cfg.r && (!std::isfinite(*cfg.r) || *cfg.r < 0.0)) throw ConfigError("--r must be a finite value >= 0");
  const bool uses_grid = command == "sweep" || (command == "patterns" && cfg.peak);
  if (uses_grid && !cfg.r) {
    if (!std::isfinite(cfg.r_min) || !std::isfinite(cfg.r_max) || !std::isfinite(cfg.r_step)) {
      throw ConfigError("grid bounds must be finite");
    }
    if (cfg.r_min < 0.0) throw ConfigError("--r-min must be >= 0");
    if (cfg.r_min > cfg.r_max) throw ConfigError("--r-min must not exceed --r-max");
    if (!(cfg.r_step > 0.0)) throw ConfigError("--r-step must be positive");
  }
  if (command == "patterns") {
    if (cfg.limit < 1) throw ConfigError("--limit must be >= 1");
    if (cfg.format == Format::csv) throw ConfigError("patterns are emitted as JSON only");
    if (cfg.scheme != Scheme::ancilla && !cfg.r && !cfg.peak) throw ConfigError("patterns needs --r or --peak");
    if (cfg.r && cfg.peak) throw ConfigError("--r and --peak are mutually exclusive");
  }
  if (command == "verify") {
    if (cfg.scheme != Scheme::squeezed) throw ConfigError("verify covers the squeezed scheme only");
    if (n_max > kVerifyResolution) {
      throw ConfigError("verify needs --resolution <= " + std::to_string(kVerifyResolution));
    }
    if (n_max < 2) throw ConfigError("verify needs --resolution >= 2");
  }
}

std::vector<double> grid_of(const RunConfig& cfg) {
  if (cfg.r) return {*cfg.r};
  return make_grid(cfg.r_min, cfg.r_max, cfg.r_step);
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x == 0.0 ? 0.0 : x);
  return buf;
}

double round_emitted(double x) { return std::strtod(format_number(x).c_str(), nullptr); }

std::string sweep_csv(const SweepResult& result) {
  std::string text = "r,zeta_db,p_success\n";
  for (const auto& row : result.rows) {
    text += format_number(row.r) + "," + format_number(row.zeta_db) + "," + format_number(row.p_success) + "\n";
  }
  return text;
}

std::vector<SweepRow> parse_sweep_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "r,zeta_db,p_success") throw std::runtime_error("bad sweep CSV header");
  std::vector<SweepRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string cell;
    double v[3];
    for (int i = 0; i < 3; ++i) {
      if (!std::getline(fields, cell, ',')) throw std::runtime_error("short sweep CSV row: " + line);
      char* end = nullptr;
      v[i] = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str() || *end != '\0') throw std::runtime_error("bad number in sweep CSV: " + cell);
    }
    if (std::getline(fields, cell, ',')) throw std::runtime_error("long sweep CSV row: " + line);
    rows.push_back({v[0], v[1], v[2]});
  }
  return rows;
}

nlohmann::json sweep_json(const SweepResult& result) {
  using nlohmann::json;
  const auto& m = result.metadata;
  json rows = json::array();
  for (const auto& row : result.rows) {
    rows.push_back({{"r", round_emitted(row.r)},
                    {"zeta_db", round_emitted(row.zeta_db)},
                    {"p_success", round_emitted(row.p_success)}});
  }
  json doc = {{"metadata",
               {{"dimension", m.d},
                {"scheme", std::string(to_string(m.scheme))},
                {"resolution", m.n_max},
                {"phi", round_emitted(m.phi)},
                {"epsilon", round_emitted(m.epsilon)},
                {"points", m.points}}},
              {"rows", rows}};
  if (!result.rows.empty()) {
    const auto& p = result.peak();
    doc["peak"] = {{"r", round_emitted(p.r)},
                   {"zeta_db", round_emitted(p.zeta_db)},
                   {"p_success", round_emitted(p.p_success)}};
  }
  return doc;
}

nlohmann::json patterns_json(const std::vector<RankedPattern>& ranked) {
  using nlohmann::json;
  json out = json::array();
  for (const auto& e : ranked) {
    json counts = json::array();
    for (std::size_t i = 0; i < e.pattern.size(); ++i) counts.push_back(e.pattern[i]);
    out.push_back({{"amplitude_re", round_emitted(e.amplitude.real())},
                   {"amplitude_im", round_emitted(e.amplitude.imag())},
                   {"magnitude", round_emitted(std::abs(e.amplitude))},
                   {"pattern", counts},
                   {"unique_to", {{"l", e.owner.l}, {"m", e.owner.m}}}});
  }
  return out;
}

std::vector<VerifyCheck> verify_checks(const RunConfig& cfg) {
  const int d = cfg.dimension;
  const int n_max = resolution_for(cfg, "verify");
  const double r = cfg.r.value_or(0.0);
  const PovmHooks hooks{cfg.corrupt_lambda_sign};
  const double tight = r == 0.0 ? 1e-12 : 1e-8;

  std::vector<VerifyCheck> checks;
  ConsistencyOptions opts;
  opts.hooks = hooks;
  checks.push_back({"consistency", consistency_check(d, r, n_max, opts).max_deviation, tight});

  double two_mode = 0.0;
  for (int a = 0; a <= n_max; ++a) {
    for (int b = 0; b <= n_max; ++b) {
      const ComplexMatrix diff =
          two_mode_povm_element(a, b, r, r, n_max, hooks) - oracle::direct_two_mode_element(a, b, r, r, n_max);
      two_mode = std::max(two_mode, diff.cwiseAbs().maxCoeff());
    }
  }
  checks.push_back({"two_mode_element", two_mode, 1e-8});

  double single = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    const ComplexMatrix diff =
        single_mode_povm_element(n, r, n_max, hooks) - oracle::direct_single_mode_element(n, r, n_max);
    single = std::max(single, diff.cwiseAbs().maxCoeff());
  }
  checks.push_back({"single_mode_element", single, 1e-8});
  return checks;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bell-state measurement with pre-detection squeezing", "sqbsm"};
  app.set_config("--config", "", "INI file of option=value defaults; command-line flags win");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string scheme = "squeezed";
  std::string format;
  double r = 0.0;
  int resolution = kDefaultResolution;

  app.add_option("-d,--dimension", cfg.dimension, "Qudit dimension d")->capture_default_str();
  app.add_option("--scheme", scheme, "squeezed | ancilla | combined")
      ->check(CLI::IsMember({"squeezed", "ancilla", "combined"}))
      ->capture_default_str();
  app.add_option("--r-min", cfg.r_min, "First grid point")->capture_default_str();
  app.add_option("--r-max", cfg.r_max, "Last grid point (inclusive)")->capture_default_str();
  app.add_option("--r-step", cfg.r_step, "Grid spacing")->capture_default_str();
  auto* opt_r = app.add_option("--r", r, "Single squeezing strength (overrides the grid)");
  app.add_option("--phi", cfg.phi, "Squeezing phase")->capture_default_str();
  auto* opt_res = app.add_option("--resolution", resolution, "Detector resolution n_max (default 5, verify 3)");
  app.add_option("--epsilon", cfg.epsilon, "Uniqueness threshold on probabilities")->capture_default_str();
  app.add_option("--prune", cfg.prune, "Amplitude prune threshold")->capture_default_str();
  auto* opt_fmt =
      app.add_option("--format", format, "csv | json (patterns: json)")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("-o,--output", cfg.output, "Output file (default standard output)");

  auto* sweep_cmd = app.add_subcommand("sweep", "Success probability over a grid of r");
  auto* patterns_cmd = app.add_subcommand("patterns", "Unique click patterns ranked by amplitude");
  patterns_cmd->add_option("--limit", cfg.limit, "Number of patterns")->capture_default_str();
  patterns_cmd->add_flag("--peak", cfg.peak, "Use the grid's peak r");
  auto* verify_cmd = app.add_subcommand("verify", "Analytic POVM against direct simulation");
  verify_cmd->add_flag("--corrupt-lambda-sign", cfg.corrupt_lambda_sign)->group("");
  for (auto* sub : {sweep_cmd, patterns_cmd, verify_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  cfg.scheme = *parse_scheme(scheme);
  if (opt_r->count() > 0) cfg.r = r;
  if (opt_res->count() > 0) cfg.resolution = resolution;
  if (opt_fmt->count() > 0) cfg.format = format == "csv" ? Format::csv : Format::json;

  std::string command;
  if (sweep_cmd->parsed()) command = "sweep";
  if (patterns_cmd->parsed()) command = "patterns";
  if (verify_cmd->parsed()) command = "verify";

  try {
    validate(cfg, command);
    if (command == "verify") {
      if (cfg.format == Format::csv) throw ConfigError("verify reports as text or JSON");
      const auto checks = verify_checks(cfg);
      bool ok = true;
      std::string text;
      if (cfg.format == Format::json) {
        nlohmann::json report = nlohmann::json::array();
        for (const auto& c : checks) {
          report.push_back({{"check", c.name}, {"max_deviation", c.deviation}, {"threshold", c.threshold},
                            {"passed", c.passed()}});
        }
        text = report.dump(2) + "\n";
      } else {
        for (const auto& c : checks) {
          char line[160];
          std::snprintf(line, sizeof line, "%-20s max_deviation=%.3e threshold=%.0e %s\n", c.name.c_str(),
                        c.deviation, c.threshold, c.passed() ? "ok" : "FAILED");
          text += line;
        }
      }
      for (const auto& c : checks) ok = ok && c.passed();
      const int io = write_output(cfg, text, out, err);
      if (io != kSuccess) return io;
      return ok ? kSuccess : kVerificationFailed;
    }
    const std::string text = command == "sweep" ? emit_sweep(cfg) : emit_patterns(cfg);
    return write_output(cfg, text, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace sqbsm::cli
