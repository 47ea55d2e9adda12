#pragma once

// Front end for `sqbsm sweep | patterns | verify`. The executable in tools/
// only forwards to run().

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "sqbsm/engine.hpp"
#include "sqbsm/sweep.hpp"

namespace sqbsm::cli {

enum ExitCode : int {
  kSuccess = 0,
  kIoError = 1,
  kConfigError = 2,
  kVerificationFailed = 3,
};

enum class Format { csv, json };

struct RunConfig {
  int dimension = 3;
  Scheme scheme = Scheme::squeezed;
  double r_min = 0.02;
  double r_max = 1.0;
  double r_step = 0.02;
  std::optional<double> r;
  double phi = 0.0;
  std::optional<int> resolution;
  double epsilon = 1e-10;
  double prune = kDefaultPruneThreshold;
  std::optional<Format> format;
  std::string output;
  std::size_t limit = 20;
  bool peak = false;
  bool corrupt_lambda_sign = false;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kDefaultResolution = 5;
inline constexpr int kVerifyResolution = 3;

/// Throws ConfigError if `cfg` cannot run `command`.
void validate(const RunConfig& cfg, const std::string& command);

std::vector<double> grid_of(const RunConfig& cfg);

/// %.12g, the precision of every emitted number.
std::string format_number(double x);
/// x rounded to the emitted precision.
double round_emitted(double x);

std::string sweep_csv(const SweepResult& result);
/// Parses the rows of sweep_csv() output; throws std::runtime_error on a
/// malformed header or row.
std::vector<SweepRow> parse_sweep_csv(const std::string& text);
nlohmann::json sweep_json(const SweepResult& result);
nlohmann::json patterns_json(const std::vector<RankedPattern>& ranked);

struct VerifyCheck {
  std::string name;
  double deviation;
  double threshold;
  bool passed() const { return deviation <= threshold; }
};

std::vector<VerifyCheck> verify_checks(const RunConfig& cfg);

/// Full command line, argv[0] included.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sqbsm::cli
