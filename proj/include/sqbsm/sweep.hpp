#pragma once

// Success probability as a function of uniform squeezing strength.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sqbsm/engine.hpp"

namespace sqbsm {

enum class Scheme { squeezed, ancilla, combined };

std::string_view to_string(Scheme scheme);
std::optional<Scheme> parse_scheme(std::string_view name);

struct SweepRow {
  double r;
  double zeta_db;
  double p_success;
};

struct SweepMetadata {
  int d = 0;
  int n_max = 0;
  double phi = 0.0;
  double epsilon = 0.0;
  Scheme scheme = Scheme::squeezed;
  std::size_t points = 0;
};

struct SweepResult {
  SweepMetadata metadata;
  std::vector<SweepRow> rows;  // ascending r

  /// Argmax row (first one on ties).
  const SweepRow& peak() const;
};

/// r_min, r_min + step, ... up to r_max (inclusive, with a relative slack of
/// 1e-9 steps). Values are rounded to 12 significant digits.
std::vector<double> make_grid(double r_min, double r_max, double r_step);

/// 0.02, 0.04, ..., 1.00
std::vector<double> default_grid();

struct SweepOptions {
  double phi = 0.0;
  int n_max = 5;
  ClassifierConfig classifier{};
  double prune_threshold = kDefaultPruneThreshold;
  /// 0 selects default_thread_count().
  unsigned threads = 0;
};

/// Thread count from SQBSM_THREADS, else the hardware concurrency.
unsigned default_thread_count();

SweepResult sweep(int d, std::span<const double> grid, Scheme scheme, const SweepOptions& options = {});

}  // namespace sqbsm
