#pragma once

// Bell-state measurement pipeline: click statistics, uniqueness
// classification and success probability.

#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "sqbsm/bell.hpp"
#include "sqbsm/circuit.hpp"
#include "sqbsm/fock.hpp"

namespace sqbsm {

using ClickPattern = OccupationTuple;

struct ClassifierConfig {
  /// A pattern is "present" under an input when its probability exceeds this.
  double epsilon = 1e-10;

  void validate() const;
};

/// Detection statistics of one input Bell state.
struct ClickDistribution {
  struct Entry {
    ClickPattern pattern;
    Amplitude amplitude;
    double probability() const { return std::norm(amplitude); }
  };

  BellIndex input;
  std::vector<Entry> entries;  // sorted by pattern
  /// Probability not represented by any resolvable pattern (never renormalized).
  double leaked_mass = 0.0;

  double probability(const ClickPattern& pattern) const;
  double total_probability() const;
};

/// Reads the click statistics off a detection-mode state. Mass missing from
/// `state` relative to a normalized input is reported as leaked.
ClickDistribution click_distribution(const FockVector& state, const BellIndex& input);

/// Which input each observed pattern is unique to.
class Classification {
 public:
  static constexpr int kAmbiguous = -1;

  struct Slot {
    int owner;  // Bell ordinal, or kAmbiguous
    double probability;
    Amplitude amplitude;
  };

  struct UniquePattern {
    ClickPattern pattern;
    BellIndex owner;
    Amplitude amplitude;
    double probability;
  };

  Classification(int d, ClassifierConfig cfg);

  /// Records `amplitude` of `pattern` under the input with the given ordinal.
  /// Calls for one input must not repeat a pattern.
  void observe(int ordinal, const ClickPattern& pattern, Amplitude amplitude) {
    const double p = std::norm(amplitude);
    if (!(p > cfg_.epsilon)) return;
    auto [it, inserted] = slots_.try_emplace(pattern, Slot{ordinal, p, amplitude});
    if (!inserted && it->second.owner != ordinal) it->second.owner = kAmbiguous;
  }
  void reserve(std::size_t n) { slots_.reserve(n); }

  int dimension() const { return d_; }
  const ClassifierConfig& config() const { return cfg_; }
  std::size_t size() const { return slots_.size(); }

  /// nullopt when the pattern is ambiguous or was never present.
  std::optional<BellIndex> unique_to(const ClickPattern& pattern) const;
  bool is_ambiguous(const ClickPattern& pattern) const;

  /// Sum over unique patterns of their probability under their owner.
  double unique_mass() const;
  /// Unique patterns sorted by pattern.
  std::vector<UniquePattern> unique_patterns() const;

 private:
  int d_;
  ClassifierConfig cfg_;
  std::unordered_map<ClickPattern, Slot, OccupationHash> slots_;
};

Classification classify_patterns(std::span<const ClickDistribution> dists, const ClassifierConfig& cfg);

/// (1/d^2) sum_s sum_{p unique to s} prob_s(p)
double success_probability(std::span<const ClickDistribution> dists, const Classification& classification);

/// Per-input detection-mode states before squeezing, one per Bell ordinal.
struct PreparedInputs {
  int d = 0;
  int n_max = 0;
  std::vector<FockVector> states;
};

/// Bell basis sent through the pairwise beam splitters.
PreparedInputs prepare_squeezed_inputs(int d, int n_max, double prune_threshold = kDefaultPruneThreshold);

struct Evaluation {
  Classification classification;
  double success_probability;
  /// Total probability over resolvable patterns, per Bell ordinal.
  std::vector<double> retained_mass;
};

/// Squeezes every prepared state with `cfg` and classifies the patterns
/// without materializing the squeezed states.
Evaluation evaluate(const PreparedInputs& inputs, const SqueezeConfig& cfg, const ClassifierConfig& classifier,
                    SqueezeMatrixCache* cache = nullptr);

struct BsmResult {
  std::vector<ClickDistribution> distributions;
  Classification classification;
  double success_probability;
};

/// Bell basis -> pairwise beam splitters -> squeezers -> detection.
BsmResult run_squeezed_bsm(int d, const SqueezeConfig& cfg, int n_max, const ClassifierConfig& classifier = {},
                           double prune_threshold = kDefaultPruneThreshold);

struct RankedPattern {
  Amplitude amplitude;
  ClickPattern pattern;
  BellIndex owner;
};

/// Orders unique patterns by magnitude (descending, quantized to 1e-12) then
/// lexicographically, keeping the first `limit`.
std::vector<RankedPattern> rank_unique_patterns(const Classification& classification, std::size_t limit);

std::vector<RankedPattern> top_unique_patterns(int d, const SqueezeConfig& cfg, int n_max, std::size_t limit,
                                               const ClassifierConfig& classifier = {});

}  // namespace sqbsm
