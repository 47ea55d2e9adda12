#pragma once

// Sparse multi-mode bosonic states in a per-mode truncated Fock basis.

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace sqbsm {

using Amplitude = std::complex<double>;

inline constexpr std::size_t kMaxModes = 32;
inline constexpr int kMaxOccupation = 15;
inline constexpr double kDefaultPruneThreshold = 1e-12;

/// Photon counts per mode, packed four bits per mode.
///
/// Mode 0 occupies the most significant nibble, so the defaulted ordering is
/// lexicographic in the counts for tuples of equal length.
class OccupationTuple {
 public:
  OccupationTuple() = default;
  explicit OccupationTuple(std::size_t modes);
  OccupationTuple(std::initializer_list<int> counts);

  static OccupationTuple from_counts(std::span<const int> counts);

  std::size_t size() const { return size_; }
  int operator[](std::size_t mode) const {
    return static_cast<int>((words_[mode >> 4] >> shift(mode)) & 0xFu);
  }
  void set(std::size_t mode, int count);
  int total() const;
  std::vector<int> counts() const;

  /// Tuple of this followed by `tail`.
  OccupationTuple concat(const OccupationTuple& tail) const;
  /// The first `modes` entries.
  OccupationTuple head(std::size_t modes) const;

  std::string to_string() const;

  auto operator<=>(const OccupationTuple&) const = default;
  bool operator==(const OccupationTuple&) const = default;

  std::size_t hash() const;

 private:
  static unsigned shift(std::size_t mode) { return static_cast<unsigned>((15 - (mode & 15)) * 4); }

  std::array<std::uint64_t, 2> words_{};
  std::uint8_t size_ = 0;
};

struct OccupationHash {
  std::size_t operator()(const OccupationTuple& t) const { return t.hash(); }
};

/// Immutable sparse state: occupation tuples mapped to complex amplitudes,
/// stored sorted by tuple.
class FockVector {
 public:
  struct Entry {
    OccupationTuple occupation;
    Amplitude amplitude;
  };

  FockVector(std::size_t modes, int cutoff);

  /// Sorts the entries, sums duplicates and validates them against the
  /// mode count and cutoff. Throws std::domain_error on violations.
  static FockVector from_entries(std::size_t modes, int cutoff, std::vector<Entry> entries);

  std::size_t modes() const { return modes_; }
  int cutoff() const { return cutoff_; }
  std::span<const Entry> entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  Amplitude amplitude(const OccupationTuple& occupation) const;
  double squared_norm() const;

 private:
  std::size_t modes_;
  int cutoff_;
  std::vector<Entry> entries_;
};

/// Hash-map accumulator used while a new state is being assembled.
class FockAccumulator {
 public:
  FockAccumulator(std::size_t modes, int cutoff) : modes_(modes), cutoff_(cutoff) {}

  void add(const OccupationTuple& occupation, Amplitude amplitude) { terms_[occupation] += amplitude; }
  void reserve(std::size_t n) { terms_.reserve(n); }

  FockVector finish() &&;

 private:
  std::size_t modes_;
  int cutoff_;
  std::unordered_map<OccupationTuple, Amplitude, OccupationHash> terms_;
};

struct PruneResult {
  FockVector state;
  double removed_mass;
};

FockVector basis_state(const OccupationTuple& pattern, int cutoff);
Amplitude inner_product(const FockVector& a, const FockVector& b);
FockVector tensor_product(const FockVector& a, const FockVector& b);
PruneResult prune(const FockVector& a, double threshold = kDefaultPruneThreshold);

}  // namespace sqbsm
