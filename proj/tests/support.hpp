#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "sqbsm/circuit.hpp"
#include "sqbsm/fock.hpp"

namespace sqbsm::testing {

inline std::mt19937_64 make_rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eedULL * 7919 + salt); }

/// Random state with up to `terms` entries; normalized unless `normalize` is false.
inline FockVector random_state(std::size_t modes, int cutoff, std::size_t terms, std::mt19937_64& g,
                               bool normalize = true) {
  std::uniform_int_distribution<int> occ(0, cutoff);
  std::normal_distribution<double> gauss;
  std::vector<FockVector::Entry> entries;
  for (std::size_t t = 0; t < terms; ++t) {
    OccupationTuple o(modes);
    for (std::size_t i = 0; i < modes; ++i) o.set(i, occ(g));
    entries.push_back({o, {gauss(g), gauss(g)}});
  }
  auto s = FockVector::from_entries(modes, cutoff, std::move(entries));
  if (!normalize) return s;
  const double n = std::sqrt(s.squared_norm());
  std::vector<FockVector::Entry> scaled(s.entries().begin(), s.entries().end());
  for (auto& e : scaled) e.amplitude /= n;
  return FockVector::from_entries(modes, cutoff, std::move(scaled));
}

/// Random state with exactly `photons` photons spread over the modes.
inline FockVector random_fixed_photon_state(std::size_t modes, int cutoff, int photons, std::size_t terms,
                                            std::mt19937_64& g) {
  std::uniform_int_distribution<std::size_t> pick(0, modes - 1);
  std::normal_distribution<double> gauss;
  std::vector<FockVector::Entry> entries;
  while (entries.size() < terms) {
    OccupationTuple o(modes);
    bool ok = true;
    for (int p = 0; p < photons; ++p) {
      const auto m = pick(g);
      if (o[m] == cutoff) {
        ok = false;
        break;
      }
      o.set(m, o[m] + 1);
    }
    if (ok) entries.push_back({o, {gauss(g), gauss(g)}});
  }
  auto s = FockVector::from_entries(modes, cutoff, std::move(entries));
  const double n = std::sqrt(s.squared_norm());
  std::vector<FockVector::Entry> scaled(s.entries().begin(), s.entries().end());
  for (auto& e : scaled) e.amplitude /= n;
  return FockVector::from_entries(modes, cutoff, std::move(scaled));
}

inline double max_abs(const ComplexMatrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace sqbsm::testing
