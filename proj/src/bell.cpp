#include "sqbsm/bell.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sqbsm {

void BellIndex::validate() const {
  if (d < 2) throw std::domain_error("Bell dimension must be >= 2, got " + std::to_string(d));
  if (l < 0 || l >= d || m < 0 || m >= d) {
    throw std::domain_error("Bell index (" + std::to_string(l) + "," + std::to_string(m) + ") out of range for d=" +
                            std::to_string(d));
  }
}

Amplitude root_of_unity(int d, int k) {
  // reduce first so that exact cases (1, -1, +-i) stay exact
  const int e = ((k % d) + d) % d;
  if (e == 0) return {1.0, 0.0};
  if (2 * e == d) return {-1.0, 0.0};
  if (4 * e == d) return {0.0, 1.0};
  if (4 * e == 3 * d) return {0.0, -1.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * e / d);
}

FockVector logical_basis(int d, int k, int cutoff) {
  if (d < 1) throw std::domain_error("qudit dimension must be positive");
  if (k < 0 || k >= d) {
    throw std::domain_error("logical level " + std::to_string(k) + " out of range for d=" + std::to_string(d));
  }
  OccupationTuple occ(static_cast<std::size_t>(d));
  occ.set(static_cast<std::size_t>(k), 1);
  return basis_state(occ, cutoff);
}

FockVector bell_state(const BellIndex& idx, int cutoff) {
  idx.validate();
  if (cutoff < 1) throw std::domain_error("Bell states need cutoff >= 1");
  const int d = idx.d;
  const double norm = 1.0 / std::sqrt(static_cast<double>(d));
  std::vector<FockVector::Entry> entries;
  entries.reserve(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    OccupationTuple occ(static_cast<std::size_t>(2 * d));
    occ.set(static_cast<std::size_t>(k), 1);
    occ.set(static_cast<std::size_t>(d + (k + idx.m) % d), 1);
    entries.push_back({occ, norm * root_of_unity(d, idx.l * k)});
  }
  return FockVector::from_entries(static_cast<std::size_t>(2 * d), cutoff, std::move(entries));
}

std::vector<FockVector> bell_basis(int d, int cutoff) {
  if (d < 2) throw std::domain_error("Bell dimension must be >= 2");
  std::vector<FockVector> basis;
  basis.reserve(static_cast<std::size_t>(d * d));
  for (int ord = 0; ord < d * d; ++ord) basis.push_back(bell_state(BellIndex::from_ordinal(d, ord), cutoff));
  return basis;
}

}  // namespace sqbsm
