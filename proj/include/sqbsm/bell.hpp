#pragma once

// Path-encoded qudits and the d-dimensional Bell basis.
//
// Mode layout of a two-qudit state: modes 0..d-1 are the paths of qudit A,
// modes d..2d-1 the paths of qudit B.

#include <compare>
#include <vector>

#include "sqbsm/fock.hpp"

namespace sqbsm {

struct BellIndex {
  int d = 2;
  int l = 0;
  int m = 0;

  /// Position of this state in bell_basis(d): l * d + m.
  int ordinal() const { return l * d + m; }
  static BellIndex from_ordinal(int d, int ordinal) { return {d, ordinal / d, ordinal % d}; }
  void validate() const;

  auto operator<=>(const BellIndex&) const = default;
};

/// exp(2 pi i k / d)
Amplitude root_of_unity(int d, int k);

/// One photon in path k of a d-path qudit.
FockVector logical_basis(int d, int k, int cutoff);

/// |Psi_lm> = d^{-1/2} sum_k omega_d^{lk} |k>_A |k+m mod d>_B
FockVector bell_state(const BellIndex& idx, int cutoff);

/// All d^2 Bell states ordered by BellIndex::ordinal().
std::vector<FockVector> bell_basis(int d, int cutoff);

}  // namespace sqbsm
