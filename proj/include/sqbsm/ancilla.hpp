#pragma once

// Linear-optical qudit BSM aided by d-2 auxiliary qudits, optionally with
// squeezers in front of the detectors.
//
// Mode layout: qudit q (0 = A, 1 = B, 2.. = auxiliary) path l sits on mode
// q*d + l; the d dilation modes of the T_d stage follow at d^2 .. d^2+d-1 and
// are post-selected on vacuum.

#include "sqbsm/circuit.hpp"
#include "sqbsm/engine.hpp"

namespace sqbsm {

/// Discrete Fourier transform, entry (j,k) = omega_d^{jk} / sqrt(d).
ModeTransform qft_matrix(int d);

/// (J - (d-1) I) / (d-1): diagonal (2-d)/(d-1), off-diagonal 1/(d-1).
ComplexMatrix t_matrix(int d);

/// Unitary [[T, sqrt(I - T T^dag)], [sqrt(I - T^dag T), -T^dag]].
ModeTransform dilate(const ComplexMatrix& t);

/// Bell state plus auxiliary qudits through T_d and the Fourier network on all
/// d^2 + d modes, before post-selection.
FockVector ancilla_network_output(const BellIndex& input, int cutoff);

/// Bell basis plus auxiliary qudits through T_d and the Fourier network,
/// post-selected on empty dilation modes. States live on d^2 modes.
PreparedInputs prepare_ancilla_inputs(int d, int n_max, double prune_threshold = kDefaultPruneThreshold);

BsmResult run_ancilla_bsm(int d, int n_max, const ClassifierConfig& classifier = {},
                          double prune_threshold = kDefaultPruneThreshold);

/// Ancilla scheme with uniform squeezing on every detected mode.
BsmResult run_combined_bsm(int d, double r, int n_max, const ClassifierConfig& classifier = {},
                           double phi = 0.0, double prune_threshold = kDefaultPruneThreshold);

double run_combined(int d, double r, int n_max, const ClassifierConfig& classifier = {});

}  // namespace sqbsm
