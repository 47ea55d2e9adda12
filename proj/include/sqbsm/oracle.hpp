#pragma once

// Direct constructions that do not go through the closed-form POVM or the
// Fock-basis squeezing expansion. Used by `sqbsm verify` and the tests.

#include "sqbsm/circuit.hpp"

namespace sqbsm::oracle {

/// exp(1/2 (conj(z) a^2 - z a^dag^2)) exponentiated on a cutoff-`generator_cutoff`
/// space, top-left (n_max+1) x (n_max+1) block.
ComplexMatrix dense_squeeze_matrix(double r, double phi, int n_max, int generator_cutoff);

/// S^dag |n><n| S from the squeeze matrix.
ComplexMatrix direct_single_mode_element(int n, double r, int n_max);

/// U_BS^dag (S^dag (x) S^dag) |n_k, n_k'><n_k, n_k'| (S (x) S) U_BS built with
/// the circuit operations; basis index m_k * (n_max + 1) + m_k'.
ComplexMatrix direct_two_mode_element(int n_k, int n_kp, double r_k, double r_kp, int n_max);

}  // namespace sqbsm::oracle
