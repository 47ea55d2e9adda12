#pragma once

// Closed-form POVM of photon counting behind squeezers and pairwise beam
// splitters.
//
// For one mode squeezed with r, the adjoint-evolved generating function is
//
//   P(x) = S^dag E(x) S = d(x)^{-1/2} :exp{lambda(x) (a^dag^2 + a^2) + theta(x) a^dag a}:
//
//   lambda(x) = (nu / 2mu) (1 - x^2 / d(x)),  theta(x) = -(1 - x / d(x)),
//   d(x)      = mu^2 - x^2 nu^2,
//
// and the element for n clicks is the x^n Taylor coefficient of P(x). The
// two-mode element conjugates P_k(x) (x) P_k'(y) by the balanced beam
// splitter and extracts the x^{n_k} y^{n_k'} coefficient.

#include <cstddef>

#include "sqbsm/circuit.hpp"
#include "sqbsm/taylor.hpp"

namespace sqbsm {

struct PovmCoefficients {
  Amplitude lambda;
  Amplitude theta;
  Amplitude d;
};

PovmCoefficients coefficients(double x, double r, double phi = 0.0);

/// Fault injection for negative-control runs of the verifier.
struct PovmHooks {
  bool flip_lambda_sign = false;
};

struct CoefficientSeries {
  TaylorSeries lambda;
  TaylorSeries theta;
  TaylorSeries inv_sqrt_d;
};

/// lambda, theta and d^{-1/2} expanded around x = 0 for real squeezing r.
CoefficientSeries coefficient_series(double r, int order, const PovmHooks& hooks = {});

/// P(x) evaluated at a numeric x on the cutoff-n_max space.
ComplexMatrix generating_operator(double x, double r, int n_max);

ComplexMatrix single_mode_povm_element(int n, double r, int n_max, const PovmHooks& hooks = {});

/// Two-mode element on basis |m_k, m_k'>, index m_k * (n_max + 1) + m_k'.
ComplexMatrix two_mode_povm_element(int n_k, int n_kp, double r_k, double r_kp, int n_max,
                                    const PovmHooks& hooks = {});

struct ConsistencyOptions {
  /// Only patterns with at most this many photons; negative means all.
  int max_pattern_photons = -1;
  PovmHooks hooks{};
};

struct ConsistencyReport {
  double max_deviation = 0.0;
  std::size_t patterns = 0;
  std::size_t states = 0;
};

/// Compares <Psi| Pi'_pattern |Psi> against |<pattern| S U_BS |Psi>|^2 for
/// every Bell state and every pattern with entries <= n_max.
ConsistencyReport consistency_check(int d, double r, int n_max, const ConsistencyOptions& options = {});

}  // namespace sqbsm
