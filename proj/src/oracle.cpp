#include "sqbsm/oracle.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>

namespace sqbsm::oracle {

ComplexMatrix dense_squeeze_matrix(double r, double phi, int n_max, int generator_cutoff) {
  if (generator_cutoff < n_max) throw std::domain_error("generator cutoff below n_max");
  const int dim = generator_cutoff + 1;
  ComplexMatrix a = ComplexMatrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  const ComplexMatrix a2 = a * a;
  const Amplitude z = std::polar(r, phi);
  const ComplexMatrix gen = 0.5 * (std::conj(z) * a2 - z * a2.adjoint());
  const ComplexMatrix s = gen.exp();
  return s.topLeftCorner(n_max + 1, n_max + 1);
}

ComplexMatrix direct_single_mode_element(int n, double r, int n_max) {
  if (n < 0 || n > n_max) throw std::domain_error("click count out of range");
  const auto s = squeeze_matrix(r, 0.0, n_max);
  ComplexMatrix out(n_max + 1, n_max + 1);
  for (int m = 0; m <= n_max; ++m) {
    for (int mp = 0; mp <= n_max; ++mp) out(m, mp) = std::conj(s(n, m)) * s(n, mp);
  }
  return out;
}

ComplexMatrix direct_two_mode_element(int n_k, int n_kp, double r_k, double r_kp, int n_max) {
  if (n_k < 0 || n_k > n_max || n_kp < 0 || n_kp > n_max) throw std::domain_error("click count out of range");
  // the beam splitter can pile up to 2 n_max photons in one mode
  const int wide = 2 * n_max;
  const auto sk = squeeze_matrix(r_k, 0.0, wide);
  const auto skp = squeeze_matrix(r_kp, 0.0, wide);
  const SqueezeMatrix* mats[] = {&sk, &skp};
  const ModeTransform bs(beam_splitter_matrix(1));
  const OccupationTuple target{n_k, n_kp};

  const int span = n_max + 1;
  Eigen::VectorXcd v(span * span);
  for (int m1 = 0; m1 <= n_max; ++m1) {
    for (int m2 = 0; m2 <= n_max; ++m2) {
      const FockVector mixed = apply_linear_transform(basis_state({m1, m2}, wide), bs).state;
      v(m1 * span + m2) = apply_squeezers(mixed, mats).amplitude(target);
    }
  }
  return v.conjugate() * v.transpose();
}

}  // namespace sqbsm::oracle
