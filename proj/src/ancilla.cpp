#include "sqbsm/ancilla.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sqbsm {

namespace {

ComplexMatrix psd_sqrt(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  // eigenvalues at rounding level are zeros; their square roots would not be
  Eigen::VectorXd ev = es.eigenvalues();
  for (auto& v : ev) v = v > 1e-12 ? std::sqrt(v) : 0.0;
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

FockVector uniform_qudit(int d, int cutoff) {
  std::vector<FockVector::Entry> entries;
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) {
    OccupationTuple occ(static_cast<std::size_t>(d));
    occ.set(static_cast<std::size_t>(i), 1);
    entries.push_back({occ, Amplitude{a, 0.0}});
  }
  return FockVector::from_entries(static_cast<std::size_t>(d), cutoff, std::move(entries));
}

BsmResult classify_prepared(const PreparedInputs& prepared, const ClassifierConfig& classifier) {
  std::vector<ClickDistribution> dists;
  for (std::size_t ord = 0; ord < prepared.states.size(); ++ord) {
    dists.push_back(click_distribution(prepared.states[ord], BellIndex::from_ordinal(prepared.d, static_cast<int>(ord))));
  }
  Classification c = classify_patterns(dists, classifier);
  const double ps = success_probability(dists, c);
  return {std::move(dists), std::move(c), ps};
}

}  // namespace

ModeTransform qft_matrix(int d) {
  if (d < 2) throw std::domain_error("QFT needs d >= 2");
  ComplexMatrix q(d, d);
  const double s = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    for (int k = 0; k < d; ++k) q(j, k) = s * root_of_unity(d, j * k);
  }
  return ModeTransform(std::move(q));
}

ComplexMatrix t_matrix(int d) {
  if (d < 3) throw std::domain_error("T_d is defined for d >= 3, got d=" + std::to_string(d));
  const double off = 1.0 / (d - 1);
  ComplexMatrix t = ComplexMatrix::Constant(d, d, Amplitude{off, 0.0});
  t.diagonal().setConstant(Amplitude{(2.0 - d) * off, 0.0});
  return t;
}

ModeTransform dilate(const ComplexMatrix& t) {
  if (t.rows() != t.cols()) throw std::domain_error("dilation needs a square matrix");
  const double smax = Eigen::JacobiSVD<ComplexMatrix>(t).singularValues().maxCoeff();
  if (smax > 1.0 + 1e-12) {
    throw std::domain_error("cannot dilate: largest singular value " + std::to_string(smax) + " exceeds 1");
  }
  const auto n = t.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  ComplexMatrix u(2 * n, 2 * n);
  u.topLeftCorner(n, n) = t;
  u.topRightCorner(n, n) = psd_sqrt(id - t * t.adjoint());
  u.bottomLeftCorner(n, n) = psd_sqrt(id - t.adjoint() * t);
  u.bottomRightCorner(n, n) = -t.adjoint();
  return ModeTransform(std::move(u));
}

namespace {

std::size_t check_ancilla_dimension(int d) {
  if (d < 3) throw std::domain_error("ancilla scheme needs d >= 3");
  const std::size_t total = static_cast<std::size_t>(d * d + d);
  if (total > kMaxModes) throw std::domain_error("ancilla scheme for d=" + std::to_string(d) + " needs too many modes");
  return total;
}

struct AncillaNetwork {
  ModeTransform t_stage;
  ModeTransform fourier_stage;
  FockVector ancillas;
  FockVector dilation_vacuum;
};

AncillaNetwork build_network(int d, int cutoff) {
  const std::size_t qudit_modes = static_cast<std::size_t>(d * d);
  const std::size_t total = check_ancilla_dimension(d);

  std::vector<std::size_t> b_and_aux;
  for (int l = 0; l < d; ++l) b_and_aux.push_back(static_cast<std::size_t>(d + l));
  for (int l = 0; l < d; ++l) b_and_aux.push_back(qudit_modes + static_cast<std::size_t>(l));
  ModeTransform t_stage = ModeTransform::embed(dilate(t_matrix(d)).matrix(), b_and_aux, total);

  // Fourier network across qudits, once per path level.
  ComplexMatrix net = ComplexMatrix::Identity(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  const ComplexMatrix q = qft_matrix(d).matrix();
  for (int level = 0; level < d; ++level) {
    for (int a = 0; a < d; ++a) {
      for (int b = 0; b < d; ++b) net(a * d + level, b * d + level) = q(a, b);
    }
  }

  FockVector ancillas = basis_state(OccupationTuple(0), cutoff);
  for (int x = 0; x < d - 2; ++x) ancillas = tensor_product(ancillas, uniform_qudit(d, cutoff));
  return {std::move(t_stage), ModeTransform(std::move(net)), std::move(ancillas),
          basis_state(OccupationTuple(static_cast<std::size_t>(d)), cutoff)};
}

FockVector run_network(const AncillaNetwork& net, const FockVector& bell) {
  const FockVector in = tensor_product(tensor_product(bell, net.ancillas), net.dilation_vacuum);
  return apply_linear_transform(apply_linear_transform(in, net.t_stage).state, net.fourier_stage).state;
}

// d photons in total; a cutoff of d keeps the optics lossless.
int network_cutoff(int d, int n_max) { return std::min(std::max(n_max, d), kMaxOccupation); }

}  // namespace

FockVector ancilla_network_output(const BellIndex& input, int cutoff) {
  input.validate();
  check_ancilla_dimension(input.d);
  const auto net = build_network(input.d, cutoff);
  return run_network(net, bell_state(input, cutoff));
}

PreparedInputs prepare_ancilla_inputs(int d, int n_max, double prune_threshold) {
  check_ancilla_dimension(d);
  if (n_max < 1) throw std::domain_error("resolution must be >= 1");
  const std::size_t qudit_modes = static_cast<std::size_t>(d * d);
  const std::size_t total = qudit_modes + static_cast<std::size_t>(d);
  const int cutoff = network_cutoff(d, n_max);
  const auto net = build_network(d, cutoff);

  PreparedInputs prepared{d, n_max, {}};
  for (const auto& bell : bell_basis(d, cutoff)) {
    const FockVector out = run_network(net, bell);
    std::vector<FockVector::Entry> kept;
    for (const auto& e : out.entries()) {
      bool keep = true;
      for (std::size_t i = qudit_modes; i < total && keep; ++i) keep = e.occupation[i] == 0;
      for (std::size_t i = 0; i < qudit_modes && keep; ++i) keep = e.occupation[i] <= n_max;
      if (keep) kept.push_back({e.occupation.head(qudit_modes), e.amplitude});
    }
    prepared.states.push_back(
        prune(FockVector::from_entries(qudit_modes, n_max, std::move(kept)), prune_threshold).state);
  }
  return prepared;
}

BsmResult run_ancilla_bsm(int d, int n_max, const ClassifierConfig& classifier, double prune_threshold) {
  return classify_prepared(prepare_ancilla_inputs(d, n_max, prune_threshold), classifier);
}

BsmResult run_combined_bsm(int d, double r, int n_max, const ClassifierConfig& classifier, double phi,
                           double prune_threshold) {
  PreparedInputs prepared = prepare_ancilla_inputs(d, n_max, prune_threshold);
  const auto cfg = SqueezeConfig::uniform(static_cast<std::size_t>(d * d), r, phi);
  for (auto& s : prepared.states) s = apply_squeezers(s, cfg);
  return classify_prepared(prepared, classifier);
}

double run_combined(int d, double r, int n_max, const ClassifierConfig& classifier) {
  return run_combined_bsm(d, r, n_max, classifier).success_probability;
}

}  // namespace sqbsm
