#include "sqbsm/circuit.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sqbsm {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

ModeTransform::ModeTransform(ComplexMatrix matrix, double unitarity_tolerance) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw std::domain_error("mode transform must be square");
  const auto n = matrix_.rows();
  unitary_ = (matrix_ * matrix_.adjoint() - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <= unitarity_tolerance;
}

ModeTransform ModeTransform::embed(const ComplexMatrix& block, std::span<const std::size_t> modes,
                                   std::size_t total_modes) {
  if (block.rows() != block.cols() || static_cast<std::size_t>(block.rows()) != modes.size()) {
    throw std::domain_error("block size does not match the number of target modes");
  }
  ComplexMatrix m = ComplexMatrix::Identity(static_cast<Eigen::Index>(total_modes),
                                            static_cast<Eigen::Index>(total_modes));
  for (std::size_t a = 0; a < modes.size(); ++a) {
    for (std::size_t b = 0; b < modes.size(); ++b) {
      if (modes[a] >= total_modes || modes[b] >= total_modes) throw std::domain_error("embedded mode out of range");
      m(static_cast<Eigen::Index>(modes[a]), static_cast<Eigen::Index>(modes[b])) =
          block(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
    }
  }
  return ModeTransform(std::move(m));
}

double zeta_db(double r) { return 20.0 * r / std::log(10.0); }

double SqueezeParams::zeta_db() const { return sqbsm::zeta_db(r); }

SqueezeMatrix squeeze_matrix(double r, double phi, int n_max) {
  if (std::isnan(r) || std::isnan(phi)) throw std::domain_error("squeeze parameters must not be NaN");
  if (n_max < 0) throw std::domain_error("n_max must be non-negative");

  // S = exp(-delta a^dag^2) mu^{-(n + 1/2)} exp(conj(delta) a^2), so
  // S|n> = sqrt(n!) mu^{-(n+1/2)} sum_j conj(delta)^j mu^{2j} / ((n-2j)! j!)
  //        sum_k (-delta)^k sqrt((n-2j+2k)!) / k! |n-2j+2k>
  const SqueezeParams p{r, phi};
  const double mu = p.mu();
  const Amplitude delta = p.delta();
  ComplexMatrix s = ComplexMatrix::Zero(n_max + 1, n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    const double lead = std::sqrt(factorial(n)) * std::pow(mu, -(n + 0.5));
    for (int j = 0; j <= n / 2; ++j) {
      const Amplitude outer = lead * std::pow(std::conj(delta), j) * std::pow(mu, 2 * j) /
                              (factorial(n - 2 * j) * factorial(j));
      const int k_max = (n_max - n + 2 * j) / 2;
      for (int k = 0; k <= k_max; ++k) {
        const int m = n - 2 * j + 2 * k;
        if (j == 0 && k == 0) {
          s(m, n) += std::pow(mu, -(n + 0.5));
        } else {
          s(m, n) += outer * std::pow(-delta, k) * std::sqrt(factorial(m)) / factorial(k);
        }
      }
    }
  }
  return SqueezeMatrix(std::move(s), p);
}

std::shared_ptr<const SqueezeMatrix> SqueezeMatrixCache::get(double r, double phi, int n_max) {
  const auto key = std::make_tuple(r, phi, n_max);
  {
    std::lock_guard lock(mutex_);
    if (auto it = entries_.find(key); it != entries_.end()) return it->second;
  }
  auto built = std::make_shared<const SqueezeMatrix>(squeeze_matrix(r, phi, n_max));
  std::lock_guard lock(mutex_);
  return entries_.try_emplace(key, std::move(built)).first->second;
}

std::size_t SqueezeMatrixCache::size() const {
  std::lock_guard lock(mutex_);
  return entries_.size();
}

namespace detail {

std::map<std::uint32_t, ParityGroup> group_by_parity(const FockVector& state) {
  std::map<std::uint32_t, ParityGroup> groups;
  const auto entries = state.entries();
  for (std::size_t e = 0; e < entries.size(); ++e) {
    std::uint32_t sig = 0;
    for (std::size_t i = 0; i < state.modes(); ++i) {
      sig |= static_cast<std::uint32_t>(entries[e].occupation[i] & 1) << i;
    }
    groups[sig].members.push_back(e);
  }
  return groups;
}

void check_squeeze_inputs(const FockVector& state, std::span<const SqueezeMatrix* const> matrices) {
  if (matrices.size() != state.modes()) {
    throw std::domain_error("squeezer count " + std::to_string(matrices.size()) + " does not match mode count " +
                            std::to_string(state.modes()));
  }
  for (const auto* m : matrices) {
    if (m == nullptr || m->n_max() != state.cutoff()) {
      throw std::domain_error("squeeze matrix size does not match the state cutoff");
    }
  }
}

}  // namespace detail

FockVector apply_squeezers(const FockVector& state, std::span<const SqueezeMatrix* const> matrices) {
  std::vector<FockVector::Entry> out;
  visit_squeezed(state, matrices,
                 [&](const OccupationTuple& occ, Amplitude amp) { out.push_back({occ, amp}); });
  return FockVector::from_entries(state.modes(), state.cutoff(), std::move(out));
}

FockVector apply_squeezers(const FockVector& state, const SqueezeConfig& cfg) {
  if (cfg.size() != state.modes()) {
    throw std::domain_error("squeeze config length " + std::to_string(cfg.size()) + " does not match mode count " +
                            std::to_string(state.modes()));
  }
  std::vector<SqueezeMatrix> owned;
  owned.reserve(cfg.size());
  for (const auto& p : cfg.modes()) owned.push_back(squeeze_matrix(p.r, p.phi, state.cutoff()));
  std::vector<const SqueezeMatrix*> ptrs;
  for (const auto& m : owned) ptrs.push_back(&m);
  return apply_squeezers(state, ptrs);
}

ComplexMatrix beam_splitter_matrix(int d) {
  if (d < 1) throw std::domain_error("beam splitter network needs d >= 1");
  const double s = 1.0 / std::numbers::sqrt2;
  const Amplitude is{0.0, s};
  ComplexMatrix u = ComplexMatrix::Zero(2 * d, 2 * d);
  for (int k = 0; k < d; ++k) {
    u(k, k) = s;
    u(k, k + d) = is;
    u(k + d, k) = is;
    u(k + d, k + d) = s;
  }
  return u;
}

FockVector apply_pairwise_beam_splitters(const FockVector& state, int d) {
  if (state.modes() % 2 != 0) throw std::domain_error("pairwise beam splitters need an even mode count");
  if (static_cast<std::size_t>(2 * d) != state.modes()) {
    throw std::domain_error("state has " + std::to_string(state.modes()) + " modes, expected " +
                            std::to_string(2 * d));
  }
  return apply_linear_transform(state, ModeTransform(beam_splitter_matrix(d))).state;
}

TransformResult apply_linear_transform(const FockVector& state, const ModeTransform& t) {
  if (t.dimension() != state.modes()) {
    throw std::domain_error("transform dimension " + std::to_string(t.dimension()) + " does not match mode count " +
                            std::to_string(state.modes()));
  }
  if (!t.is_unitary()) throw std::domain_error("linear transform is not unitary; dilate it first");

  const std::size_t modes = state.modes();
  const int cutoff = state.cutoff();
  const auto& u = t.matrix();

  // nonzero targets per source mode
  std::vector<std::vector<std::pair<std::size_t, Amplitude>>> targets(modes);
  for (std::size_t i = 0; i < modes; ++i) {
    for (std::size_t k = 0; k < modes; ++k) {
      const Amplitude v = u(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
      if (v != Amplitude{}) targets[i].emplace_back(k, v);
    }
  }

  FockAccumulator acc(modes, cutoff);
  std::vector<std::size_t> sources;
  std::vector<int> counts(modes);

  for (const auto& entry : state.entries()) {
    sources.clear();
    double in_norm = 1.0;
    for (std::size_t i = 0; i < modes; ++i) {
      const int n = entry.occupation[i];
      for (int c = 0; c < n; ++c) sources.push_back(i);
      in_norm *= factorial(n);
    }
    in_norm = std::sqrt(in_norm);
    std::fill(counts.begin(), counts.end(), 0);

    // Expand prod_photons (sum_k U(i,k) a_k^dag) depth-first.
    auto expand = [&](auto&& self, std::size_t photon, Amplitude coeff) -> void {
      if (photon == sources.size()) {
        double out_norm = 1.0;
        OccupationTuple occ(modes);
        for (std::size_t k = 0; k < modes; ++k) {
          if (counts[k] > cutoff) return;
          out_norm *= factorial(counts[k]);
          occ.set(k, counts[k]);
        }
        acc.add(occ, entry.amplitude * coeff * std::sqrt(out_norm) / in_norm);
        return;
      }
      for (const auto& [k, v] : targets[sources[photon]]) {
        ++counts[k];
        self(self, photon + 1, coeff * v);
        --counts[k];
      }
    };
    expand(expand, 0, Amplitude{1.0, 0.0});
  }

  FockVector out = std::move(acc).finish();
  const double overflow = std::max(0.0, state.squared_norm() - out.squared_norm());
  return {std::move(out), overflow};
}

}  // namespace sqbsm
