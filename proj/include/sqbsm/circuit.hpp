#pragma once

// Linear-optical networks and single-mode squeezers acting on FockVectors.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <tuple>
#include <vector>

#include "sqbsm/fock.hpp"

namespace sqbsm {

using ComplexMatrix = Eigen::MatrixXcd;

/// Matrix U acting on creation operators as a_i^dag -> sum_k U(i,k) a_k^dag.
class ModeTransform {
 public:
  explicit ModeTransform(ComplexMatrix matrix, double unitarity_tolerance = 1e-10);

  /// Identity on `total_modes` with `block` written onto the listed modes.
  static ModeTransform embed(const ComplexMatrix& block, std::span<const std::size_t> modes, std::size_t total_modes);

  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dimension() const { return static_cast<std::size_t>(matrix_.rows()); }
  bool is_unitary() const { return unitary_; }

 private:
  ComplexMatrix matrix_;
  bool unitary_;
};

/// Squeezing of one mode, z = r e^{i phi}.
struct SqueezeParams {
  double r = 0.0;
  double phi = 0.0;

  double mu() const { return std::cosh(r); }
  Amplitude nu() const { return std::polar(std::sinh(r), phi); }
  /// nu / (2 mu)
  Amplitude delta() const { return std::polar(0.5 * std::tanh(r), phi); }
  double zeta_db() const;
};

/// Squeezing strength in decibels, -10 log10(exp(-2r)).
double zeta_db(double r);

class SqueezeConfig {
 public:
  SqueezeConfig() = default;
  explicit SqueezeConfig(std::vector<SqueezeParams> modes) : modes_(std::move(modes)) {}

  static SqueezeConfig uniform(std::size_t modes, double r, double phi = 0.0) {
    return SqueezeConfig(std::vector<SqueezeParams>(modes, SqueezeParams{r, phi}));
  }

  std::size_t size() const { return modes_.size(); }
  const SqueezeParams& operator[](std::size_t mode) const { return modes_[mode]; }
  std::span<const SqueezeParams> modes() const { return modes_; }

 private:
  std::vector<SqueezeParams> modes_;
};

/// Matrix elements <m|S(r, phi)|n> for 0 <= m, n <= n_max.
///
/// The elements are exact (not those of a truncated generator): only rows
/// above n_max are dropped.
class SqueezeMatrix {
 public:
  SqueezeMatrix(ComplexMatrix elements, SqueezeParams params)
      : elements_(std::move(elements)), params_(params) {}

  int n_max() const { return static_cast<int>(elements_.rows()) - 1; }
  Amplitude operator()(int m, int n) const { return elements_(m, n); }
  const ComplexMatrix& elements() const { return elements_; }
  const SqueezeParams& params() const { return params_; }

 private:
  ComplexMatrix elements_;
  SqueezeParams params_;
};

SqueezeMatrix squeeze_matrix(double r, double phi, int n_max);

/// Thread-safe memo of squeeze matrices keyed by (r, phi, n_max).
class SqueezeMatrixCache {
 public:
  std::shared_ptr<const SqueezeMatrix> get(double r, double phi, int n_max);
  std::size_t size() const;

 private:
  mutable std::mutex mutex_;
  std::map<std::tuple<double, double, int>, std::shared_ptr<const SqueezeMatrix>> entries_;
};

/// Calls visit(occupation, amplitude) for every nonzero amplitude of the
/// state after squeezing mode i with *matrices[i]. Each output tuple is
/// visited exactly once; order is unspecified.
template <class Visitor>
void visit_squeezed(const FockVector& state, std::span<const SqueezeMatrix* const> matrices, Visitor&& visit);

FockVector apply_squeezers(const FockVector& state, const SqueezeConfig& cfg);
FockVector apply_squeezers(const FockVector& state, std::span<const SqueezeMatrix* const> matrices);

/// 2d x 2d balanced beam splitters coupling mode k with mode k + d.
ComplexMatrix beam_splitter_matrix(int d);

FockVector apply_pairwise_beam_splitters(const FockVector& state, int d);

struct TransformResult {
  FockVector state;
  /// Squared norm lost to tuples with some mode above the cutoff.
  double overflow_mass;
};

TransformResult apply_linear_transform(const FockVector& state, const ModeTransform& t);

// ---------------------------------------------------------------------------

namespace detail {

struct ParityGroup {
  std::vector<std::size_t> members;  // indices into the state's entries
};

std::map<std::uint32_t, ParityGroup> group_by_parity(const FockVector& state);
void check_squeeze_inputs(const FockVector& state, std::span<const SqueezeMatrix* const> matrices);

}  // namespace detail

template <class Visitor>
void visit_squeezed(const FockVector& state, std::span<const SqueezeMatrix* const> matrices, Visitor&& visit) {
  detail::check_squeeze_inputs(state, matrices);
  const std::size_t modes = state.modes();
  const int cutoff = state.cutoff();
  const auto entries = state.entries();

  std::vector<std::vector<int>> rows(modes);
  std::vector<std::size_t> digit(modes);
  std::vector<Amplitude> prefix;
  std::vector<int> in_counts;

  // Squeezing preserves each mode's parity, so tuples with distinct parity
  // signatures map onto disjoint output sets.
  for (const auto& [signature, group] : detail::group_by_parity(state)) {
    const std::size_t g = group.members.size();
    in_counts.assign(g * modes, 0);
    for (std::size_t t = 0; t < g; ++t) {
      const auto& occ = entries[group.members[t]].occupation;
      for (std::size_t i = 0; i < modes; ++i) in_counts[t * modes + i] = occ[i];
    }

    bool empty = false;
    for (std::size_t i = 0; i < modes; ++i) {
      rows[i].clear();
      const int parity = static_cast<int>((signature >> i) & 1u);
      for (int m = parity; m <= cutoff; m += 2) {
        for (std::size_t t = 0; t < g; ++t) {
          if ((*matrices[i])(m, in_counts[t * modes + i]) != Amplitude{}) {
            rows[i].push_back(m);
            break;
          }
        }
      }
      if (rows[i].empty()) empty = true;
    }
    if (empty) continue;

    // prefix[(i * g) + t] = amplitude of tuple t times the product of the
    // matrix factors of modes < i.
    prefix.assign((modes + 1) * g, Amplitude{});
    for (std::size_t t = 0; t < g; ++t) prefix[t] = entries[group.members[t]].amplitude;
    std::fill(digit.begin(), digit.end(), 0);
    OccupationTuple out(modes);
    for (std::size_t i = 0; i < modes; ++i) out.set(i, rows[i][0]);

    std::size_t dirty = 0;
    while (true) {
      for (std::size_t i = dirty; i < modes; ++i) {
        const auto& mat = *matrices[i];
        const int m = rows[i][digit[i]];
        for (std::size_t t = 0; t < g; ++t) {
          prefix[(i + 1) * g + t] = prefix[i * g + t] * mat(m, in_counts[t * modes + i]);
        }
      }
      Amplitude amp{};
      for (std::size_t t = 0; t < g; ++t) amp += prefix[modes * g + t];
      if (amp != Amplitude{}) visit(out, amp);

      // odometer, last mode fastest
      std::size_t i = modes;
      while (i > 0) {
        --i;
        if (++digit[i] < rows[i].size()) {
          out.set(i, rows[i][digit[i]]);
          break;
        }
        digit[i] = 0;
        out.set(i, rows[i][0]);
        if (i == 0) {
          i = modes;  // sentinel: exhausted
          break;
        }
      }
      if (i == modes) break;
      dirty = i;
    }
  }
}

}  // namespace sqbsm
