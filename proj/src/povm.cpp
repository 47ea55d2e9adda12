#include "sqbsm/povm.hpp"

#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sqbsm/bell.hpp"

namespace sqbsm {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

Amplitude ipow(Amplitude base, int e) {
  Amplitude v{1.0, 0.0};
  for (int i = 0; i < e; ++i) v *= base;
  return v;
}

void check_counts(int n, int n_max) {
  if (n_max < 0) throw std::domain_error("n_max must be non-negative");
  if (n < 0 || n > n_max) {
    throw std::domain_error("click count " + std::to_string(n) + " outside [0, " + std::to_string(n_max) + "]");
  }
}

// Normal-ordered polynomial in (a_k^dag, a_k'^dag, a_k, a_k') with series
// coefficients, exponents capped at n_max.
class NormalPoly {
 public:
  NormalPoly(int n_max, int nx, int ny) : n_(n_max + 1), nx_(nx), ny_(ny), terms_(static_cast<std::size_t>(n_ * n_ * n_ * n_)) {}

  std::optional<TaylorSeries2>& at(int c1, int c2, int a1, int a2) {
    return terms_[static_cast<std::size_t>(((c1 * n_ + c2) * n_ + a1) * n_ + a2)];
  }
  const std::optional<TaylorSeries2>& at(int c1, int c2, int a1, int a2) const {
    return terms_[static_cast<std::size_t>(((c1 * n_ + c2) * n_ + a1) * n_ + a2)];
  }
  int span() const { return n_; }

  void add(int c1, int c2, int a1, int a2, const TaylorSeries2& s) {
    if (c1 >= n_ || c2 >= n_ || a1 >= n_ || a2 >= n_) return;
    auto& slot = at(c1, c2, a1, a2);
    if (slot) {
      *slot += s;
    } else {
      slot = s;
    }
  }

  bool empty() const {
    for (const auto& t : terms_) {
      if (t && !t->is_zero()) return false;
    }
    return true;
  }

 private:
  int n_;
  int nx_;
  int ny_;
  std::vector<std::optional<TaylorSeries2>> terms_;
};

struct QuadraticTerm {
  std::array<int, 4> powers;  // a_k^dag, a_k'^dag, a_k, a_k'
  TaylorSeries2 coeff;
};

NormalPoly normal_ordered_exp(const std::vector<QuadraticTerm>& q, int n_max, int nx, int ny) {
  NormalPoly sum(n_max, nx, ny);
  NormalPoly term(n_max, nx, ny);
  term.add(0, 0, 0, 0, TaylorSeries2::constant(1.0, nx, ny));
  sum.add(0, 0, 0, 0, TaylorSeries2::constant(1.0, nx, ny));
  const int n = n_max + 1;
  // every factor raises the total degree by 2; beyond 4 n_max nothing survives
  for (int j = 1; j <= 2 * n_max; ++j) {
    NormalPoly next(n_max, nx, ny);
    for (int c1 = 0; c1 < n; ++c1)
      for (int c2 = 0; c2 < n; ++c2)
        for (int a1 = 0; a1 < n; ++a1)
          for (int a2 = 0; a2 < n; ++a2) {
            const auto& t = term.at(c1, c2, a1, a2);
            if (!t) continue;
            for (const auto& qt : q) {
              next.add(c1 + qt.powers[0], c2 + qt.powers[1], a1 + qt.powers[2], a2 + qt.powers[3],
                       (*t * qt.coeff) * Amplitude{1.0 / j, 0.0});
            }
          }
    if (next.empty()) break;
    for (int c1 = 0; c1 < n; ++c1)
      for (int c2 = 0; c2 < n; ++c2)
        for (int a1 = 0; a1 < n; ++a1)
          for (int a2 = 0; a2 < n; ++a2) {
            if (const auto& t = next.at(c1, c2, a1, a2)) sum.add(c1, c2, a1, a2, *t);
          }
    term = std::move(next);
  }
  return sum;
}

}  // namespace

PovmCoefficients coefficients(double x, double r, double phi) {
  const SqueezeParams p{r, phi};
  const double mu = p.mu();
  const Amplitude nu = p.nu();
  const Amplitude d = mu * mu - x * x * nu * nu;
  if (std::abs(d) <= 1e-14 * mu * mu) throw std::domain_error("POVM coefficient d(x) vanishes");
  return {nu / (2.0 * mu) * (1.0 - x * x / d), -(1.0 - x / d), d};
}

CoefficientSeries coefficient_series(double r, int order, const PovmHooks& hooks) {
  const double mu = std::cosh(r);
  const double nu = std::sinh(r);
  const TaylorSeries x = TaylorSeries::variable(order);
  const TaylorSeries one = TaylorSeries::constant(1.0, order);
  const TaylorSeries d = TaylorSeries::constant(mu * mu, order) - (x * x) * Amplitude{nu * nu, 0.0};
  const TaylorSeries inv_d = d.reciprocal();
  const double sign = hooks.flip_lambda_sign ? -1.0 : 1.0;
  TaylorSeries lambda = (one - x * x * inv_d) * Amplitude{sign * nu / (2.0 * mu), 0.0};
  TaylorSeries theta = (one - x * inv_d) * Amplitude{-1.0, 0.0};
  return {std::move(lambda), std::move(theta), d.rsqrt()};
}

ComplexMatrix generating_operator(double x, double r, int n_max) {
  const auto c = coefficients(x, r);
  const Amplitude pre = 1.0 / std::sqrt(c.d);
  ComplexMatrix out = ComplexMatrix::Zero(n_max + 1, n_max + 1);
  for (int m = 0; m <= n_max; ++m) {
    for (int mp = 0; mp <= n_max; ++mp) {
      // <m| (a^dag)^{2p+s} a^{2q+s} |m'> with m - 2p - s = m' - 2q - s = j
      Amplitude v{};
      for (int j = 0; j <= std::min(m, mp); ++j) {
        if ((m - j) % 2 != (mp - j) % 2) continue;
        for (int s = (m - j) % 2; s <= std::min(m, mp) - j; s += 2) {
          const int p = (m - j - s) / 2;
          const int q = (mp - j - s) / 2;
          v += ipow(c.lambda, p + q) * ipow(c.theta, s) / (factorial(p) * factorial(q) * factorial(s)) *
               std::sqrt(factorial(m) * factorial(mp)) / factorial(j);
        }
      }
      out(m, mp) = pre * v;
    }
  }
  return out;
}

ComplexMatrix single_mode_povm_element(int n, double r, int n_max, const PovmHooks& hooks) {
  check_counts(n, n_max);
  const auto series = coefficient_series(r, n, hooks);
  std::vector<TaylorSeries> lambda_pow{TaylorSeries::constant(1.0, n)};
  std::vector<TaylorSeries> theta_pow{TaylorSeries::constant(1.0, n)};
  for (int k = 1; k <= n_max; ++k) {
    lambda_pow.push_back(lambda_pow.back() * series.lambda);
    theta_pow.push_back(theta_pow.back() * series.theta);
  }

  ComplexMatrix out = ComplexMatrix::Zero(n_max + 1, n_max + 1);
  for (int m = 0; m <= n_max; ++m) {
    for (int mp = 0; mp <= n_max; ++mp) {
      TaylorSeries acc(n);
      for (int j = 0; j <= std::min(m, mp); ++j) {
        for (int s = 0; s <= std::min(m, mp) - j; ++s) {
          if ((m - j - s) % 2 != 0 || (mp - j - s) % 2 != 0) continue;
          const int p = (m - j - s) / 2;
          const int q = (mp - j - s) / 2;
          const double w = std::sqrt(factorial(m) * factorial(mp)) /
                           (factorial(p) * factorial(q) * factorial(s) * factorial(j));
          acc += (lambda_pow[static_cast<std::size_t>(p + q)] * theta_pow[static_cast<std::size_t>(s)]) *
                 Amplitude{w, 0.0};
        }
      }
      Amplitude v{};
      for (int i = 0; i <= n; ++i) v += series.inv_sqrt_d[i] * acc[n - i];
      out(m, mp) = v;
    }
  }
  return out;
}

ComplexMatrix two_mode_povm_element(int n_k, int n_kp, double r_k, double r_kp, int n_max, const PovmHooks& hooks) {
  check_counts(n_k, n_max);
  check_counts(n_kp, n_max);
  const int nx = n_k;
  const int ny = n_kp;
  const auto sx = coefficient_series(r_k, nx, hooks);
  const auto sy = coefficient_series(r_kp, ny, hooks);
  const auto lx = TaylorSeries2::in_x(sx.lambda, nx, ny);
  const auto ly = TaylorSeries2::in_y(sy.lambda, nx, ny);
  const auto tx = TaylorSeries2::in_x(sx.theta, nx, ny);
  const auto ty = TaylorSeries2::in_y(sy.theta, nx, ny);
  const auto pre = TaylorSeries2::in_x(sx.inv_sqrt_d, nx, ny) * TaylorSeries2::in_y(sy.inv_sqrt_d, nx, ny);

  const Amplitude i{0.0, 1.0};
  const auto squeeze_diff = (lx - ly) * Amplitude{0.5, 0.0};
  const auto pair = (lx + ly) * (-i);
  const auto number = (tx + ty) * Amplitude{0.5, 0.0};
  const auto hop = (tx - ty) * (0.5 * i);

  const std::vector<QuadraticTerm> q{
      {{2, 0, 0, 0}, squeeze_diff},       {{0, 0, 2, 0}, squeeze_diff},
      {{0, 2, 0, 0}, -1.0 * squeeze_diff}, {{0, 0, 0, 2}, -1.0 * squeeze_diff},
      {{1, 1, 0, 0}, pair},               {{0, 0, 1, 1}, -1.0 * pair},
      {{1, 0, 1, 0}, number},             {{0, 1, 0, 1}, number},
      {{1, 0, 0, 1}, hop},                {{0, 1, 1, 0}, -1.0 * hop},
  };
  const NormalPoly g = normal_ordered_exp(q, n_max, nx, ny);

  const int dim = (n_max + 1) * (n_max + 1);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  for (int m1 = 0; m1 <= n_max; ++m1)
    for (int m2 = 0; m2 <= n_max; ++m2)
      for (int p1 = 0; p1 <= n_max; ++p1)
        for (int p2 = 0; p2 <= n_max; ++p2) {
          Amplitude v{};
          for (int j1 = 0; j1 <= std::min(m1, p1); ++j1) {
            for (int j2 = 0; j2 <= std::min(m2, p2); ++j2) {
              const auto& t = g.at(m1 - j1, m2 - j2, p1 - j1, p2 - j2);
              if (!t) continue;
              const double w = std::sqrt(factorial(m1) * factorial(p1) * factorial(m2) * factorial(p2)) /
                               (factorial(j1) * factorial(j2));
              v += w * product_coefficient(pre, *t, nx, ny);
            }
          }
          out(m1 * (n_max + 1) + m2, p1 * (n_max + 1) + p2) = v;
        }
  return out;
}

ConsistencyReport consistency_check(int d, double r, int n_max, const ConsistencyOptions& options) {
  if (d < 2) throw std::domain_error("consistency check needs d >= 2");
  if (n_max < 2) throw std::domain_error("consistency check needs n_max >= 2 so the beam splitters do not truncate");
  const std::size_t modes = static_cast<std::size_t>(2 * d);
  const auto cfg = SqueezeConfig::uniform(modes, r);
  const int span = n_max + 1;

  std::map<std::pair<int, int>, ComplexMatrix> elements;
  auto element = [&](int a, int b) -> const ComplexMatrix& {
    auto it = elements.find({a, b});
    if (it == elements.end()) {
      it = elements.emplace(std::make_pair(a, b), two_mode_povm_element(a, b, r, r, n_max, options.hooks)).first;
    }
    return it->second;
  };

  ConsistencyReport report;
  const auto basis = bell_basis(d, n_max);
  std::vector<FockVector> evolved;
  for (const auto& bell : basis) evolved.push_back(apply_squeezers(apply_pairwise_beam_splitters(bell, d), cfg));
  report.states = basis.size();

  std::vector<int> digits(modes, 0);
  while (true) {
    int total = 0;
    for (int v : digits) total += v;
    if (options.max_pattern_photons < 0 || total <= options.max_pattern_photons) {
      const OccupationTuple pattern = OccupationTuple::from_counts(digits);
      ++report.patterns;
      for (std::size_t s = 0; s < basis.size(); ++s) {
        const double direct = std::norm(evolved[s].amplitude(pattern));
        Amplitude analytic{};
        for (const auto& bra : basis[s].entries()) {
          for (const auto& ket : basis[s].entries()) {
            Amplitude prod = std::conj(bra.amplitude) * ket.amplitude;
            for (int k = 0; k < d && prod != Amplitude{}; ++k) {
              const auto& e = element(digits[static_cast<std::size_t>(k)], digits[static_cast<std::size_t>(k + d)]);
              const auto row = bra.occupation[static_cast<std::size_t>(k)] * span +
                               bra.occupation[static_cast<std::size_t>(k + d)];
              const auto col = ket.occupation[static_cast<std::size_t>(k)] * span +
                               ket.occupation[static_cast<std::size_t>(k + d)];
              prod *= e(row, col);
            }
            analytic += prod;
          }
        }
        report.max_deviation = std::max(report.max_deviation, std::abs(analytic - direct));
      }
    }
    std::size_t i = modes;
    while (i > 0 && ++digits[i - 1] > n_max) digits[--i] = 0;
    if (i == 0) break;
  }
  return report;
}

}  // namespace sqbsm
