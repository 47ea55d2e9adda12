#include "sqbsm/taylor.hpp"

#include <algorithm>
#include <complex>
#include <stdexcept>

namespace sqbsm {

TaylorSeries::TaylorSeries(int order) {
  if (order < 0) throw std::domain_error("series order must be non-negative");
  c_.assign(static_cast<std::size_t>(order) + 1, Coeff{});
}

TaylorSeries TaylorSeries::constant(Coeff c, int order) {
  TaylorSeries s(order);
  s[0] = c;
  return s;
}

TaylorSeries TaylorSeries::variable(int order) {
  TaylorSeries s(order);
  if (order >= 1) s[1] = 1.0;
  return s;
}

TaylorSeries& TaylorSeries::operator+=(const TaylorSeries& o) {
  if (o.order() != order()) throw std::domain_error("series order mismatch");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

TaylorSeries& TaylorSeries::operator-=(const TaylorSeries& o) {
  if (o.order() != order()) throw std::domain_error("series order mismatch");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

TaylorSeries& TaylorSeries::operator*=(Coeff s) {
  for (auto& c : c_) c *= s;
  return *this;
}

TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b) {
  if (a.order() != b.order()) throw std::domain_error("series order mismatch");
  const int n = a.order();
  TaylorSeries out(n);
  for (int i = 0; i <= n; ++i) {
    if (a[i] == TaylorSeries::Coeff{}) continue;
    for (int j = 0; i + j <= n; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

TaylorSeries TaylorSeries::reciprocal() const {
  if (c_[0] == Coeff{}) throw std::domain_error("reciprocal of a series with zero constant term");
  const int n = order();
  TaylorSeries g(n);
  g[0] = 1.0 / c_[0];
  for (int k = 1; k <= n; ++k) {
    Coeff s{};
    for (int j = 1; j <= k; ++j) s += c_[static_cast<std::size_t>(j)] * g[k - j];
    g[k] = -s / c_[0];
  }
  return g;
}

TaylorSeries TaylorSeries::rsqrt() const {
  if (c_[0] == Coeff{}) throw std::domain_error("rsqrt of a series with zero constant term");
  // g = f^a with a = -1/2 satisfies f g' = a f' g:
  // k f0 g_k = sum_{j=1..k} (a j - (k - j)) f_j g_{k-j}
  const double a = -0.5;
  const int n = order();
  TaylorSeries g(n);
  g[0] = 1.0 / std::sqrt(c_[0]);
  for (int k = 1; k <= n; ++k) {
    Coeff s{};
    for (int j = 1; j <= k; ++j) s += (a * j - (k - j)) * c_[static_cast<std::size_t>(j)] * g[k - j];
    g[k] = s / (static_cast<double>(k) * c_[0]);
  }
  return g;
}

TaylorSeries::Coeff TaylorSeries::operator()(Coeff x) const {
  Coeff v{};
  for (int k = order(); k >= 0; --k) v = v * x + c_[static_cast<std::size_t>(k)];
  return v;
}

TaylorSeries2::TaylorSeries2(int nx, int ny) : nx_(nx), ny_(ny) {
  if (nx < 0 || ny < 0) throw std::domain_error("series order must be non-negative");
  c_.assign(static_cast<std::size_t>((nx + 1) * (ny + 1)), Coeff{});
}

TaylorSeries2 TaylorSeries2::constant(Coeff c, int nx, int ny) {
  TaylorSeries2 s(nx, ny);
  s(0, 0) = c;
  return s;
}

TaylorSeries2 TaylorSeries2::in_x(const TaylorSeries& s, int nx, int ny) {
  TaylorSeries2 out(nx, ny);
  for (int i = 0; i <= std::min(nx, s.order()); ++i) out(i, 0) = s[i];
  return out;
}

TaylorSeries2 TaylorSeries2::in_y(const TaylorSeries& s, int nx, int ny) {
  TaylorSeries2 out(nx, ny);
  for (int j = 0; j <= std::min(ny, s.order()); ++j) out(0, j) = s[j];
  return out;
}

bool TaylorSeries2::is_zero() const {
  for (const auto& c : c_) {
    if (c != Coeff{}) return false;
  }
  return true;
}

TaylorSeries2& TaylorSeries2::operator+=(const TaylorSeries2& o) {
  if (o.nx_ != nx_ || o.ny_ != ny_) throw std::domain_error("series order mismatch");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

TaylorSeries2& TaylorSeries2::operator-=(const TaylorSeries2& o) {
  if (o.nx_ != nx_ || o.ny_ != ny_) throw std::domain_error("series order mismatch");
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

TaylorSeries2& TaylorSeries2::operator*=(Coeff s) {
  for (auto& c : c_) c *= s;
  return *this;
}

TaylorSeries2 operator*(const TaylorSeries2& a, const TaylorSeries2& b) {
  if (a.nx_ != b.nx_ || a.ny_ != b.ny_) throw std::domain_error("series order mismatch");
  TaylorSeries2 out(a.nx_, a.ny_);
  for (int i1 = 0; i1 <= a.nx_; ++i1) {
    for (int j1 = 0; j1 <= a.ny_; ++j1) {
      const auto ca = a(i1, j1);
      if (ca == TaylorSeries2::Coeff{}) continue;
      for (int i2 = 0; i1 + i2 <= a.nx_; ++i2) {
        for (int j2 = 0; j1 + j2 <= a.ny_; ++j2) out(i1 + i2, j1 + j2) += ca * b(i2, j2);
      }
    }
  }
  return out;
}

TaylorSeries2::Coeff product_coefficient(const TaylorSeries2& a, const TaylorSeries2& b, int i, int j) {
  TaylorSeries2::Coeff s{};
  for (int i1 = 0; i1 <= i; ++i1) {
    for (int j1 = 0; j1 <= j; ++j1) s += a(i1, j1) * b(i - i1, j - j1);
  }
  return s;
}

}  // namespace sqbsm
