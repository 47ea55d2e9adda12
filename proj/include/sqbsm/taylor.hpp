#pragma once

// Truncated power series with complex coefficients, in one variable
// (TaylorSeries) and two variables (TaylorSeries2).

#include <complex>
#include <vector>

namespace sqbsm {

class TaylorSeries {
 public:
  using Coeff = std::complex<double>;

  explicit TaylorSeries(int order);

  static TaylorSeries constant(Coeff c, int order);
  /// The series of x itself.
  static TaylorSeries variable(int order);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  Coeff operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  Coeff& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }

  TaylorSeries& operator+=(const TaylorSeries& o);
  TaylorSeries& operator-=(const TaylorSeries& o);
  TaylorSeries& operator*=(Coeff s);
  friend TaylorSeries operator+(TaylorSeries a, const TaylorSeries& b) { return a += b; }
  friend TaylorSeries operator-(TaylorSeries a, const TaylorSeries& b) { return a -= b; }
  friend TaylorSeries operator*(TaylorSeries a, Coeff s) { return a *= s; }
  friend TaylorSeries operator*(Coeff s, TaylorSeries a) { return a *= s; }
  friend TaylorSeries operator*(const TaylorSeries& a, const TaylorSeries& b);

  /// 1/f; requires f[0] != 0.
  TaylorSeries reciprocal() const;
  /// f^{-1/2} on the principal branch; requires f[0] != 0.
  TaylorSeries rsqrt() const;

  /// Evaluates the truncated polynomial.
  Coeff operator()(Coeff x) const;

 private:
  std::vector<Coeff> c_;
};

/// Series in (x, y) truncated at x^nx and y^ny separately.
class TaylorSeries2 {
 public:
  using Coeff = std::complex<double>;

  TaylorSeries2(int nx, int ny);

  static TaylorSeries2 constant(Coeff c, int nx, int ny);
  static TaylorSeries2 in_x(const TaylorSeries& s, int nx, int ny);
  static TaylorSeries2 in_y(const TaylorSeries& s, int nx, int ny);

  int order_x() const { return nx_; }
  int order_y() const { return ny_; }
  Coeff operator()(int i, int j) const { return c_[idx(i, j)]; }
  Coeff& operator()(int i, int j) { return c_[idx(i, j)]; }
  bool is_zero() const;

  TaylorSeries2& operator+=(const TaylorSeries2& o);
  TaylorSeries2& operator-=(const TaylorSeries2& o);
  TaylorSeries2& operator*=(Coeff s);
  friend TaylorSeries2 operator+(TaylorSeries2 a, const TaylorSeries2& b) { return a += b; }
  friend TaylorSeries2 operator-(TaylorSeries2 a, const TaylorSeries2& b) { return a -= b; }
  friend TaylorSeries2 operator*(TaylorSeries2 a, Coeff s) { return a *= s; }
  friend TaylorSeries2 operator*(Coeff s, TaylorSeries2 a) { return a *= s; }
  friend TaylorSeries2 operator*(const TaylorSeries2& a, const TaylorSeries2& b);

  /// Coefficient of x^i y^j in a * b without forming the product.
  friend Coeff product_coefficient(const TaylorSeries2& a, const TaylorSeries2& b, int i, int j);

 private:
  std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i * (ny_ + 1) + j); }

  int nx_;
  int ny_;
  std::vector<Coeff> c_;
};

}  // namespace sqbsm
