#pragma once

// Bivariate power series in (x, y) truncated at total degree N, with dense
// triangular storage. A jet flagged exact is a polynomial represented in full
// and is never truncated by operations with other exact jets.

#include <string>
#include <vector>

#include "folred/jet1.hpp"
#include "folred/scalar.hpp"

namespace folred {

class Jet2 {
 public:
  /// The exact zero polynomial.
  Jet2() : coeffs_(1), order_(0), exact_(true) {}

  static Jet2 truncated_zero(int order);
  static Jet2 exact_zero() { return Jet2(); }
  static Jet2 constant(Scalar c);
  static Jet2 x() { return monomial(1, 0); }
  static Jet2 y() { return monomial(0, 1); }
  static Jet2 monomial(int i, int j, Scalar c = Scalar(1));

  int order() const { return order_; }
  bool exact() const { return exact_; }

  /// Coefficient of x^i y^j; zero when outside the stored range.
  const Scalar& coeff(int i, int j) const;
  /// Sets a coefficient; an exact jet grows, a truncated one ignores terms past its order.
  void set(int i, int j, Scalar c);
  void add_to(int i, int j, const Scalar& c);

  bool is_zero() const;
  /// Lowest total degree with a nonzero coefficient, -1 for zero.
  int valuation() const;
  /// Highest total degree with a nonzero coefficient, -1 for zero.
  int degree() const;
  /// Largest k with x^k dividing every stored term (order-relative for truncated jets).
  int x_adic_valuation() const;
  int y_adic_valuation() const;
  const Scalar& constant_term() const { return coeff(0, 0); }
  /// Coefficients of the degree-d homogeneous part, indexed by the y exponent.
  std::vector<Scalar> homogeneous(int d) const;

  Jet2 truncated(int order) const;
  /// Drops the exactness flag and truncates at the given order.
  Jet2 as_truncated(int order) const;

  Jet2& operator+=(const Jet2& o);
  Jet2& operator-=(const Jet2& o);
  Jet2& operator*=(const Scalar& c);
  friend Jet2 operator+(Jet2 a, const Jet2& b) { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) { return a -= b; }
  friend Jet2 operator-(Jet2 a) { return a *= Scalar(-1); }
  friend Jet2 operator*(Jet2 a, const Scalar& c) { return a *= c; }
  friend Jet2 operator*(const Scalar& c, Jet2 a) { return a *= c; }
  friend Jet2 operator*(const Jet2& a, const Jet2& b);
  /// Coefficient-wise equality of the known parts (orders and flags must agree).
  friend bool operator==(const Jet2& a, const Jet2& b);
  /// Equality of coefficients through total degree n.
  bool agrees_through(const Jet2& o, int n) const;

  Jet2 derivative_x() const;
  Jet2 derivative_y() const;
  /// Divides by x^i y^j; the monomial must divide every stored term.
  Jet2 divide_monomial(int i, int j) const;

  /// s(X, Y).
  friend Jet2 substitute(const Jet2& s, const Jet2& X, const Jet2& Y);
  /// s(x, y) with y replaced by c*x + t(x) style univariate data is handled by
  /// restrict_to_graph; this evaluates s along (x, f(x)).
  Jet1 along_graph_y(const Jet1& f) const;
  /// s along (f(y), y).
  Jet1 along_graph_x(const Jet1& f) const;
  /// s(t, 0) and s(0, t) as exact univariate data (through the order).
  Jet1 restrict_x_axis() const;
  Jet1 restrict_y_axis() const;

  /// 1/s for a unit s; exact inputs are expanded through `order`.
  friend Jet2 reciprocal(const Jet2& s, int order);

  /// Polynomial text such as "3/4*x^2*y - x + 1".
  std::string to_string() const;

 private:
  Jet2(int order, bool exact);
  static std::size_t index(int i, int j) {
    int d = i + j;
    return static_cast<std::size_t>(d) * (d + 1) / 2 + j;
  }
  void grow(int order);
  void trim();

  std::vector<Scalar> coeffs_;
  int order_;
  bool exact_;
};

/// Order of a result combining the given operands (exact operands do not limit it).
int combined_order(const Jet2& a, const Jet2& b);

}  // namespace folred
