#pragma once

// Exact polynomial algorithms: univariate arithmetic, gcd, square-free
// decomposition and root finding over Q(i) (with one quadratic extension),
// and bivariate gcd / square-free decomposition on exact Jet2 polynomials.

#include <utility>
#include <vector>

#include "folred/jet2.hpp"
#include "folred/scalar.hpp"

namespace folred {

class Poly1 {
 public:
  Poly1() = default;
  Poly1(Scalar c);
  explicit Poly1(std::vector<Scalar> coeffs);
  static Poly1 monomial(int degree, Scalar c = Scalar(1));

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const Scalar& operator[](int k) const { return c_[k]; }
  Scalar coeff(int k) const { return k >= 0 && k <= degree() ? c_[k] : Scalar(0); }
  const Scalar& lead() const { return c_.back(); }
  const std::vector<Scalar>& coeffs() const { return c_; }

  Scalar eval(const Scalar& t) const;
  Poly1 derivative() const;
  Poly1 monic() const;
  /// Multiplicity of the root 0.
  int low_degree() const;

  Poly1& operator+=(const Poly1& o);
  Poly1& operator-=(const Poly1& o);
  friend Poly1 operator+(Poly1 a, const Poly1& b) { return a += b; }
  friend Poly1 operator-(Poly1 a, const Poly1& b) { return a -= b; }
  friend Poly1 operator-(const Poly1& a);
  friend Poly1 operator*(const Poly1& a, const Poly1& b);
  friend bool operator==(const Poly1& a, const Poly1& b) { return a.c_ == b.c_; }

  /// Quotient and remainder.
  friend std::pair<Poly1, Poly1> divmod(const Poly1& a, const Poly1& b);
  friend Poly1 operator/(const Poly1& a, const Poly1& b) { return divmod(a, b).first; }
  friend Poly1 operator%(const Poly1& a, const Poly1& b) { return divmod(a, b).second; }

  std::string to_string(const char* var = "t") const;

 private:
  void trim();
  std::vector<Scalar> c_;
};

/// Monic gcd (zero when both are zero).
Poly1 gcd(const Poly1& a, const Poly1& b);

/// Yun decomposition p = c * prod f_k^k, returned as (f_k, k) with f_k monic, non-constant.
std::vector<std::pair<Poly1, int>> square_free(const Poly1& p);

struct Root {
  Scalar value;
  int multiplicity;
};

/// All roots with multiplicity, sorted by lex_compare. Throws unresolved_locus
/// when a root cannot be represented in Q(i)(sqrt D).
std::vector<Root> roots(const Poly1& p);

/// Roots (s : 1) and (1 : 0) of a binary form h_0 x^d + h_1 x^{d-1} y + ... + h_d y^d
/// given as coefficients indexed by the y exponent. Each root is reported as the
/// slope s of the line y = s x, or as infinity for the line x = 0.
struct Direction {
  bool vertical = false;  // the line x = 0
  Scalar slope;           // y = slope * x otherwise
  int multiplicity = 1;
};
std::vector<Direction> binary_form_roots(const std::vector<Scalar>& h);

/// Monic-normalized (in the lexicographically leading term) bivariate gcd of exact polynomials.
Jet2 gcd(const Jet2& a, const Jet2& b);
/// Exact division of polynomials; b must divide a.
Jet2 exact_divide(const Jet2& a, const Jet2& b);
/// Square-free decomposition of an exact polynomial: f = c * prod g_k^k.
std::vector<std::pair<Jet2, int>> square_free(const Jet2& f);
/// Scales a nonzero exact polynomial so its leading term (lowest degree, then x-heaviest) is 1.
Jet2 normalize_leading(const Jet2& f);

}  // namespace folred
