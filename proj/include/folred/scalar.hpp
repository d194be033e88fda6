#pragma once

// Exact scalars: elements of Q(i), optionally adjoined with one square root
// sqrt(D) for a square-free integer D > 1.

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <ostream>
#include <string>

namespace folred {

using Rational = mpq_class;

/// Gaussian rational re + im*i.
struct Gaussian {
  Rational re{0};
  Rational im{0};

  Gaussian() = default;
  Gaussian(Rational r) : re(std::move(r)) { re.canonicalize(); }
  Gaussian(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize();
    im.canonicalize();
  }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  Gaussian conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }

  friend Gaussian operator+(const Gaussian& a, const Gaussian& b) { return {a.re + b.re, a.im + b.im}; }
  friend Gaussian operator-(const Gaussian& a, const Gaussian& b) { return {a.re - b.re, a.im - b.im}; }
  friend Gaussian operator-(const Gaussian& a) { return {-a.re, -a.im}; }
  friend Gaussian operator*(const Gaussian& a, const Gaussian& b);
  friend Gaussian operator/(const Gaussian& a, const Gaussian& b);
  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
};

/// a + b*sqrt(D) with a, b Gaussian rationals. D == 0 means no extension is
/// in use (and b == 0). Values from different extensions cannot be mixed.
class Scalar {
 public:
  Scalar() = default;
  Scalar(long v) : a_(Rational(v)) {}
  Scalar(int v) : a_(Rational(v)) {}
  Scalar(Rational r) : a_(std::move(r)) {}
  Scalar(Gaussian g) : a_(std::move(g)) {}
  Scalar(Gaussian a, Gaussian b, long d);

  static Scalar rational(long num, long den = 1) { return Scalar(Rational(num, den)); }
  static Scalar gaussian(const Rational& re, const Rational& im) { return Scalar(Gaussian(re, im)); }
  static Scalar i() { return Scalar(Gaussian(0, 1)); }
  /// sqrt(n) for a positive integer n; square factors are pulled out.
  static Scalar sqrt_of(long n);

  const Gaussian& base() const { return a_; }
  const Gaussian& ext() const { return b_; }
  long discriminant() const { return d_; }

  bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
  bool is_one() const { return b_.is_zero() && a_.re == 1 && sgn(a_.im) == 0; }
  bool is_rational() const { return b_.is_zero() && a_.is_real(); }
  bool is_gaussian() const { return b_.is_zero(); }
  bool is_real() const { return a_.is_real() && b_.is_real(); }
  /// Only valid for real values.
  int sign() const;
  /// Rational value; requires is_rational().
  const Rational& as_rational() const;

  Scalar conj() const;  // complex conjugation
  Scalar inverse() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(const Scalar& a);

  friend bool operator==(const Scalar& a, const Scalar& b);
  /// Deterministic total order (lexicographic on components); not a field order.
  friend std::strong_ordering lex_compare(const Scalar& a, const Scalar& b);

  /// "a/b+c/d*i" with "+e/f*sqrtD" style extension terms.
  std::string to_string() const;
  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  void normalize();
  long merge_context(const Scalar& o) const;

  Gaussian a_;
  Gaussian b_;
  long d_ = 0;
};

Scalar pow(Scalar base, unsigned exp);

/// Square root inside Q(i) or Q(i)(sqrt D); promotes a Gaussian value to an
/// extension when needed. Empty when no representable root exists.
std::optional<Scalar> exact_sqrt(const Scalar& s);

/// An n-th root in Q(i) (principal among the representable ones), if any.
std::optional<Scalar> exact_root(const Scalar& s, unsigned n);

}  // namespace folred
