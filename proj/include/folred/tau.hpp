#pragma once

// Laurent polynomials in a formal unit tau. tau stands for the transcendental
// constant -2*i*pi of holonomy formulas; keeping it symbolic keeps every
// identity checkable with exact rational arithmetic.

#include <map>
#include <string>

#include "folred/scalar.hpp"

namespace folred {

class TauPoly {
 public:
  TauPoly() = default;
  TauPoly(int c) : TauPoly(Scalar(c)) {}
  TauPoly(Scalar c, int exponent = 0);

  static TauPoly tau(int exponent = 1) { return TauPoly(Scalar(1), exponent); }

  const std::map<int, Scalar>& terms() const { return terms_; }
  Scalar coeff(int exponent) const;
  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0); }

  TauPoly& operator+=(const TauPoly& o);
  TauPoly& operator-=(const TauPoly& o);
  TauPoly& operator*=(const TauPoly& o);
  /// Division by a nonzero monomial c*tau^e only.
  TauPoly& operator/=(const TauPoly& o);
  TauPoly& operator*=(const Scalar& s);

  friend TauPoly operator+(TauPoly a, const TauPoly& b) { return a += b; }
  friend TauPoly operator-(TauPoly a, const TauPoly& b) { return a -= b; }
  friend TauPoly operator*(TauPoly a, const TauPoly& b) { return a *= b; }
  friend TauPoly operator/(TauPoly a, const TauPoly& b) { return a /= b; }
  friend TauPoly operator-(const TauPoly& a) { return TauPoly(Scalar(-1)) * a; }
  friend bool operator==(const TauPoly& a, const TauPoly& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  void add(int e, const Scalar& c);
  std::map<int, Scalar> terms_;
};

}  // namespace folred
