#pragma once

// Truncated univariate power series c_0 + c_1 z + ... + c_N z^N.

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

#include "folred/error.hpp"
#include "folred/scalar.hpp"

namespace folred {

template <class R>
class UniSeries {
 public:
  UniSeries() : coeffs_(1, R(0)) {}
  explicit UniSeries(int order) : coeffs_(static_cast<std::size_t>(check_order(order)) + 1, R(0)) {}
  UniSeries(int order, std::initializer_list<R> c) : UniSeries(order) {
    std::size_t k = 0;
    for (const R& v : c) {
      if (k <= static_cast<std::size_t>(order)) coeffs_[k] = v;
      ++k;
    }
  }

  static UniSeries identity(int order) {
    UniSeries s(order);
    if (order >= 1) s.coeffs_[1] = R(1);
    return s;
  }
  static UniSeries monomial(int order, int degree, R c = R(1)) {
    UniSeries s(order);
    if (degree <= order) s.coeffs_[degree] = std::move(c);
    return s;
  }

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const R& operator[](int k) const { return coeffs_[k]; }
  R& operator[](int k) { return coeffs_[k]; }
  /// Coefficient with zero beyond the order (callers must respect truncation).
  R coeff(int k) const { return k <= order() ? coeffs_[k] : R(0); }
  const std::vector<R>& coeffs() const { return coeffs_; }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const R& c) { return c.is_zero(); });
  }
  /// Index of the first nonzero coefficient, or -1.
  int valuation() const {
    for (int k = 0; k <= order(); ++k)
      if (!coeffs_[k].is_zero()) return k;
    return -1;
  }

  UniSeries truncated(int order) const {
    UniSeries s(std::min(order, this->order()));
    std::copy_n(coeffs_.begin(), s.coeffs_.size(), s.coeffs_.begin());
    return s;
  }

  UniSeries& operator+=(const UniSeries& o) {
    shrink_to(o.order());
    for (int k = 0; k <= order(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  UniSeries& operator-=(const UniSeries& o) {
    shrink_to(o.order());
    for (int k = 0; k <= order(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  template <class S>
  UniSeries& scale(const S& c) {
    for (auto& v : coeffs_) v *= c;
    return *this;
  }
  friend UniSeries operator+(UniSeries a, const UniSeries& b) { return a += b; }
  friend UniSeries operator-(UniSeries a, const UniSeries& b) { return a -= b; }
  friend UniSeries operator-(UniSeries a) {
    for (auto& v : a.coeffs_) v = -v;
    return a;
  }
  friend UniSeries operator*(const UniSeries& a, const UniSeries& b) {
    int n = std::min(a.order(), b.order());
    UniSeries r(n);
    int va = a.valuation(), vb = b.valuation();
    if (va < 0 || vb < 0) return r;
    for (int i = va; i <= n; ++i) {
      if (a.coeffs_[i].is_zero()) continue;
      for (int j = vb; i + j <= n; ++j)
        if (!b.coeffs_[j].is_zero()) r.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return r;
  }
  friend bool operator==(const UniSeries& a, const UniSeries& b) {
    return a.order() == b.order() && std::equal(a.coeffs_.begin(), a.coeffs_.end(), b.coeffs_.begin());
  }

  UniSeries derivative() const {
    UniSeries r(std::max(order() - 1, 0));
    for (int k = 1; k <= order(); ++k) r.coeffs_[k - 1] = coeffs_[k] * R(k);
    return r;
  }

  std::string to_string(const std::string& var = "z") const {
    std::string s;
    for (int k = 0; k <= order(); ++k) {
      if (coeffs_[k].is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + coeffs_[k].to_string() + ")";
      if (k) s += "*" + var + (k > 1 ? "^" + std::to_string(k) : "");
    }
    return (s.empty() ? "0" : s) + " + O(" + var + "^" + std::to_string(order() + 1) + ")";
  }

 private:
  static int check_order(int order) {
    if (order < 0) fail(ErrorCode::precondition, "negative truncation order");
    return order;
  }
  void shrink_to(int n) {
    if (n < order()) coeffs_.resize(static_cast<std::size_t>(n) + 1);
  }

  std::vector<R> coeffs_;
};

/// g o f; requires f(0) == 0. Exact through min(order g, order f).
template <class R>
UniSeries<R> compose(const UniSeries<R>& g, const UniSeries<R>& f) {
  if (!f[0].is_zero()) fail(ErrorCode::precondition, "composition g(f) needs f(0) = 0");
  int n = std::min(g.order(), f.order());
  UniSeries<R> acc(n);
  for (int k = g.order(); k >= 0; --k) {
    acc = acc * f;
    acc[0] += g[k];
  }
  return acc.truncated(n);
}

/// f o f o ... o f (q times).
template <class R>
UniSeries<R> iterate(const UniSeries<R>& f, int q) {
  if (q < 1) fail(ErrorCode::precondition, "iteration count must be positive");
  UniSeries<R> r = f;
  for (int k = 1; k < q; ++k) r = compose(r, f);
  return r;
}

/// Compositional inverse; f(0) = 0 and f'(0) invertible.
template <class R>
UniSeries<R> invert(const UniSeries<R>& f) {
  if (!f[0].is_zero()) fail(ErrorCode::precondition, "inverse needs f(0) = 0");
  if (f.order() < 1 || f[1].is_zero()) fail(ErrorCode::precondition, "inverse needs a nonzero linear coefficient");
  int n = f.order();
  R a = f[1];
  UniSeries<R> g(n);
  g[1] = R(1) / a;
  for (int k = 2; k <= n; ++k) {
    UniSeries<R> e = compose(f, g);
    // coefficient k of f(g) is a*g_k + (terms in g_1..g_{k-1})
    g[k] -= e[k] / a;
  }
  return g;
}

/// 1/f; f(0) invertible.
template <class R>
UniSeries<R> reciprocal(const UniSeries<R>& f) {
  if (f[0].is_zero()) fail(ErrorCode::precondition, "reciprocal of a non-unit series");
  int n = f.order();
  UniSeries<R> r(n);
  R inv0 = R(1) / f[0];
  r[0] = inv0;
  for (int k = 1; k <= n; ++k) {
    R acc(0);
    for (int j = 1; j <= k; ++j) acc += f[j] * r[k - j];
    r[k] = -acc * inv0;
  }
  return r;
}

/// exp(h) for h(0) = 0.
template <class R>
UniSeries<R> exp_series(const UniSeries<R>& h) {
  if (!h[0].is_zero()) fail(ErrorCode::precondition, "exp of a series with nonzero constant term");
  int n = h.order();
  // E' = h' E, solved coefficient-wise.
  UniSeries<R> e(n);
  e[0] = R(1);
  UniSeries<R> dh = h.derivative();
  for (int k = 1; k <= n; ++k) {
    R acc(0);
    for (int j = 1; j <= k; ++j) acc += dh[j - 1] * e[k - j];
    e[k] = acc / R(k);
  }
  return e;
}

/// (1 + h)^(1/q) with h(0) = 0, principal branch (constant term 1).
template <class R>
UniSeries<R> root_series(const UniSeries<R>& one_plus_h, int q) {
  if (!(one_plus_h[0] == R(1))) fail(ErrorCode::precondition, "root_series needs constant term 1");
  if (q < 1) fail(ErrorCode::precondition, "root index must be positive");
  int n = one_plus_h.order();
  UniSeries<R> h = one_plus_h;
  h[0] = R(0);
  UniSeries<R> r(n), power = UniSeries<R>::monomial(n, 0);
  R binom(1);
  Rational e(1, q);
  for (int j = 0; j <= n; ++j) {
    r += UniSeries<R>(power).scale(binom);
    binom = binom * R(Rational(e - j)) / R(j + 1);
    power = power * h;
  }
  return r;
}

using Jet1 = UniSeries<Scalar>;

}  // namespace folred
