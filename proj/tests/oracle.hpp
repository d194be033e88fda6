#pragma once

// Small independent reference implementations used by the tests. They work on
// plain rational containers and share no code with the library.

#include <gmpxx.h>

#include <map>
#include <utility>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Series = std::vector<Q>;                   // c_0 .. c_N
using Poly = std::map<std::pair<int, int>, Q>;  // (i, j) -> coeff of x^i y^j

inline Series mul(const Series& a, const Series& b) {
  std::size_t n = std::min(a.size(), b.size());
  Series r(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; i + j < n; ++j) r[i + j] += a[i] * b[j];
  return r;
}

inline Series power(const Series& a, int k) {
  Series r(a.size(), 0);
  r[0] = 1;
  for (int e = 0; e < k; ++e) r = mul(r, a);
  return r;
}

/// g(f) by summing g_k f^k term by term.
inline Series compose(const Series& g, const Series& f) {
  Series r(std::min(g.size(), f.size()), 0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    Series p = power(f, static_cast<int>(k));
    for (std::size_t n = 0; n < r.size(); ++n) r[n] += g[k] * p[n];
  }
  return r;
}

/// Lagrange inversion: [z^n] f^{-1} = (1/n) [w^{n-1}] (w / f(w))^n.
inline Series lagrange_inverse(const Series& f) {
  std::size_t N = f.size() - 1;
  Series h(N + 1, 0);  // f(w)/w
  for (std::size_t k = 1; k <= N; ++k) h[k - 1] = f[k];
  Series inv_h(N + 1, 0);  // w / f(w)
  inv_h[0] = 1 / h[0];
  for (std::size_t k = 1; k <= N; ++k) {
    Q acc = 0;
    for (std::size_t j = 1; j <= k; ++j) acc += h[j] * inv_h[k - j];
    inv_h[k] = -acc / h[0];
  }
  Series r(N + 1, 0);
  for (std::size_t n = 1; n <= N; ++n) r[n] = power(inv_h, static_cast<int>(n))[n - 1] / Q(static_cast<long>(n));
  return r;
}

inline Poly pmul(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) r[{ea.first + eb.first, ea.second + eb.second}] += ca * cb;
  for (auto it = r.begin(); it != r.end();) it = (it->second == 0) ? r.erase(it) : std::next(it);
  return r;
}

inline Poly padd(Poly a, const Poly& b, const Q& s = 1) {
  for (const auto& [e, c] : b) a[e] += s * c;
  for (auto it = a.begin(); it != a.end();) it = (it->second == 0) ? a.erase(it) : std::next(it);
  return a;
}

inline Poly ppow(const Poly& a, int k) {
  Poly r{{{0, 0}, 1}};
  for (int e = 0; e < k; ++e) r = pmul(r, a);
  return r;
}

/// s(X, Y) by brute-force expansion of every monomial.
inline Poly psubst(const Poly& s, const Poly& X, const Poly& Y) {
  Poly r;
  for (const auto& [e, c] : s) r = padd(r, pmul(ppow(X, e.first), ppow(Y, e.second)), c);
  return r;
}

inline Poly ptrunc(const Poly& a, int n) {
  Poly r;
  for (const auto& [e, c] : a)
    if (e.first + e.second <= n) r[e] = c;
  return r;
}

/// Partial derivatives.
inline Poly pdx(const Poly& a) {
  Poly r;
  for (const auto& [e, c] : a)
    if (e.first > 0) r[{e.first - 1, e.second}] += c * e.first;
  return r;
}
inline Poly pdy(const Poly& a) {
  Poly r;
  for (const auto& [e, c] : a)
    if (e.second > 0) r[{e.first, e.second - 1}] += c * e.second;
  return r;
}

}  // namespace oracle
