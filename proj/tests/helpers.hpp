#pragma once

#include <random>

#include "doctest.h"

#include "folred/jet2.hpp"
#include "oracle.hpp"

namespace testing_util {

using folred::Jet1;
using folred::Jet2;
using folred::Scalar;

inline Jet2 from_poly(const oracle::Poly& p) {
  Jet2 r;
  for (const auto& [e, c] : p) r.set(e.first, e.second, Scalar(c));
  return r;
}

inline oracle::Poly to_poly(const Jet2& j) {
  oracle::Poly p;
  for (int d = 0; d <= j.order(); ++d)
    for (int b = 0; b <= d; ++b) {
      const Scalar& c = j.coeff(d - b, b);
      if (!c.is_zero()) p[{d - b, b}] = c.as_rational();
    }
  return p;
}

inline Jet1 from_series(const oracle::Series& s) {
  Jet1 r(static_cast<int>(s.size()) - 1);
  for (std::size_t k = 0; k < s.size(); ++k) r[static_cast<int>(k)] = Scalar(s[k]);
  return r;
}

inline Jet1 jet1(int order, std::initializer_list<long> c) {
  Jet1 r(order);
  int k = 0;
  for (long v : c) {
    if (k <= order) r[k] = Scalar(v);
    ++k;
  }
  return r;
}

inline Scalar random_rational(std::mt19937& rng, int range = 5) {
  std::uniform_int_distribution<int> num(-range, range), den(1, 3);
  return Scalar::rational(num(rng), den(rng));
}

inline oracle::Poly random_poly(std::mt19937& rng, int degree, bool vanish_at_origin) {
  oracle::Poly p;
  std::uniform_int_distribution<int> num(-3, 3), den(1, 2), keep(0, 2);
  for (int d = vanish_at_origin ? 1 : 0; d <= degree; ++d)
    for (int j = 0; j <= d; ++j)
      if (keep(rng) == 0) {
        int n = num(rng);
        if (n) {
          oracle::Q c(n, den(rng));
          c.canonicalize();
          p[{d - j, j}] = c;
        }
      }
  return p;
}

}  // namespace testing_util

namespace doctest {
template <>
struct StringMaker<folred::Jet2> {
  static String convert(const folred::Jet2& j) { return (j.to_string() + (j.exact() ? " [exact]" : "")).c_str(); }
};
template <>
struct StringMaker<folred::Jet1> {
  static String convert(const folred::Jet1& j) { return j.to_string().c_str(); }
};
}  // namespace doctest
