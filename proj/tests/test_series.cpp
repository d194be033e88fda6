#include <random>

#include "doctest.h"
#include "folred/error.hpp"
#include "folred/jet1.hpp"
#include "folred/jet2.hpp"
#include "folred/poly.hpp"
#include "folred/scalar.hpp"
#include "folred/tau.hpp"
#include "helpers.hpp"

using namespace folred;
using namespace testing_util;

TEST_SUITE("scalar") {
  TEST_CASE("gaussian arithmetic is exact") {
    Scalar a = Scalar::gaussian(Rational(1, 2), 1), b = Scalar::gaussian(-3, Rational(2, 3));
    CHECK((a * b) / b == a);
    CHECK((a + b) - b == a);
    CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
    CHECK((a * a.inverse()).is_one());
  }

  TEST_CASE("quadratic extension") {
    Scalar r5 = Scalar::sqrt_of(5);
    CHECK(r5 * r5 == Scalar(5));
    Scalar phi = (Scalar(1) + r5) / Scalar(2);
    CHECK(phi * phi == phi + Scalar(1));
    CHECK(phi.sign() > 0);
    CHECK(((Scalar(1) - r5) / Scalar(2)).sign() < 0);
    CHECK((phi * phi.inverse()).is_one());
    CHECK_THROWS_AS(r5 + Scalar::sqrt_of(3), Error);
    CHECK(Scalar::sqrt_of(12) == Scalar(2) * Scalar::sqrt_of(3));
  }

  TEST_CASE("square roots") {
    CHECK(*exact_sqrt(Scalar(-4)) * *exact_sqrt(Scalar(-4)) == Scalar(-4));
    auto s = exact_sqrt(Scalar::gaussian(0, 2));  // 1 + i
    REQUIRE(s);
    CHECK(*s * *s == Scalar::gaussian(0, 2));
    auto t = exact_sqrt(Scalar(Rational(5, 4)));
    REQUIRE(t);
    CHECK(*t * *t == Scalar(Rational(5, 4)));
    auto r = exact_root(Scalar(-8), 3);
    REQUIRE(r);
    CHECK(pow(*r, 3) == Scalar(-8));
  }

  TEST_CASE("ring laws hold exactly on random values") {
    std::mt19937 rng(7);
    for (int n = 0; n < 200; ++n) {
      Scalar a = random_rational(rng) + Scalar::i() * random_rational(rng);
      Scalar b = random_rational(rng) + Scalar::i() * random_rational(rng);
      Scalar c = random_rational(rng) + Scalar::i() * random_rational(rng);
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b) * c == a * (b * c));
    }
  }

  TEST_CASE("printing") {
    CHECK(Scalar::rational(3, 4).to_string() == "3/4");
    CHECK(Scalar::gaussian(Rational(1, 2), -1).to_string() == "1/2-i");
    CHECK(Scalar::sqrt_of(5).to_string() == "sqrt5");
  }
}

TEST_SUITE("jet1") {
  TEST_CASE("compose") {
    Jet1 f = jet1(4, {0, 1, 1});
    CHECK(compose(Jet1::identity(4), f) == f);
    CHECK(compose(jet1(4, {0, 0, 1}), f) == jet1(4, {0, 0, 1, 2, 1}));
    // z/(1-z) composed with itself is z/(1-2z): geometric series oracle.
    Jet1 g = jet1(4, {0, 1, 1, 1, 1});
    oracle::Series geo{0, 1, 2, 4, 8};
    CHECK(compose(g, g) == from_series(geo));
    CHECK_THROWS_AS(compose(g, jet1(4, {1, 1})), Error);
  }

  TEST_CASE("invert") {
    Jet1 a = jet1(5, {0, 3});
    CHECK(invert(a) == Jet1(5, {Scalar(0), Scalar(Rational(1, 3))}));
    Jet1 f = jet1(3, {0, 1, 1});
    CHECK(invert(f) == jet1(3, {0, 1, -1, 2}));
    CHECK(invert(f) == from_series(oracle::lagrange_inverse({0, 1, 1, 0})));
    Jet1 g = jet1(3, {0, 1, 1, 1});
    CHECK(invert(g) == jet1(3, {0, 1, -1, 1}));
    CHECK_THROWS_AS(invert(jet1(3, {0, 0, 1})), Error);
  }

  TEST_CASE("invert round trip on random jets") {
    std::mt19937 rng(11);
    for (int n = 0; n < 100; ++n) {
      Jet1 f(8);
      f[1] = random_rational(rng);
      if (f[1].is_zero()) f[1] = Scalar(1);
      for (int k = 2; k <= 8; ++k) f[k] = random_rational(rng);
      CHECK(compose(invert(f), f) == Jet1::identity(8));
      CHECK(compose(f, invert(f)) == Jet1::identity(8));
    }
  }

  TEST_CASE("lagrange oracle agrees on random jets") {
    std::mt19937 rng(5);
    for (int n = 0; n < 20; ++n) {
      oracle::Series s(7, 0);
      s[1] = 1 + n % 3;
      for (int k = 2; k < 7; ++k) s[k] = random_rational(rng).as_rational();
      CHECK(invert(from_series(s)) == from_series(oracle::lagrange_inverse(s)));
    }
  }

  TEST_CASE("exp, reciprocal and roots") {
    Jet1 h = Jet1::identity(6);
    Jet1 e = exp_series(h);
    Rational fact = 1;
    for (int k = 0; k <= 6; ++k) {
      if (k) fact *= k;
      CHECK(e[k] == Scalar(Rational(1) / fact));
    }
    Jet1 one_minus = jet1(6, {1, -1});
    CHECK(reciprocal(one_minus) == jet1(6, {1, 1, 1, 1, 1, 1, 1}));
    Jet1 sq = jet1(6, {1, 2, 1});
    CHECK(root_series(sq, 2) == jet1(6, {1, 1}));
  }

  TEST_CASE("truncation consistency") {
    std::mt19937 rng(3);
    for (int n = 0; n < 20; ++n) {
      Jet1 f(9), g(9);
      for (int k = 1; k <= 9; ++k) f[k] = random_rational(rng), g[k] = random_rational(rng);
      g[0] = random_rational(rng);
      CHECK(compose(g, f).truncated(5) == compose(g.truncated(5), f.truncated(5)));
      CHECK((g * f).truncated(4) == g.truncated(4) * f.truncated(4));
    }
  }
}

TEST_SUITE("jet2") {
  TEST_CASE("substitute examples") {
    Jet2 x = Jet2::x(), y = Jet2::y();
    CHECK(substitute(x + y, x * x, x * y) == x * x + x * y);
    CHECK(substitute(x * y, x, y * x) == x * x * y);
    // 1/(1-x) at order 4 evaluated at x + x^2: brute-force expansion oracle.
    Jet2 s = Jet2::truncated_zero(4);
    for (int k = 0; k <= 4; ++k) s.set(k, 0, Scalar(1));
    Jet2 r = substitute(s, x + x * x, Jet2());
    oracle::Poly X{{{1, 0}, 1}, {{2, 0}, 1}};
    oracle::Poly acc;
    for (int k = 0; k <= 4; ++k) acc = oracle::padd(acc, oracle::ppow(X, k));
    CHECK(to_poly(r) == oracle::ptrunc(acc, 4));
    CHECK(r.order() == 4);
    CHECK_FALSE(r.exact());
    for (int k : {0, 1}) CHECK(r.coeff(k, 0) == Scalar(1));
    CHECK(r.coeff(2, 0) == Scalar(2));
    CHECK(r.coeff(3, 0) == Scalar(3));
    CHECK(r.coeff(4, 0) == Scalar(5));
    CHECK_THROWS_AS(substitute(s, x + Jet2::constant(1), y), Error);
    // Exact polynomials accept arbitrary substitutions.
    CHECK(substitute(x * x, x + Jet2::constant(1), y) == x * x + x * Scalar(2) + Jet2::constant(1));
  }

  TEST_CASE("exactness flag") {
    Jet2 x = Jet2::x();
    Jet2 p = x * x * x;
    CHECK(p.exact());
    CHECK(p.order() == 3);
    Jet2 t = Jet2::truncated_zero(2) + x;
    Jet2 q = p * t;
    CHECK_FALSE(q.exact());
    CHECK(q.order() == 2);
    CHECK(q.is_zero());
  }

  TEST_CASE("substitute is a ring morphism on random data") {
    std::mt19937 rng(17);
    for (int n = 0; n < 25; ++n) {
      Jet2 s = from_poly(random_poly(rng, 3, false)).as_truncated(6);
      Jet2 t = from_poly(random_poly(rng, 3, false)).as_truncated(6);
      Jet2 X = from_poly(random_poly(rng, 2, true)).as_truncated(6);
      Jet2 Y = from_poly(random_poly(rng, 2, true)).as_truncated(6);
      CHECK(substitute(s * t, X, Y) == substitute(s, X, Y) * substitute(t, X, Y));
      CHECK(substitute(s + t, X, Y) == substitute(s, X, Y) + substitute(t, X, Y));
    }
  }

  TEST_CASE("substitute agrees with brute-force expansion") {
    std::mt19937 rng(23);
    for (int n = 0; n < 25; ++n) {
      auto ps = random_poly(rng, 4, false), pX = random_poly(rng, 3, true), pY = random_poly(rng, 3, true);
      Jet2 exact = substitute(from_poly(ps), from_poly(pX), from_poly(pY));
      CHECK(exact.exact());
      CHECK(to_poly(exact) == oracle::psubst(ps, pX, pY));
      Jet2 trunc = substitute(from_poly(ps).as_truncated(5), from_poly(pX), from_poly(pY));
      CHECK(to_poly(trunc) == oracle::ptrunc(oracle::psubst(ps, pX, pY), 5));
    }
  }

  TEST_CASE("truncation consistency") {
    std::mt19937 rng(29);
    for (int n = 0; n < 20; ++n) {
      Jet2 a = from_poly(random_poly(rng, 4, false)), b = from_poly(random_poly(rng, 4, false));
      CHECK((a.as_truncated(7) * b.as_truncated(7)).truncated(4) == a.as_truncated(4) * b.as_truncated(4));
    }
  }

  TEST_CASE("reciprocal") {
    Jet2 u = Jet2::constant(1) + Jet2::x() + Jet2::y() * Jet2::y();
    Jet2 r = reciprocal(u, 6);
    Jet2 one = Jet2::truncated_zero(6);
    one.set(0, 0, Scalar(1));
    CHECK(u * r == one);
  }

  TEST_CASE("derivatives and division") {
    Jet2 f = Jet2::x() * Jet2::x() * Jet2::y() * Scalar(3);
    CHECK(f.derivative_x() == Jet2::x() * Jet2::y() * Scalar(6));
    CHECK(f.derivative_y() == Jet2::x() * Jet2::x() * Scalar(3));
    CHECK(f.divide_monomial(2, 1) == Jet2::constant(3));
    CHECK(f.to_string() == "3*x^2*y");
  }
}

TEST_SUITE("poly") {
  TEST_CASE("univariate roots") {
    // (t - 1)^2 (t + 2) (t^2 + 1)
    Poly1 p = Poly1({Scalar(-1), Scalar(1)}) * Poly1({Scalar(-1), Scalar(1)}) * Poly1({Scalar(2), Scalar(1)}) *
              Poly1({Scalar(1), Scalar(0), Scalar(1)});
    auto rs = roots(p);
    REQUIRE(rs.size() == 4);
    int total = 0;
    for (const auto& r : rs) {
      CHECK(p.eval(r.value).is_zero());
      total += r.multiplicity;
    }
    CHECK(total == 5);
    Poly1 q({Scalar(-5), Scalar(0), Scalar(1)});
    auto qs = roots(q);
    REQUIRE(qs.size() == 2);
    CHECK(qs[0].value * qs[0].value == Scalar(5));
    Poly1 cubic({Scalar(-2), Scalar(0), Scalar(0), Scalar(1)});
    CHECK_THROWS_AS(roots(cubic), Error);
  }

  TEST_CASE("bivariate gcd and square-free") {
    Jet2 x = Jet2::x(), y = Jet2::y();
    Jet2 a = (y - x * x) * (x + y), b = (y - x * x) * (x - y * Scalar(2));
    CHECK(gcd(a, b) == normalize_leading(y - x * x));
    Jet2 f = x * x * (y - x * x) * (y - x * x) * (y - x * x) * (x + y);
    auto sf = square_free(f);
    Jet2 prod = Jet2::constant(1);
    for (auto& [g, k] : sf)
      for (int e = 0; e < k; ++e) prod = prod * g;
    CHECK(normalize_leading(prod) == normalize_leading(f));
    REQUIRE(sf.size() == 3);
    CHECK(sf[0].second == 1);
    CHECK(sf[1].second == 2);
    CHECK(sf[2].second == 3);
  }
}

TEST_SUITE("tau") {
  TEST_CASE("laurent arithmetic") {
    TauPoly t = TauPoly::tau();
    TauPoly a = t * t + TauPoly(3);
    CHECK((a / t).coeff(1) == Scalar(1));
    CHECK((a / t).coeff(-1) == Scalar(3));
    CHECK(a - a == TauPoly());
  }
}
