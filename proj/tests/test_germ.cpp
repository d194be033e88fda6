#include <random>

#include "doctest.h"
#include "folred/error.hpp"
#include "folred/germ.hpp"
#include "helpers.hpp"

using namespace folred;
using namespace testing_util;

namespace {

Jet2 X() { return Jet2::x(); }
Jet2 Y() { return Jet2::y(); }
Jet2 C(long v) { return Jet2::constant(Scalar(v)); }

FoliationGerm form(const Jet2& a, const Jet2& b) { return FoliationGerm::from_form(a, b); }

// x dy - lambda y dx
FoliationGerm linear(const Scalar& lambda) { return form(-(Y() * lambda), X()); }

FoliationGerm pullback_linear(const FoliationGerm& f, const Scalar& l11, const Scalar& l12, const Scalar& l21,
                              const Scalar& l22) {
  Jet2 x = X() * l11 + Y() * l12, y = X() * l21 + Y() * l22;
  Jet2 a = substitute(f.a(), x, y), b = substitute(f.b(), x, y);
  return form(a * l11 + b * l21, a * l12 + b * l22);
}

}  // namespace

TEST_SUITE("germ") {
  TEST_CASE("normalization") {
    FoliationGerm f = form(X() * Y() * Y(), X() * X() * Y());  // xy (y dx + x dy)
    CHECK(f.removed_x() == 1);
    CHECK(f.removed_y() == 1);
    CHECK(f.a() == Y());
    CHECK(f.b() == X());
    CHECK_THROWS_AS(form(Jet2(), Jet2()), Error);
    try {
      form((X() + Y()) * X(), (X() + Y()) * Y());
      FAIL("expected a non-isolated error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::non_isolated);
    }
    // common factor that is a unit at the origin is harmless
    CHECK_NOTHROW(form((C(1) + X()) * Y(), (C(1) + X()) * X()));
  }

  TEST_CASE("linear classification examples") {
    LinearClass d = linear_classify(linear(Scalar(-2)));
    CHECK(d.tag == LinearTag::reduced_nondegenerate);
    CHECK(*d.lambda == Scalar(-2));
    CHECK(d.p == 2);
    CHECK(d.q == 1);
    LinearClass one = linear_classify(linear(Scalar(1)));
    CHECK(one.tag == LinearTag::non_reduced);
    LinearClass two = linear_classify(form(-(Y() * Scalar(2)), X()));
    CHECK(two.tag == LinearTag::non_reduced);
    CHECK(linear_classify(form(Y(), X())).lambda == Scalar(-1));
    CHECK(linear_classify(form(C(0), C(1))).tag == LinearTag::regular);
    // nilpotent: d(y^2 - x^3)
    CHECK(linear_classify(form(-(X() * X() * Scalar(3)), Y() * Scalar(2))).tag == LinearTag::non_reduced);
    // saddle-node x d/dx + y^2 d/dy
    LinearClass sn = linear_classify(FoliationGerm::from_vector_field(X(), Y() * Y()));
    CHECK(sn.tag == LinearTag::saddle_node);
    CHECK(*sn.lambda == Scalar(0));
    // a resonant saddle with nonlinear terms
    CHECK(linear_classify(form(-(Y() * Scalar(-1)) - X() * Y() * Y(), X())).tag ==
          LinearTag::resonant_rational_negative);
  }

  TEST_CASE("irrational ratio from trace 3 and determinant 1") {
    // vector field (2x + y) d/dx + (x + y) d/dy
    FoliationGerm f = FoliationGerm::from_vector_field(X() * Scalar(2) + Y(), X() + Y());
    LinearClass lc = linear_classify(f);
    CHECK(lc.trace == Scalar(3));
    CHECK(lc.det == Scalar(1));
    CHECK(lc.discriminant == Scalar(5));
    CHECK(lc.tag == LinearTag::reduced_nondegenerate);
    REQUIRE(lc.lambda);
    const Scalar& l = *lc.lambda;
    // oracle: the eigenvalues are the roots of m^2 - 3m + 1, so lambda + 1/lambda = (t^2 - 2d)/d = 7
    CHECK(l + l.inverse() == Scalar(7));
    CHECK_FALSE(l.is_rational());
    CHECK(l.discriminant() == 5);
    for (const auto& d : lc.directions) {
      Scalar mu = d.eigenvalue;
      CHECK(mu * mu - Scalar(3) * mu + Scalar(1) == Scalar(0));
    }
  }

  TEST_CASE("classification is invariant under linear changes") {
    std::mt19937 rng(41);
    std::vector<FoliationGerm> germs{linear(Scalar(-2)), linear(Scalar::rational(-1, 3)),
                                     FoliationGerm::from_vector_field(X() * Scalar(2) + Y(), X() + Y()),
                                     FoliationGerm::from_vector_field(X(), Y() * Y()), linear(Scalar(1)),
                                     form(Y() + X() * X(), X() - Y() * Y() * Scalar(3))};
    for (const auto& g : germs) {
      LinearClass ref = linear_classify(g);
      for (int n = 0; n < 10; ++n) {
        Scalar l11 = random_rational(rng), l12 = random_rational(rng), l21 = random_rational(rng),
               l22 = random_rational(rng);
        if ((l11 * l22 - l12 * l21).is_zero()) continue;
        LinearClass lc = linear_classify(pullback_linear(g, l11, l12, l21, l22));
        CHECK(lc.tag == ref.tag);
        CHECK(lc.lambda.has_value() == ref.lambda.has_value());
        if (lc.lambda) CHECK(*lc.lambda == *ref.lambda);
      }
    }
  }

  TEST_CASE("tangency divisor examples") {
    DivisorGerm unit = tangency_divisor(form(C(0), C(1)), form(C(1), C(0)), 8);
    CHECK(unit.empty());
    CHECK(unit.defining == C(-1));
    for (auto [l1, l2] : {std::pair{-1, -2}, {3, -1}, {2, 5}}) {
      DivisorGerm t = tangency_divisor(linear(Scalar(l1)), linear(Scalar(l2)), 8);
      // wedge oracle: (-l1 y)(x) - (-l2 y)(x) = (l2 - l1) x y
      CHECK(t.defining == X() * Y() * Scalar(l2 - l1));
      REQUIRE(t.branches.size() == 2);
      CHECK(t.branches[0].equation == Y());
      CHECK(t.branches[1].equation == X());
      CHECK(t.branches[0].multiplicity == 1);
      CHECK(t.branches[1].multiplicity == 1);
    }
    for (int k = 1; k <= 3; ++k) {
      Jet2 xk1 = Jet2::monomial(k + 1, 0);
      DivisorGerm t = tangency_divisor(form(C(0), C(1)), form(xk1.derivative_x(), C(1)), 8);
      CHECK(t.defining == -(Jet2::monomial(k, 0, Scalar(k + 1))));
      REQUIRE(t.branches.size() == 1);
      CHECK(t.branches[0].equation == X());
      CHECK(t.branches[0].multiplicity == k);
    }
    try {
      tangency_divisor(linear(Scalar(-1)), linear(Scalar(-1)), 8);
      FAIL("expected identical foliations");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::identical_foliations);
    }
  }

  TEST_CASE("tangency divisor properties on random pairs") {
    std::mt19937 rng(43);
    for (int n = 0; n < 30; ++n) {
      FoliationGerm f1 = form(from_poly(random_poly(rng, 3, n % 2 == 0)) + X() * Scalar(n % 3),
                              from_poly(random_poly(rng, 3, n % 2 == 0)) + Y());
      FoliationGerm f2 = form(from_poly(random_poly(rng, 3, true)) + X(), from_poly(random_poly(rng, 3, true)) + Y());
      Jet2 w = wedge(f1, f2);
      if (w.is_zero()) continue;
      DivisorGerm t12, t21;
      try {
        t12 = tangency_divisor(f1, f2, 6);
        t21 = tangency_divisor(f2, f1, 6);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::unresolved_locus);
        continue;
      }
      CHECK(t12.defining == -t21.defining);
      REQUIRE(t12.branches.size() == t21.branches.size());
      for (std::size_t i = 0; i < t12.branches.size(); ++i) {
        CHECK(t12.branches[i].equation == t21.branches[i].equation);
        CHECK(t12.branches[i].multiplicity == t21.branches[i].multiplicity);
      }
      if (f1.is_singular() || f2.is_singular()) CHECK_FALSE(t12.empty());
      for (const auto& b : t12.branches)
        if (b.jet) {
          Jet1 r = b.jet->restrict(b.equation);
          for (int k = 0; k <= std::min(6, r.order()); ++k) CHECK(r[k].is_zero());
        }
    }
  }

  TEST_CASE("tangent-cone splitting") {
    DivisorGerm d = divisor_of(Y() * Y() - X() * X() - X() * X() * X(), 6);  // nodal cubic
    REQUIRE(d.branches.size() == 2);
    CHECK(d.branches[0].smooth);
    CHECK(d.branches[0].jet->tangent.slope == Scalar(-1));
    CHECK(d.branches[1].jet->tangent.slope == Scalar(1));
    DivisorGerm cusp = divisor_of(Y() * Y() - X() * X() * X(), 6);
    REQUIRE(cusp.branches.size() == 1);
    CHECK_FALSE(cusp.branches[0].smooth);
  }

  TEST_CASE("separatrix examples") {
    auto axes = separatrix_jets(linear(Scalar(-3)), 8);
    REQUIRE(axes.size() == 2);
    CHECK_FALSE(axes[0].tangent.vertical);
    CHECK(axes[0].s.is_zero());
    CHECK(axes[1].tangent.vertical);
    CHECK(axes[1].s.is_zero());

    // x d/dx + (-y + x^2) d/dy: oracle x s' + s = x^2 gives s = x^2/3
    FoliationGerm f = FoliationGerm::from_vector_field(X(), -Y() + X() * X());
    auto br = separatrix_jets(f, 8);
    REQUIRE(br.size() == 2);
    CHECK_FALSE(br[0].tangent.vertical);
    Jet1 expect(8);
    expect[2] = Scalar::rational(1, 3);
    CHECK(br[0].s == expect);
    CHECK(br[1].tangent.vertical);
    CHECK(br[1].s.is_zero());

    // saddle-node x d/dx + (y^2 + a y^3) d/dy: y = 0 strong, x = 0 central
    FoliationGerm sn = FoliationGerm::from_vector_field(X(), Y() * Y() + Y() * Y() * Y());
    auto sb = separatrix_jets(sn, 8);
    REQUIRE(sb.size() == 2);
    CHECK(sb[0].role == "strong");
    CHECK_FALSE(sb[0].tangent.vertical);
    CHECK(sb[1].role == "central");
    CHECK(sb[1].formal_only);
    CHECK(sb[1].tangent.vertical);
    CHECK_THROWS_AS(separatrix_jets(linear(Scalar(2)), 8), Error);
  }

  TEST_CASE("separatrix jets are invariant") {
    std::mt19937 rng(47);
    int checked = 0;
    for (int n = 0; n < 40; ++n) {
      Scalar l = random_rational(rng);
      Jet2 hi = from_poly(random_poly(rng, 4, true));
      FoliationGerm f = form(-(Y() * l) + hi * X(), X() + from_poly(random_poly(rng, 3, true)) * Y());
      LinearClass lc = linear_classify(f);
      if (!lc.reduced()) continue;
      for (const auto& br : separatrix_jets(f, 10)) {
        CHECK(is_invariant(f, br, 10));
        ++checked;
      }
    }
    CHECK(checked > 20);
  }
}
