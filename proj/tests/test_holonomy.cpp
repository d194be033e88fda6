#include <random>

#include "doctest.h"
#include "flow_oracle.hpp"
#include "folred/error.hpp"
#include "folred/holonomy.hpp"
#include "helpers.hpp"
#include "nf_oracle.hpp"

using namespace folred;
using namespace testing_util;

namespace doctest {
template <>
struct StringMaker<TauJet1> {
  static String convert(const TauJet1& j) { return j.to_string().c_str(); }
};
template <>
struct StringMaker<TauPoly> {
  static String convert(const TauPoly& p) { return p.to_string().c_str(); }
};
}  // namespace doctest

namespace {

Jet2 X() { return Jet2::x(); }
Jet2 Y() { return Jet2::y(); }

FoliationGerm pulled(const FoliationGerm& f, const PlaneMap& m) {
  Jet2 as = substitute(f.a(), m.x, m.y), bs = substitute(f.b(), m.x, m.y);
  return FoliationGerm::from_form(as * m.x.derivative_x() + bs * m.y.derivative_x(),
                                  as * m.x.derivative_y() + bs * m.y.derivative_y());
}

FoliationGerm resonant_germ(long p, long q, const oracle::Poly& f) {
  Jet2 L = from_poly(f);
  L.add_to(0, 0, Scalar(Rational(-p, q)));
  return FoliationGerm::from_vector_field(X(), L * Y());
}

NormalFormInvariants resonant(long p, long q, int k, const Scalar& alpha) {
  NormalFormInvariants inv;
  inv.cls = p == 0 ? LambdaClass::zero : LambdaClass::rational_negative;
  inv.lambda = Scalar::rational(-p, q);
  inv.p = p;
  inv.q = q;
  inv.k = k;
  inv.alpha = alpha;
  return inv;
}

TauJet1 tau_series(int order, std::initializer_list<std::pair<int, Scalar>> terms) {
  TauJet1 s(order);
  for (const auto& [k, c] : terms) s[k] = TauPoly(c);
  return s;
}

bool is_identity_through(const PlaneMap& m, int n) {
  return m.x.agrees_through(X(), n) && m.y.agrees_through(Y(), n);
}

}  // namespace

TEST_SUITE("holonomy") {
  TEST_CASE("flow of the zero field and of z^2") {
    CHECK(exp_flow_jet(Jet1(8)) == Jet1::identity(8));
    Jet1 v = Jet1::monomial(8, 2);
    Jet1 expect(8);
    for (int k = 1; k <= 8; ++k) expect[k] = Scalar(1);
    CHECK(exp_flow_jet(v) == expect);
    CHECK_THROWS_AS(exp_flow_jet(jet1(4, {0, 1})), Error);
  }

  TEST_CASE("flows agree with Picard iteration") {
    std::mt19937 rng(11);
    for (int t = 0; t < 8; ++t) {
      oracle::Series v(10, 0);
      for (int k = 2; k < 10; ++k) v[k] = random_rational(rng, 3).as_rational();
      CHECK(exp_flow_jet(from_series(v)) == from_series(oracle::picard_flow(v)));
    }
  }

  TEST_CASE("flow group law") {
    for (const Jet1& v : {Jet1::monomial(12, 2), Jet1(12, {0, 0, 0, 1, 0, 1})})
      for (int q : {2, 3}) {
        Jet1 qv = v;
        qv.scale(Scalar(q));
        CHECK(exp_flow_jet(qv) == iterate(exp_flow_jet(v), q));
      }
    // exp((s+t)v) = exp(sv) o exp(tv)
    Jet1 v(10, {0, 0, 1, Scalar::rational(1, 2), 0, Scalar::i()});
    Jet1 sv = v, tv = v, stv = v;
    sv.scale(Scalar::rational(2, 3));
    tv.scale(Scalar::rational(-5, 7));
    stv.scale(Scalar::rational(2, 3) + Scalar::rational(-5, 7));
    CHECK(exp_flow_jet(stv) == compose(exp_flow_jet(sv), exp_flow_jet(tv)));
  }

  TEST_CASE("multiplier descriptors") {
    NormalFormInvariants lin;
    lin.cls = LambdaClass::rational_negative;
    lin.lambda = Scalar(-2);
    lin.p = 2;
    lin.linearizable = true;
    HolonomyJet h = holonomy_jet(lin, 6);
    CHECK(h.phi.multiplier.trivial());
    CHECK(h.phi.tangent == TauJet1::identity(6));
    CHECK(diffeo_formal_invariants(h.phi).periodic);

    MultiplierDescriptor m = MultiplierDescriptor::of(resonant(5, 3, 1, 0));
    CHECK(m.p == 2);
    CHECK(m.q == 3);

    NormalFormInvariants irr;
    irr.lambda = Scalar::i();
    irr.linearizable = true;
    DiffeoFormalClass c = diffeo_formal_invariants(holonomy_jet(irr, 4).phi);
    CHECK_FALSE(c.multiplier.root_of_unity);
    CHECK(c.multiplier.lambda == Scalar::i());
  }

  TEST_CASE("saddle-node holonomy") {
    HolonomyJet h = holonomy_jet(resonant(0, 1, 1, Scalar(0)), 6);
    CHECK(h.phi.multiplier.trivial());
    CHECK(h.iterate == h.phi.tangent);
    CHECK(h.phi.tangent[2] == TauPoly::tau());
    DiffeoFormalClass c = diffeo_formal_invariants(h.phi);
    CHECK(c.contact == 2);
    CHECK(c.k == 1);
    CHECK(c.alpha == Scalar(0));
    CHECK_THROWS_AS(holonomy_jet(resonant(0, 1, 2, Scalar(0)), 4), Error);
  }

  TEST_CASE("holonomy round trip on the resonant grid") {
    for (auto [p, q] : {std::pair<long, long>{1, 1}, {1, 2}, {2, 3}})
      for (int k : {1, 2})
        for (const Scalar& alpha : {Scalar(0), Scalar(1), Scalar::i()}) {
          CAPTURE(p);
          CAPTURE(q);
          CAPTURE(k);
          int m = k * static_cast<int>(q);
          HolonomyJet h = holonomy_jet(resonant(p, q, k, alpha), 2 * m + 1);
          DiffeoFormalClass c = diffeo_formal_invariants(h.phi);
          CHECK(c.multiplier.p == p % q);
          CHECK(c.multiplier.q == q);
          CHECK(c.k == k);
          CHECK(c.contact == m + 1);
          REQUIRE(c.alpha);
          CHECK(*c.alpha == alpha);
          // phi^q = z + q tau z^{m+1} + ...; after rescaling the leading term to 1
          // the z^{2m+1} coefficient is (m+1)/2 + alpha/(q tau).
          CHECK(h.iterate[m + 1] == TauPoly(Scalar(q), 1));
          TauPoly expected = TauPoly(Scalar::rational(m + 1, 2)) + TauPoly(alpha / Scalar(q), -1);
          CHECK(h.iterate[2 * m + 1] / (h.iterate[m + 1] * h.iterate[m + 1]) == expected);
        }
  }

  TEST_CASE("invariants of given iterates") {
    MultiplierDescriptor half{true, 1, 2, Scalar(0)};
    DiffeoFormalClass c = iterate_formal_invariants(
        half, tau_series(5, {{1, Scalar(1)}, {3, Scalar(1)}, {5, Scalar::rational(3, 2)}}));
    CHECK(c.k == 1);
    CHECK(c.alpha == Scalar(0));

    c = iterate_formal_invariants(MultiplierDescriptor{}, tau_series(3, {{1, Scalar(1)}, {2, Scalar(1)}, {3, Scalar(1)}}));
    CHECK(c.k == 1);
    CHECK(c.ratio == TauPoly(1));
    CHECK(c.alpha == Scalar(0));

    CHECK(iterate_formal_invariants(half, TauJet1::identity(7)).periodic);
    CHECK_THROWS_AS(iterate_formal_invariants(half, tau_series(3, {{1, Scalar(1)}, {2, Scalar(1)}})), Error);
    CHECK_THROWS_AS(iterate_formal_invariants(MultiplierDescriptor{}, tau_series(4, {{1, Scalar(1)}, {3, Scalar(1)}})),
                    Error);
  }

  TEST_CASE("invariants survive tangent-to-identity conjugation") {
    std::mt19937 rng(5);
    for (int t = 0; t < 6; ++t) {
      int k = 1 + t % 2;
      Scalar alpha = random_rational(rng);
      HolonomyJet hj = holonomy_jet(resonant(0, 1, k, alpha), 2 * k + 3);
      TauJet1 h = TauJet1::identity(2 * k + 3);
      for (int j = 2; j <= 2 * k + 3; ++j) h[j] = TauPoly(random_rational(rng, 2), t % 3 - 1);
      TauJet1 G = compose(invert(h), compose(hj.iterate, h));
      DiffeoFormalClass c = iterate_formal_invariants(MultiplierDescriptor{}, G);
      CHECK(c.k == k);
      CHECK(c.alpha == alpha);
    }
  }

  TEST_CASE("plane map inversion") {
    std::mt19937 rng(2);
    for (int t = 0; t < 5; ++t) {
      PlaneMap m{X() * Scalar(2) + Y() + from_poly(random_poly(rng, 4, false)) * X() * Y(),
                 Y() * Scalar(-1) + from_poly(random_poly(rng, 3, false)) * X() * X()};
      PlaneMap w = invert_map(m, 6);
      CHECK(is_identity_through(compose(m, w), 6));
      CHECK(is_identity_through(compose(w, m), 6));
    }
  }

  TEST_CASE("conjugacy decision") {
    FoliationGerm lin = linear_germ(Scalar(-1));
    ConjugacyDecision d = formal_conjugacy_decide(lin, lin, 6);
    CHECK(d.conjugate);
    CHECK(d.verified);
    REQUIRE(d.transform);
    CHECK(is_identity_through(*d.transform, 6));

    d = formal_conjugacy_decide(lin, normal_form_germ(1, 1, 1, Scalar(0)), 6);
    CHECK_FALSE(d.conjugate);
    CHECK_FALSE(d.transform);
  }

  TEST_CASE("conjugacy of perturbed saddles") {
    std::mt19937 rng(17);
    const int N = 6;
    int positives = 0, negatives = 0;
    for (int t = 0; t < 8; ++t) {
      oracle::Poly f1 = random_poly(rng, N, true), f2 = random_poly(rng, N, true);
      FoliationGerm F = resonant_germ(1, 1, f1);
      FoliationGerm G = t % 2 ? resonant_germ(1, 1, f2)
                              : pulled(F, PlaneMap{X() + from_poly(random_poly(rng, 2, false)) * X() * Y(),
                                                   Y() + from_poly(random_poly(rng, 2, false)) * X() * Y()});
      ConjugacyDecision d = formal_conjugacy_decide(F, G, N, Line{false, 0}, Line{false, 0});
      if (d.conjugate) {
        ++positives;
        CHECK(d.verified);
      } else {
        ++negatives;
        auto [ka, ra] = oracle::residue_at_zero(oracle::resonant_residual(1, 1, f1, N, N));
        auto [kb, rb] = oracle::residue_at_zero(oracle::resonant_residual(1, 1, f2, N, N));
        CHECK((ka != kb || ra != rb));
      }
    }
    CHECK(positives >= 4);
    CHECK(negatives >= 1);
  }

  TEST_CASE("symmetries of normal forms") {
    SymmetryReport r = symmetry_structure_check(linear_germ(Scalar(-3)), Jet2::constant(Scalar(5)), 6);
    CHECK(r.constant);
    CHECK(r.function_of_u);

    // x d/dx + (-1 + u) y d/dy is preserved by the flow of u y d/dy: y -> y/(1 - u)
    Jet2 g = reciprocal(Jet2::constant(Scalar(1)) - X() * Y(), 8);
    r = symmetry_structure_check(normal_form_germ(1, 1, 1, Scalar(0)), g, 8);
    CHECK_FALSE(r.constant);
    CHECK(r.function_of_u);

    r = symmetry_structure_check(linear_germ(Scalar::rational(-1, 2)), Jet2::constant(Scalar(1)) + X() * Y() * Y(), 6);
    CHECK(r.function_of_u);

    CHECK_THROWS_AS(symmetry_structure_check(linear_germ(Scalar::i()), Jet2::constant(Scalar(1)) + X(), 4), Error);
    try {
      symmetry_structure_check(linear_germ(Scalar::i()), Jet2::constant(Scalar(1)) + X(), 4);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::not_a_symmetry);
    }
  }

  TEST_CASE("pair conjugacy verification") {
    FoliationGerm F1 = linear_germ(Scalar(-2)), F2 = linear_germ(Scalar::rational(1, 3) + Scalar::i());
    CHECK(verify_pair_conjugacy(PlaneMap::identity(5), F1, F2, F1, F2, 5));
    PlaneMap diag{X() * Scalar(3), Y() * Scalar::rational(-1, 2)};
    CHECK(verify_pair_conjugacy(diag, F1, F2, F1, F2, 5));
    CHECK_THROWS_AS(verify_pair_conjugacy(PlaneMap{Y(), X()}, F1, F2, F1, F2, 5), Error);

    const int N = 6;
    FoliationGerm H1 = resonant_germ(1, 2, oracle::Poly{{{1, 0}, 1}, {{1, 2}, 2}});
    PlaneMap phi{X().as_truncated(N + 2), (Y() * (Jet2::constant(Scalar(1)) + X() + Y())).as_truncated(N + 2)};
    PlaneMap inv = invert_map(phi, N + 2);
    FoliationGerm G1 = pulled(H1, inv), G2 = pulled(F2, inv);
    CHECK(verify_pair_conjugacy(phi, H1, F2, G1, G2, N));
    CHECK_FALSE(verify_pair_conjugacy(phi, H1, F2, G1, F2, N));
  }
}
