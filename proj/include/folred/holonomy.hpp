#pragma once

// Holonomy jets of formal normal forms, formal invariants of one-variable
// diffeomorphisms, and conjugacy decisions verified by the wedge identity.
//
// The constant -2 i pi is the formal unit tau; multipliers e^{2 i pi p/q} are
// kept as descriptors. A holonomy is stored as multiplier * tangent(z) with a
// tangent-to-identity part whose coefficients are Laurent polynomials in tau.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "folred/error.hpp"
#include "folred/jet1.hpp"
#include "folred/normal_form.hpp"
#include "folred/tau.hpp"

namespace folred {

using TauJet1 = UniSeries<TauPoly>;

/// v as a tau-polynomial series with no tau.
TauJet1 to_tau(const Jet1& v);

/// Time-one flow of z' = v(z) for v vanishing to order 2, exact through v.order().
template <class R>
UniSeries<R> exp_flow_jet(const UniSeries<R>& v) {
  int n = v.order();
  if (!v[0].is_zero() || (n >= 1 && !v[1].is_zero()))
    fail(ErrorCode::precondition, "exact flows need a vector field tangent to zero to order 2");
  UniSeries<R> term = UniSeries<R>::identity(n), sum = term;
  for (int j = 1; j <= n; ++j) {
    // term <- v * term' / j; term' is padded at the top, which v = O(z^2) never reads
    UniSeries<R> d(n);
    for (int k = 1; k <= n; ++k) d[k - 1] = term[k] * R(k);
    term = (v * d).scale(R(Scalar::rational(1, j)));
    if (term.is_zero()) break;
    sum += term;
  }
  return sum;
}

/// e^{2 i pi p/q} with 0 <= p < q, or e^{-2 i pi lambda} for lambda outside Q.
struct MultiplierDescriptor {
  bool root_of_unity = true;
  long p = 0, q = 1;
  Scalar lambda;

  static MultiplierDescriptor of(const NormalFormInvariants& inv);
  bool trivial() const { return root_of_unity && q == 1; }
  std::string to_string() const;
  friend bool operator==(const MultiplierDescriptor& a, const MultiplierDescriptor& b);
};

struct DiffeoGerm1 {
  MultiplierDescriptor multiplier;
  TauJet1 tangent;  // phi(z) = multiplier * tangent(z)
};

/// phi^q for a root-of-unity multiplier; needs a tangent part commuting with
/// the rotation (only powers z^{jq+1}).
TauJet1 iterate_to_tangent(const DiffeoGerm1& phi);

struct HolonomyJet {
  DiffeoGerm1 phi;
  TauJet1 field;    // tangent = exp(field)
  TauJet1 iterate;  // phi^q = exp(q field)
};

/// Holonomy along {y = 0} of the normal form with the given invariants.
HolonomyJet holonomy_jet(const NormalFormInvariants& inv, int order);

struct DiffeoFormalClass {
  MultiplierDescriptor multiplier;
  bool periodic = false;  // phi^q is the identity through the order
  int contact = 0;        // kq + 1
  int k = 0;
  TauPoly leading;     // coefficient of z^{kq+1} of phi^q
  TauPoly normalized;  // coefficient of z^{2kq+1} after killing z^{kq+2} .. z^{2kq}
  TauPoly ratio;       // normalized / leading^2, invariant under scaling
  std::optional<Scalar> alpha;

  std::string to_string() const;
};

DiffeoFormalClass diffeo_formal_invariants(const DiffeoGerm1& phi);
/// The same invariants read from a given q-th iterate G = phi^q.
DiffeoFormalClass iterate_formal_invariants(const MultiplierDescriptor& m, TauJet1 G);

/// (x, y) -> (x(x, y), y(x, y)).
struct PlaneMap {
  Jet2 x, y;
  static PlaneMap identity(int order);
};

/// outer o inner.
PlaneMap compose(const PlaneMap& outer, const PlaneMap& inner);
/// Inverse of a map with invertible linear part, through `order`.
PlaneMap invert_map(const PlaneMap& m, int order);
/// phi^* w_G ^ w_F vanishes through total degree order - 1.
bool wedge_vanishes(const FoliationGerm& F, const FoliationGerm& G, const PlaneMap& phi, int order);

struct ConjugacyDecision {
  bool conjugate = false;
  NormalFormInvariants inv_f, inv_g;
  std::optional<PlaneMap> transform;  // coordinates of F -> coordinates of G
  bool verified = false;
  std::string note;
};

/// Formal conjugacy of two reduced germs preserving the chosen separatrices
/// (by default those picked by formal_normalize).
ConjugacyDecision formal_conjugacy_decide(const FoliationGerm& F, const FoliationGerm& G, int order,
                                          std::optional<Line> delta_f = {}, std::optional<Line> delta_g = {});

struct SymmetryReport {
  bool constant = false;       // g is constant through the order
  bool function_of_u = false;  // g only has monomials u^j
  std::vector<std::pair<int, int>> violating;  // monomials of g outside the allowed span
};

/// Phi = (x, y g) against a germ with invariant axes; throws not_a_symmetry when
/// Phi^* w ^ w does not vanish through order - 1.
SymmetryReport symmetry_structure_check(const FoliationGerm& F, const Jet2& g, int order);

/// Phi of the shape (x a, y b) with a(0) b(0) != 0; true iff Phi^* w_Gi ^ w_Fi
/// vanishes through order - 1 for i = 1, 2.
bool verify_pair_conjugacy(const PlaneMap& phi, const FoliationGerm& F1, const FoliationGerm& F2,
                           const FoliationGerm& G1, const FoliationGerm& G2, int order);

}  // namespace folred
