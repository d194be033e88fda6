#include "folred/holonomy.hpp"

#include <numeric>
#include <tuple>

namespace folred {

namespace {

long mod_pos(long a, long m) { return ((a % m) + m) % m; }

// s^e for e of either sign.
Scalar ipow(const Scalar& s, long e) {
  Scalar r = pow(s, static_cast<unsigned>(e < 0 ? -e : e));
  return e < 0 ? r.inverse() : r;
}

// (x, y) with p x + q y = 1.
std::pair<long, long> bezout(long p, long q) {
  long r0 = p, r1 = q, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    long k = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, r0 - k * r1);
    std::tie(s0, s1) = std::make_pair(s1, s0 - k * s1);
    std::tie(t0, t1) = std::make_pair(t1, t0 - k * t1);
  }
  if (r0 < 0) s0 = -s0, t0 = -t0;
  return {s0, t0};
}

Jet2 cut(const Jet2& j, int order) { return j.as_truncated(order); }

// Coefficients (A, B) of phi^*(a dx + b dy).
std::pair<Jet2, Jet2> pulled(const Jet2& a, const Jet2& b, const PlaneMap& phi) {
  Jet2 as = substitute(a, phi.x, phi.y), bs = substitute(b, phi.x, phi.y);
  return {as * phi.x.derivative_x() + bs * phi.y.derivative_x(), as * phi.x.derivative_y() + bs * phi.y.derivative_y()};
}

bool vanishes_through(const Jet2& w, int n) {
  if (!w.exact() && w.order() < n) fail(ErrorCode::insufficient_order, "wedge known only through degree " + std::to_string(w.order()));
  for (int d = 0; d <= n; ++d)
    for (int j = 0; j <= d; ++j)
      if (!w.coeff(d - j, j).is_zero()) return false;
  return true;
}

// (x, y) of F in terms of the model coordinates: straightening after y -> y g.
PlaneMap model_chart(const NormalFormResult& r, int order) {
  Jet2 g = r.transform.g.to_jet(order);
  PlaneMap inner{Jet2::x().as_truncated(order), cut(Jet2::y() * g, order)};
  if (r.straightening.identity) return inner;
  PlaneMap s{cut(r.straightening.x_map, order), cut(r.straightening.y_map, order)};
  return compose(s, inner);
}

}  // namespace

TauJet1 to_tau(const Jet1& v) {
  TauJet1 r(v.order());
  for (int k = 0; k <= v.order(); ++k) r[k] = TauPoly(v[k]);
  return r;
}

MultiplierDescriptor MultiplierDescriptor::of(const NormalFormInvariants& inv) {
  MultiplierDescriptor m;
  if (inv.cls == LambdaClass::irrational) {
    m.root_of_unity = false;
    m.lambda = inv.lambda;
    return m;
  }
  m.q = inv.q;
  m.p = mod_pos(inv.p, inv.q);
  return m;
}

std::string MultiplierDescriptor::to_string() const {
  if (!root_of_unity) return "exp(-2*i*pi*(" + lambda.to_string() + "))";
  if (q == 1) return "1";
  return "exp(2*i*pi*" + std::to_string(p) + "/" + std::to_string(q) + ")";
}

bool operator==(const MultiplierDescriptor& a, const MultiplierDescriptor& b) {
  if (a.root_of_unity != b.root_of_unity) return false;
  return a.root_of_unity ? a.p == b.p && a.q == b.q : a.lambda == b.lambda;
}

TauJet1 iterate_to_tangent(const DiffeoGerm1& phi) {
  const MultiplierDescriptor& m = phi.multiplier;
  if (!m.root_of_unity) fail(ErrorCode::precondition, "an irrational multiplier has no finite iterate tangent to the identity");
  const TauJet1& t = phi.tangent;
  if (!t[0].is_zero() || t.order() < 1 || !(t[1] == TauPoly(1)))
    fail(ErrorCode::precondition, "tangent part must be z + O(z^2)");
  if (m.q == 1) return t;
  for (int j = 2; j <= t.order(); ++j)
    if (!t[j].is_zero() && (j - 1) % m.q != 0)
      fail(ErrorCode::precondition, "tangent part does not commute with the rotation; its iterate needs cyclotomic arithmetic");
  // a t commutes with t when t only has powers z^{jq+1}, so (a t)^q = a^q t^q = t^q.
  return iterate(t, static_cast<int>(m.q));
}

HolonomyJet holonomy_jet(const NormalFormInvariants& inv, int order) {
  HolonomyJet h;
  h.phi.multiplier = MultiplierDescriptor::of(inv);
  if (inv.linearizable) {
    if (order < 1) fail(ErrorCode::insufficient_order, "holonomy order must be at least 1");
    h.phi.tangent = TauJet1::identity(order);
    h.field = TauJet1(order);
    h.iterate = h.phi.tangent;
    return h;
  }
  int m = inv.k * static_cast<int>(inv.q);
  if (order < 2 * m + 1)
    fail(ErrorCode::insufficient_order, "holonomy needs order >= 2kq+1 = " + std::to_string(2 * m + 1));
  h.field = TauJet1(order);
  h.field[m + 1] = TauPoly::tau();
  h.field[2 * m + 1] = TauPoly(inv.alpha, 1);
  h.phi.tangent = exp_flow_jet(h.field);
  TauJet1 qv = h.field;
  qv.scale(TauPoly(static_cast<int>(inv.q)));
  h.iterate = exp_flow_jet(qv);
  if (!(iterate_to_tangent(h.phi) == h.iterate)) fail(ErrorCode::internal, "q-th iterate differs from the flow of q v");
  return h;
}

std::string DiffeoFormalClass::to_string() const {
  std::string s = "multiplier=" + multiplier.to_string();
  if (!multiplier.root_of_unity) return s + " linearizable";
  if (periodic) return s + " periodic";
  s += " contact=" + std::to_string(contact) + " k=" + std::to_string(k) + " ratio=" + ratio.to_string();
  if (alpha) s += " alpha=" + alpha->to_string();
  return s;
}

DiffeoFormalClass diffeo_formal_invariants(const DiffeoGerm1& phi) {
  if (!phi.multiplier.root_of_unity) {
    DiffeoFormalClass c;
    c.multiplier = phi.multiplier;
    return c;
  }
  return iterate_formal_invariants(phi.multiplier, iterate_to_tangent(phi));
}

DiffeoFormalClass iterate_formal_invariants(const MultiplierDescriptor& mult, TauJet1 G) {
  DiffeoFormalClass out;
  out.multiplier = mult;
  if (!mult.root_of_unity) return out;
  int n = G.order();
  if (n < 1 || !G[0].is_zero() || !(G[1] == TauPoly(1)))
    fail(ErrorCode::precondition, "the iterate must be tangent to the identity");
  int j0 = 2;
  while (j0 <= n && G[j0].is_zero()) ++j0;
  if (j0 > n) {
    out.periodic = true;
    return out;
  }
  int m = j0 - 1;
  if (m % mult.q != 0) fail(ErrorCode::precondition, "contact order is not a multiple of q");
  if (2 * m + 1 > n) fail(ErrorCode::insufficient_order, "need the iterate through z^" + std::to_string(2 * m + 1));
  G = G.truncated(2 * m + 1);
  const TauPoly c = G[m + 1];
  for (int j = 2; j <= m; ++j) {
    // z -> z + b z^j moves the z^{m+j} coefficient by b c (m + 1 - j)
    if (G[m + j].is_zero()) continue;
    TauPoly b = -G[m + j] / (c * TauPoly(m + 1 - j));
    TauJet1 h = TauJet1::identity(2 * m + 1);
    h[j] = b;
    G = compose(invert(h), compose(G, h));
    if (!G[m + j].is_zero()) fail(ErrorCode::internal, "conjugation failed to kill an intermediate coefficient");
  }
  out.contact = m + 1;
  out.k = m / static_cast<int>(mult.q);
  out.leading = c;
  out.normalized = G[2 * m + 1];
  out.ratio = out.normalized / (c * c);
  // ratio = (m+1)/2 + alpha/(q tau)
  TauPoly a = (out.ratio - TauPoly(Scalar::rational(m + 1, 2))) * TauPoly(Scalar(mult.q), 1);
  if (a.is_constant()) out.alpha = a.coeff(0);
  return out;
}

PlaneMap PlaneMap::identity(int order) { return {Jet2::x().as_truncated(order), Jet2::y().as_truncated(order)}; }

PlaneMap compose(const PlaneMap& outer, const PlaneMap& inner) {
  return {substitute(outer.x, inner.x, inner.y), substitute(outer.y, inner.x, inner.y)};
}

PlaneMap invert_map(const PlaneMap& m, int order) {
  PlaneMap f{cut(m.x, order), cut(m.y, order)};
  if (!f.x.constant_term().is_zero() || !f.y.constant_term().is_zero())
    fail(ErrorCode::precondition, "map must fix the origin");
  Scalar a = f.x.coeff(1, 0), b = f.x.coeff(0, 1), c = f.y.coeff(1, 0), d = f.y.coeff(0, 1);
  Scalar det = a * d - b * c;
  if (det.is_zero()) fail(ErrorCode::precondition, "map has a singular linear part");
  auto apply_linv = [&](const Jet2& u, const Jet2& v) {
    return PlaneMap{(u * d - v * b) * det.inverse(), (v * a - u * c) * det.inverse()};
  };
  PlaneMap id = PlaneMap::identity(order);
  PlaneMap w = apply_linv(id.x, id.y);
  for (int i = 1; i < order; ++i) {
    PlaneMap e = compose(f, w);
    PlaneMap corr = apply_linv(e.x - id.x, e.y - id.y);
    w = {w.x - corr.x, w.y - corr.y};
  }
  return w;
}

bool wedge_vanishes(const FoliationGerm& F, const FoliationGerm& G, const PlaneMap& phi, int order) {
  if (order < 1) fail(ErrorCode::precondition, "verification order must be positive");
  PlaneMap p{cut(phi.x, order), cut(phi.y, order)};
  auto [A, B] = pulled(cut(G.a(), order), cut(G.b(), order), p);
  Jet2 w = A * cut(F.b(), order) - B * cut(F.a(), order);
  return vanishes_through(w, order - 1);
}

ConjugacyDecision formal_conjugacy_decide(const FoliationGerm& F, const FoliationGerm& G, int order,
                                          std::optional<Line> delta_f, std::optional<Line> delta_g) {
  NormalFormResult rf = formal_normalize(F, order, delta_f);
  NormalFormResult rg = formal_normalize(G, order, delta_g);
  ConjugacyDecision out;
  out.inv_f = rf.inv;
  out.inv_g = rg.inv;
  out.conjugate = rf.inv == rg.inv;
  if (!out.conjugate) {
    out.note = "formal invariants differ";
    return out;
  }
  // model of F -> model of G: (X, Y) -> (a X, b Y) with (a^p b^q)^k = c_F / c_G
  Scalar sa(1), sb(1);
  if (!rf.inv.linearizable) {
    std::optional<Scalar> t = exact_root(rf.scale / rg.scale, static_cast<unsigned>(rf.inv.k));
    if (!t) {
      out.note = "scale ratio has no exact k-th root; the conjugacy is not representable";
      return out;
    }
    auto [ex, ey] = bezout(rf.inv.p, rf.inv.q);
    sa = ipow(*t, ex);
    sb = ipow(*t, ey);
  }
  PlaneMap af = model_chart(rf, order), ag = model_chart(rg, order);
  PlaneMap scale{Jet2::x().as_truncated(order) * sa, Jet2::y().as_truncated(order) * sb};
  PlaneMap psi = compose(ag, compose(scale, invert_map(af, order)));
  psi = {cut(psi.x, order), cut(psi.y, order)};
  out.verified = wedge_vanishes(F, G, psi, order);
  out.note = out.verified ? "wedge identity verified" : "wedge identity failed";
  out.transform = psi;
  return out;
}

SymmetryReport symmetry_structure_check(const FoliationGerm& F, const Jet2& g, int order) {
  Jet2 a = F.a().exact() ? F.a() : F.a().truncated(order), b = F.b().exact() ? F.b() : F.b().truncated(order);
  bool axes = (a.is_zero() || a.y_adic_valuation() >= 1) && (b.is_zero() || b.x_adic_valuation() >= 1);
  Scalar a01 = a.coeff(0, 1), b10 = b.coeff(1, 0);
  if (!axes || b10.is_zero()) fail(ErrorCode::precondition, "germ is not in normal-form shape with invariant axes");
  LambdaData l = classify_lambda(-a01 / b10);
  if (g.constant_term().is_zero()) fail(ErrorCode::precondition, "g must be a unit");
  PlaneMap phi{Jet2::x().as_truncated(order), cut(Jet2::y() * g, order)};
  if (!wedge_vanishes(F, F, phi, order)) fail(ErrorCode::not_a_symmetry, "(x, y g) does not preserve the foliation");

  SymmetryReport r;
  r.constant = true;
  int top = g.exact() ? std::min(g.degree(), order) : std::min(g.order(), order);
  for (int d = 1; d <= top; ++d)
    for (int n = 0; n <= d; ++n) {
      int m = d - n;
      if (g.coeff(m, n).is_zero()) continue;
      r.constant = false;
      bool allowed = l.cls != LambdaClass::irrational && n >= 1 && l.resonant(m, n);
      if (!allowed) r.violating.emplace_back(m, n);
    }
  r.function_of_u = r.violating.empty();
  return r;
}

bool verify_pair_conjugacy(const PlaneMap& phi, const FoliationGerm& F1, const FoliationGerm& F2,
                           const FoliationGerm& G1, const FoliationGerm& G2, int order) {
  Jet2 px = cut(phi.x, order), py = cut(phi.y, order);
  bool shape = (px.is_zero() || px.x_adic_valuation() >= 1) && (py.is_zero() || py.y_adic_valuation() >= 1);
  if (!shape || px.coeff(1, 0).is_zero() || py.coeff(0, 1).is_zero())
    fail(ErrorCode::precondition, "map is not of the form (x a, y b) with a(0) b(0) != 0");
  return wedge_vanishes(F1, G1, phi, order) && wedge_vanishes(F2, G2, phi, order);
}

}  // namespace folred
