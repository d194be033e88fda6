#include "folred/germ.hpp"

#include <algorithm>

#include "folred/error.hpp"

namespace folred {

namespace {
constexpr int kExactOrder = 1 << 20;

Scalar two() { return Scalar(2); }
}  // namespace

FoliationGerm FoliationGerm::from_form(Jet2 a, Jet2 b) {
  if (a.is_zero() && b.is_zero()) {
    if (!a.exact() || !b.exact()) fail(ErrorCode::insufficient_order, "the form vanishes through the working order");
    fail(ErrorCode::precondition, "the zero form does not define a foliation");
  }
  int ix = std::min(a.is_zero() ? kExactOrder : a.x_adic_valuation(), b.is_zero() ? kExactOrder : b.x_adic_valuation());
  int iy = std::min(a.is_zero() ? kExactOrder : a.y_adic_valuation(), b.is_zero() ? kExactOrder : b.y_adic_valuation());
  if (ix || iy) {
    a = a.divide_monomial(ix, iy);
    b = b.divide_monomial(ix, iy);
  }
  if (a.exact() && b.exact() && a.constant_term().is_zero() && b.constant_term().is_zero()) {
    Jet2 g = gcd(a, b);
    if (g.degree() >= 1 && g.constant_term().is_zero())
      fail(ErrorCode::non_isolated, "a and b share the factor " + g.to_string() + " through the origin");
  }
  return FoliationGerm(std::move(a), std::move(b), ix, iy);
}

FoliationGerm FoliationGerm::from_vector_field(const Jet2& P, const Jet2& Q) { return from_form(Q, -P); }

int FoliationGerm::order() const {
  int n = kExactOrder;
  if (!a_.exact()) n = std::min(n, a_.order());
  if (!b_.exact()) n = std::min(n, b_.order());
  return n;
}

int FoliationGerm::multiplicity() const {
  int va = a_.valuation(), vb = b_.valuation();
  if (va < 0) return vb;
  if (vb < 0) return va;
  return std::min(va, vb);
}

FoliationGerm FoliationGerm::truncated(int n) const {
  return FoliationGerm(a_.as_truncated(n), b_.as_truncated(n), removed_x_, removed_y_);
}

std::string FoliationGerm::to_string() const {
  return "(" + a_.to_string() + ")*dx + (" + b_.to_string() + ")*dy";
}

Jet2 wedge(const FoliationGerm& f1, const FoliationGerm& f2) { return f1.a() * f2.b() - f2.a() * f1.b(); }

std::string to_string(LinearTag tag) {
  switch (tag) {
    case LinearTag::regular: return "regular";
    case LinearTag::reduced_nondegenerate: return "reduced-nondegenerate";
    case LinearTag::resonant_rational_negative: return "resonant-rational-negative";
    case LinearTag::saddle_node: return "saddle-node";
    case LinearTag::non_reduced: return "non-reduced";
  }
  return "?";
}

bool is_reduced(LinearTag tag) {
  return tag == LinearTag::reduced_nondegenerate || tag == LinearTag::resonant_rational_negative ||
         tag == LinearTag::saddle_node;
}

std::string Line::to_string() const { return vertical ? "x=0" : "y=(" + slope.to_string() + ")*x"; }

bool line_less(const Line& l, const Line& m) {
  if (l.vertical != m.vertical) return !l.vertical;
  if (l.vertical) return false;
  return lex_compare(l.slope, m.slope) < 0;
}

std::optional<Scalar> LinearClass::eigenvalue_along(const Line& l) const {
  if (scalar) return trace / Scalar(2);
  for (const auto& d : directions)
    if (d.line == l) return d.eigenvalue;
  return std::nullopt;
}

std::optional<Scalar> LinearClass::oriented_ratio(const Line& along) const {
  if (scalar) return Scalar(1);
  if (directions.size() != 2) return std::nullopt;
  int k = directions[0].line == along ? 0 : directions[1].line == along ? 1 : -1;
  if (k < 0) return std::nullopt;
  const Scalar& other = directions[1 - k].eigenvalue;
  if (other.is_zero()) return std::nullopt;
  return directions[k].eigenvalue / other;
}

namespace {

// Eigenline of [[m11, m12], [m21, m22]] for the simple eigenvalue mu.
Line eigenline(const Scalar& m11, const Scalar& m12, const Scalar& m21, const Scalar& m22, const Scalar& mu) {
  if (!m12.is_zero()) return {false, (mu - m11) / m12};
  if (!(m11 == mu)) return {true, Scalar(0)};
  return {false, m21 / (mu - m22)};
}

}  // namespace

LinearClass linear_classify(const FoliationGerm& f) {
  LinearClass lc;
  if (!f.is_singular()) {
    lc.tag = LinearTag::regular;
    return lc;
  }
  const Jet2 &a = f.a(), &b = f.b();
  Scalar m11 = -b.coeff(1, 0), m12 = -b.coeff(0, 1), m21 = a.coeff(1, 0), m22 = a.coeff(0, 1);
  lc.trace = m11 + m22;
  lc.det = m11 * m22 - m12 * m21;
  lc.discriminant = lc.trace * lc.trace - Scalar(4) * lc.det;
  if (m11.is_zero() && m12.is_zero() && m21.is_zero() && m22.is_zero()) {
    lc.tag = LinearTag::non_reduced;
    return lc;
  }
  if (lc.discriminant.is_zero()) {
    // nilpotent or a double eigenvalue (lambda = 1)
    lc.sqrt_discriminant = Scalar(0);
    lc.tag = LinearTag::non_reduced;
    if (!lc.det.is_zero()) lc.lambda = Scalar(1);
    lc.scalar = m12.is_zero() && m21.is_zero() && m11 == m22;
    return lc;
  }
  std::optional<Scalar> sq;
  try {
    sq = exact_sqrt(lc.discriminant);
  } catch (const Error&) {
    sq.reset();
  }
  if (!sq) fail(ErrorCode::unresolved_locus, "eigenvalues outside the representable field");
  lc.sqrt_discriminant = sq;
  for (const Scalar& mu : {(lc.trace + *sq) / two(), (lc.trace - *sq) / two()})
    lc.directions.push_back({eigenline(m11, m12, m21, m22, mu), mu});
  std::sort(lc.directions.begin(), lc.directions.end(),
            [](const EigenDirection& u, const EigenDirection& v) { return line_less(u.line, v.line); });
  const Scalar &mu1 = lc.directions[0].eigenvalue, &mu2 = lc.directions[1].eigenvalue;
  if (lc.det.is_zero()) {
    lc.tag = LinearTag::saddle_node;
    lc.lambda = Scalar(0);
    return lc;
  }
  // {mu2/mu1, mu1/mu2} is intrinsic; the lex-smaller member is reported.
  Scalar lambda = mu2 / mu1, inverse = mu1 / mu2;
  if (lex_compare(inverse, lambda) < 0) std::swap(lambda, inverse);
  lc.lambda = lambda;
  if (lambda.is_rational()) {
    const Rational& r = lambda.as_rational();
    if (sgn(r) > 0) {
      lc.tag = LinearTag::non_reduced;
    } else {
      // A germ equal to its linear part is already the linear normal form.
      bool linear = f.exact() && a.degree() <= 1 && b.degree() <= 1;
      lc.tag = linear ? LinearTag::reduced_nondegenerate : LinearTag::resonant_rational_negative;
      lc.p = -r.get_num().get_si();
      lc.q = r.get_den().get_si();
    }
  } else {
    lc.tag = LinearTag::reduced_nondegenerate;
  }
  return lc;
}

// ---- branches ----

Jet1 BranchJet::restrict(const Jet2& g) const { return tangent.vertical ? g.along_graph_x(s) : g.along_graph_y(s); }

Jet2 BranchJet::equation() const {
  Jet2 e = Jet2::truncated_zero(s.order());
  for (int k = 0; k <= s.order(); ++k) {
    if (tangent.vertical)
      e.set(0, k, -s[k]);
    else
      e.set(k, 0, -s[k]);
  }
  if (tangent.vertical)
    e.add_to(1, 0, Scalar(1));
  else
    e.add_to(0, 1, Scalar(1));
  return e;
}

std::string BranchJet::to_string() const {
  std::string lhs = tangent.vertical ? "x" : "y";
  return lhs + " = " + s.to_string(tangent.vertical ? "y" : "x") + (formal_only ? " [formal]" : "");
}

Jet1 invariance_defect(const FoliationGerm& f, const BranchJet& br) {
  Jet1 ds = br.s.derivative();
  if (br.tangent.vertical) return br.restrict(f.a()) * ds + br.restrict(f.b());
  return br.restrict(f.a()) + br.restrict(f.b()) * ds;
}

bool is_invariant(const FoliationGerm& f, const BranchJet& br, int n) {
  Jet1 d = invariance_defect(f, br);
  int lim = std::min(n - 1, d.order());
  for (int k = 0; k <= lim; ++k)
    if (!d[k].is_zero()) return false;
  return true;
}

bool same_branch(const BranchJet& u, const BranchJet& v, int n) {
  if (!(u.tangent == v.tangent)) return false;
  int lim = std::min({n, u.s.order(), v.s.order()});
  for (int k = 0; k <= lim; ++k)
    if (!(u.s[k] == v.s[k])) return false;
  return true;
}

std::vector<BranchJet> separatrix_jets(const FoliationGerm& f, int order) {
  LinearClass lc = linear_classify(f);
  if (!lc.reduced()) fail(ErrorCode::non_reduced, "separatrices need a reduced singular point");
  int n = std::min(order, f.order());
  const Jet2 &a = f.a(), &b = f.b();
  Scalar ax = a.coeff(1, 0), ay = a.coeff(0, 1), bx = b.coeff(1, 0), by = b.coeff(0, 1);
  std::vector<BranchJet> out;
  for (const auto& dir : lc.directions) {
    BranchJet br;
    br.tangent = dir.line;
    br.s = Jet1(n + 1);
    if (!dir.line.vertical && n >= 1) br.s[1] = dir.line.slope;
    const Scalar& c = dir.line.slope;
    for (int k = 2; k <= n; ++k) {
      Scalar L = dir.line.vertical ? bx + Scalar(k) * ay : ay + c * by + Scalar(k) * (bx + c * by);
      Scalar R = invariance_defect(f, br)[k];
      if (L.is_zero()) {
        if (!R.is_zero()) fail(ErrorCode::internal, "resonant obstruction in a separatrix recursion");
        continue;
      }
      br.s[k] = -R / L;
    }
    br.s = br.s.truncated(n);
    if (lc.tag == LinearTag::saddle_node) {
      bool central = dir.eigenvalue.is_zero();
      br.role = central ? "central" : "strong";
      br.formal_only = central;
    }
    out.push_back(std::move(br));
  }
  return out;
}

BranchJet leaf_jet(const FoliationGerm& f, int order) {
  if (f.is_singular()) fail(ErrorCode::precondition, "leaf of a singular germ");
  int n = std::min(order, f.order());
  const Scalar &a0 = f.a().constant_term(), &b0 = f.b().constant_term();
  BranchJet br;
  br.tangent = b0.is_zero() ? Line{true, Scalar(0)} : Line{false, -a0 / b0};
  br.s = Jet1(n);
  if (!br.tangent.vertical && n >= 1) br.s[1] = br.tangent.slope;
  const Scalar& pivot = br.tangent.vertical ? a0 : b0;
  for (int k = 2; k <= n; ++k) br.s[k] = -invariance_defect(f, br)[k - 1] / (Scalar(k) * pivot);
  return br;
}

BranchJet implicit_branch(const Jet2& P, const Line& line, int order) {
  int m = P.valuation();
  if (m < 1) fail(ErrorCode::precondition, "branch of a curve not through the origin");
  std::vector<Scalar> h = P.homogeneous(m);
  Scalar D;
  if (line.vertical) {
    D = h[m - 1];  // coefficient of x y^{m-1}
  } else {
    Scalar pw(1);
    for (int j = 1; j <= m; ++j) {
      D += Scalar(j) * h[j] * pw;
      pw *= line.slope;
    }
  }
  if (D.is_zero()) fail(ErrorCode::precondition, "tangent line is not a simple root of the tangent cone");
  int n = P.exact() ? order : std::min(order, P.order() - m + 1);
  BranchJet br;
  br.tangent = line;
  br.s = Jet1(n + m - 1);
  if (!line.vertical && n >= 1) br.s[1] = line.slope;
  for (int k = 2; k <= n; ++k) {
    Scalar R = br.restrict(P)[k + m - 1];
    br.s[k] = -R / D;
  }
  br.s = br.s.truncated(std::max(n, 0));
  return br;
}

// ---- divisors ----

namespace {

DivisorBranch axis_branch(bool vertical, int mult, int order) {
  DivisorBranch d;
  d.equation = vertical ? Jet2::x() : Jet2::y();
  d.multiplicity = mult;
  d.smooth = true;
  d.jet = BranchJet{{vertical, Scalar(0)}, Jet1(order), false, ""};
  return d;
}

Line linear_tangent(const Jet2& g) {
  const Scalar &al = g.coeff(1, 0), &be = g.coeff(0, 1);
  if (be.is_zero()) return {true, Scalar(0)};
  return {false, -al / be};
}

void add_factor(DivisorGerm& out, const Jet2& g, int mult, int order) {
  int m = g.valuation();
  if (m < 1) return;
  if (m == 1) {
    DivisorBranch d{g, mult, true, implicit_branch(g, linear_tangent(g), order)};
    out.branches.push_back(std::move(d));
    return;
  }
  std::vector<Direction> dirs;
  try {
    dirs = binary_form_roots(g.homogeneous(m));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::unresolved_locus) throw;
    dirs.clear();
  }
  bool simple = static_cast<int>(dirs.size()) == m &&
                std::all_of(dirs.begin(), dirs.end(), [](const Direction& d) { return d.multiplicity == 1; });
  if (!simple) {
    out.branches.push_back({g, mult, false, std::nullopt});
    return;
  }
  for (const auto& d : dirs) {
    Line l{d.vertical, d.slope};
    out.branches.push_back({g, mult, true, implicit_branch(g, l, order)});
  }
}

void sort_branches(DivisorGerm& out) {
  std::stable_sort(out.branches.begin(), out.branches.end(), [](const DivisorBranch& u, const DivisorBranch& v) {
    if (u.smooth != v.smooth) return u.smooth;
    if (!u.smooth) return false;
    return line_less(u.jet->tangent, v.jet->tangent);
  });
}

}  // namespace

DivisorGerm divisor_of(const Jet2& f, int order) {
  if (f.is_zero()) fail(ErrorCode::precondition, "divisor of the zero series");
  DivisorGerm out;
  out.defining = f;
  if (!f.constant_term().is_zero()) return out;
  int ix = f.x_adic_valuation(), iy = f.y_adic_valuation();
  if (ix > 0) out.branches.push_back(axis_branch(true, ix, order));
  if (iy > 0) out.branches.push_back(axis_branch(false, iy, order));
  Jet2 r = f.divide_monomial(ix, iy);
  if (r.is_zero()) fail(ErrorCode::insufficient_order, "tangency series vanishes through the working order");
  if (r.exact()) {
    for (const auto& [g, k] : square_free(r)) add_factor(out, g, k, order);
  } else if (r.constant_term().is_zero()) {
    add_factor(out, r, 1, order);
  }
  sort_branches(out);
  return out;
}

DivisorGerm divisor_from_factors(const std::vector<std::pair<Jet2, int>>& factors, int order) {
  DivisorGerm out;
  out.defining = Jet2::constant(Scalar(1));
  for (const auto& [g, k] : factors) {
    for (int i = 0; i < k; ++i) out.defining = out.defining * g;
    add_factor(out, g, k, order);
  }
  sort_branches(out);
  return out;
}

DivisorGerm tangency_divisor(const FoliationGerm& f1, const FoliationGerm& f2, int order) {
  Jet2 f = wedge(f1, f2);
  if (f.is_zero()) fail(ErrorCode::identical_foliations, "the two foliations coincide through the working order");
  return divisor_of(f, order);
}

std::string DivisorGerm::to_string() const {
  if (branches.empty()) return "0";
  std::string s;
  for (const auto& b : branches) {
    if (!s.empty()) s += " + ";
    if (b.multiplicity != 1) s += std::to_string(b.multiplicity) + "*";
    s += "(" + (b.jet && b.equation.degree() > 1 && b.smooth ? b.jet->tangent.to_string() + " branch of " : "") +
         b.equation.to_string() + ")";
  }
  return s;
}

}  // namespace folred
