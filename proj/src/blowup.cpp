#include "folred/blowup.hpp"

#include <algorithm>
#include <functional>

#include "folred/error.hpp"

namespace folred {

namespace {

Jet2 shifted(const Jet2& v, const Scalar& c) { return v + Jet2::constant(c); }

int adic(const Jet2& g, Chart chart) {
  if (g.is_zero()) return g.exact() ? 1 << 20 : g.order() + 1;
  return chart == Chart::x ? g.x_adic_valuation() : g.y_adic_valuation();
}

Jet2 divide_adic(const Jet2& g, Chart chart, int m) {
  if (g.is_zero()) return g.exact() ? g : Jet2::truncated_zero(std::max(g.order() - m, 0));
  return chart == Chart::x ? g.divide_monomial(m, 0) : g.divide_monomial(0, m);
}

// g composed with the chart map, expanded monomial by monomial:
// x^i y^j -> x^(i+j) (y+c)^j in chart x and (x+c)^i y^(i+j) in chart y.
// A truncated input stays correct through its own order.
Jet2 pullback(const Jet2& g, const ChartPoint& at) {
  Jet2 r = g.exact() ? Jet2() : Jet2::truncated_zero(g.order());
  int top = g.exact() ? g.degree() : g.order();
  std::vector<Scalar> cpow{Scalar(1)};
  for (int k = 1; k <= top; ++k) cpow.push_back(cpow.back() * at.center);
  std::vector<std::vector<Rational>> binom{{1}};
  for (int n = 1; n <= top; ++n) {
    std::vector<Rational> row(n + 1, Rational(1));
    for (int k = 1; k < n; ++k) row[k] = binom[n - 1][k - 1] + binom[n - 1][k];
    binom.push_back(std::move(row));
  }
  for (int d = top; d >= 0; --d)
    for (int j = 0; j <= d; ++j) {
      const Scalar& c = g.coeff(d - j, j);
      if (c.is_zero()) continue;
      int i = d - j;
      int n = at.chart == Chart::x ? j : i;
      for (int k = 0; k <= n; ++k) {
        Scalar t = c * cpow[n - k] * Scalar(binom[n][k]);
        if (t.is_zero()) continue;
        if (at.chart == Chart::x)
          r.add_to(d, k, t);
        else
          r.add_to(k, d, t);
      }
    }
  return r;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out;
}

// Distinct branch equations with their multiplicities.
std::vector<std::pair<Jet2, int>> factors_of(const DivisorGerm& C) {
  std::vector<std::pair<Jet2, int>> out;
  for (const auto& b : C.branches) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == b.equation; });
    if (it == out.end()) out.emplace_back(b.equation, b.multiplicity);
  }
  return out;
}

}  // namespace

ChartPoint ChartPoint::of(const Line& direction) {
  if (direction.vertical) return {Chart::y, Scalar(0)};
  return {Chart::x, direction.slope};
}

std::string ChartPoint::to_string() const {
  return (chart == Chart::x ? "X(t=" : "Y(s=") + center.to_string() + ")";
}

BlowUpResult blowup_foliation(const FoliationGerm& f, const ChartPoint& at) {
  Jet2 a = pullback(f.a(), at), b = pullback(f.b(), at);
  Jet2 A, B;
  if (at.chart == Chart::x) {
    A = a + shifted(Jet2::y(), at.center) * b;
    B = Jet2::x() * b;
  } else {
    A = Jet2::y() * a;
    B = shifted(Jet2::x(), at.center) * a + b;
  }
  int m = std::min(adic(A, at.chart), adic(B, at.chart));
  if (m >= 1 << 20) fail(ErrorCode::precondition, "blow-up of the zero form");
  A = divide_adic(A, at.chart, m);
  B = divide_adic(B, at.chart, m);
  // E is invariant iff the coefficient of its transverse differential vanishes on E.
  const Jet2& transverse = at.chart == Chart::x ? B : A;
  bool dicritical = adic(transverse, at.chart) == 0;
  BlowUpResult r{FoliationGerm::from_form(std::move(A), std::move(B)), m, dicritical, !f.is_singular()};
  return r;
}

ExceptionalPoints exceptional_points(const FoliationGerm& f) {
  ExceptionalPoints ep;
  int nu = f.multiplicity();
  if (nu < 0) fail(ErrorCode::precondition, "zero form");
  ep.multiplicity = nu;
  std::vector<Scalar> an = f.a().homogeneous(nu), bn = f.b().homogeneous(nu);
  std::vector<Scalar> P(nu + 2);
  for (int j = 0; j <= nu; ++j) {
    P[j] += an[j];
    P[j + 1] += bn[j];
  }
  bool zero = std::all_of(P.begin(), P.end(), [](const Scalar& c) { return c.is_zero(); });
  std::vector<Scalar> h;
  if (zero) {
    ep.dicritical = true;
    // a_nu = y g, b_nu = -x g
    for (int j = 0; j < nu; ++j) h.push_back(an[j + 1]);
  } else {
    h = P;
  }
  if (h.size() <= 1) return ep;
  for (const auto& d : binary_form_roots(h)) ep.points.push_back({d.vertical, d.slope});
  std::sort(ep.points.begin(), ep.points.end(), line_less);
  return ep;
}

Jet2 strict_transform(const Jet2& P, const ChartPoint& at) {
  Jet2 Q = pullback(P, at);
  // The multiplicity at the origin of the blown-up point, not of the chart point.
  int m = P.valuation();
  return divide_adic(Q, at.chart, std::max(m, 0));
}

Jet2 exceptional_equation(const ChartPoint& at) { return at.chart == Chart::x ? Jet2::x() : Jet2::y(); }

int curve_multiplicity(const DivisorGerm& C) {
  int m = 0;
  for (const auto& [g, k] : factors_of(C)) m += k * std::max(g.valuation(), 0);
  return m;
}

DivisorGerm blowup_curve(const DivisorGerm& C, const ChartPoint& at, int order) {
  std::vector<std::pair<Jet2, int>> next;
  for (const auto& [g, k] : factors_of(C)) {
    Jet2 s = strict_transform(g, at);
    if (s.constant_term().is_zero() && !s.is_zero()) next.emplace_back(s, k);
  }
  int m = curve_multiplicity(C);
  if (m > 0) next.emplace_back(exceptional_equation(at), m);
  return divisor_from_factors(next, order);
}

bool normal_crossing_test(const DivisorGerm& C) {
  if (C.branches.size() > 2) return false;
  for (const auto& b : C.branches)
    if (!b.smooth || !b.jet) return false;
  if (C.branches.size() == 2 && C.branches[0].jet->tangent == C.branches[1].jet->tangent) return false;
  return true;
}

int ReductionTree::depth() const {
  int d = 0;
  for (const auto& n : nodes) d = std::max(d, n.depth + (n.expanded ? 1 : 0));
  return d;
}

std::vector<int> ReductionTree::leaves() const {
  std::vector<int> out;
  for (const auto& n : nodes)
    if (!n.expanded) out.push_back(n.id);
  return out;
}

int ReductionTree::add_child(int parent, const ChartPoint& at) {
  TreeNode n;
  n.id = static_cast<int>(nodes.size());
  n.parent = parent;
  n.depth = nodes[parent].depth + 1;
  n.point = at;
  n.path = nodes[parent].path.empty() ? at.to_string() : nodes[parent].path + "/" + at.to_string();
  nodes[parent].children.push_back(n.id);
  nodes.push_back(std::move(n));
  return nodes.back().id;
}

std::string ReductionTree::to_dot(const std::string& name) const {
  std::string s = "digraph " + name + " {\n";
  for (const auto& n : nodes) {
    std::string label = n.label;
    auto it = n.info.find("lambda");
    if (it != n.info.end()) label += "\\nlambda=" + it->second;
    if (n.dicritical) label += "\\ndicritical";
    s += "  n" + std::to_string(n.id) + " [label=\"" + escape(label) + "\"" + (n.expanded ? "" : ", shape=box") + "];\n";
  }
  for (const auto& n : nodes)
    if (n.parent >= 0)
      s += "  n" + std::to_string(n.parent) + " -> n" + std::to_string(n.id) + " [label=\"" + escape(n.point->to_string()) +
           "\"];\n";
  return s + "}\n";
}

ReductionTree resolve_curve(const DivisorGerm& C, int order, int depth_limit) {
  ReductionTree tree;
  tree.nodes.push_back({});
  tree.nodes[0].curve = C;
  std::function<void(int)> visit = [&](int id) {
    const DivisorGerm cur = *tree.nodes[id].curve;
    if (normal_crossing_test(cur)) {
      tree.nodes[id].label = "normal_crossing";
      return;
    }
    if (tree.nodes[id].depth >= depth_limit)
      fail(ErrorCode::depth_limit, "curve not resolved within " + std::to_string(depth_limit) + " blow-ups");
    tree.nodes[id].label = "blown_up";
    tree.nodes[id].expanded = true;
    std::vector<Line> pts;
    for (const auto& [g, k] : factors_of(cur)) {
      int v = g.valuation();
      if (v < 1) continue;
      for (const auto& d : binary_form_roots(g.homogeneous(v))) {
        Line l{d.vertical, d.slope};
        if (std::find(pts.begin(), pts.end(), l) == pts.end()) pts.push_back(l);
      }
    }
    std::sort(pts.begin(), pts.end(), line_less);
    std::vector<Jet2> exc = tree.nodes[id].exceptional;
    for (const auto& l : pts) {
      ChartPoint at = ChartPoint::of(l);
      int child = tree.add_child(id, at);
      tree.nodes[child].curve = blowup_curve(cur, at, order);
      for (const auto& e : exc) {
        Jet2 s = strict_transform(e, at);
        if (s.constant_term().is_zero()) tree.nodes[child].exceptional.push_back(s);
      }
      tree.nodes[child].exceptional.push_back(exceptional_equation(at));
      visit(child);
    }
  };
  visit(0);
  return tree;
}

}  // namespace folred
