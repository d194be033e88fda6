#include "folred/pair.hpp"

#include <algorithm>
#include <functional>

#include "folred/error.hpp"

namespace folred {

std::string to_string(PairTag tag) {
  switch (tag) {
    case PairTag::T1: return "T1";
    case PairTag::T2: return "T2";
    case PairTag::T3: return "T3";
    case PairTag::T4: return "T4";
    case PairTag::T5_1: return "T5_1";
    case PairTag::T5_2: return "T5_2";
    case PairTag::T5_3: return "T5_3";
    case PairTag::T6: return "T6";
  }
  return "?";
}

std::string PairType::to_string() const {
  std::string s = folred::to_string(tag);
  if (k) s += " k=" + std::to_string(k);
  if (l) s += " l=" + std::to_string(l);
  if (lambda) s += " lambda=" + lambda->to_string();
  if (tag == PairTag::T6) {
    if (lambda1) s += " lambda1=" + lambda1->to_string();
    if (lambda2) s += " lambda2=" + lambda2->to_string();
    if (reduced_tangency) s += " reduced-tangency";
    if (!orientation.empty()) s += " " + orientation;
  }
  return s;
}

namespace {

bool vanishes_along(const Jet2& g, const BranchJet& br, int n) {
  Jet1 r = br.restrict(g);
  for (int k = 0; k <= std::min(n, r.order()); ++k)
    if (!r[k].is_zero()) return false;
  return true;
}

bool usable(const LinearClass& lc) { return lc.tag == LinearTag::regular || lc.reduced(); }

std::vector<BranchJet> invariant_curves(const FoliationGerm& f, const LinearClass& lc, int order) {
  if (lc.tag == LinearTag::regular) return {leaf_jet(f, order)};
  return separatrix_jets(f, order);
}

// Tangent directions through the origin of a curve equation.
std::vector<Line> tangent_lines(const Jet2& g) {
  std::vector<Line> out;
  int v = g.valuation();
  if (v < 1) return out;
  for (const auto& d : binary_form_roots(g.homogeneous(v))) out.push_back({d.vertical, d.slope});
  return out;
}

void add_line(std::vector<Line>& pts, const Line& l) {
  if (std::find(pts.begin(), pts.end(), l) == pts.end()) pts.push_back(l);
}

}  // namespace

PairPoint analyze_pair_point(const FoliationGerm& f1, const FoliationGerm& f2, int order) {
  PairPoint pt;
  pt.lc1 = linear_classify(f1);
  pt.lc2 = linear_classify(f2);
  if (!usable(pt.lc1) || !usable(pt.lc2)) fail(ErrorCode::non_reduced, "pair analysis needs reduced germs");
  pt.tangency = tangency_divisor(f1, f2, order);
  if (pt.lc1.tag == LinearTag::regular) pt.leaf1 = leaf_jet(f1, order);
  if (pt.lc2.tag == LinearTag::regular) pt.leaf2 = leaf_jet(f2, order);

  std::vector<BranchJet> jets;
  auto add = [&](const BranchJet& b) {
    for (const auto& e : jets)
      if (same_branch(e, b, order)) return;
    jets.push_back(b);
  };
  for (const auto& b : invariant_curves(f1, pt.lc1, order)) add(b);
  for (const auto& b : invariant_curves(f2, pt.lc2, order)) add(b);
  for (const auto& d : pt.tangency.branches)
    if (d.smooth && d.jet) add(*d.jet);

  // distinct tangency factors
  std::vector<std::pair<Jet2, int>> factors;
  for (const auto& d : pt.tangency.branches)
    if (std::none_of(factors.begin(), factors.end(), [&](const auto& p) { return p.first == d.equation; }))
      factors.emplace_back(d.equation, d.multiplicity);

  for (const auto& b : jets) {
    GammaBranch g;
    g.jet = b;
    g.in_g1 = is_invariant(f1, b, order);
    g.in_g2 = is_invariant(f2, b, order);
    for (const auto& [eq, m] : factors)
      if (vanishes_along(eq, b, order)) {
        g.in_t = true;
        g.t_multiplicity += m;
      }
    int owners = g.in_t + g.in_g1 + g.in_g2;
    if (owners == 2)
      fail(ErrorCode::inconclusive,
           "branch " + b.to_string() + " is shared by two of the three curves through order " + std::to_string(order));
    if (owners == 0) fail(ErrorCode::internal, "branch " + b.to_string() + " has no owner");
    pt.gamma.push_back(std::move(g));
  }
  for (const auto& d : pt.tangency.branches)
    if (!d.smooth) {
      GammaBranch g;
      g.equation = d.equation;
      g.in_t = true;
      g.t_multiplicity = d.multiplicity;
      pt.gamma.push_back(std::move(g));
    }

  pt.normal_crossing = pt.gamma.size() <= 2 &&
                       std::all_of(pt.gamma.begin(), pt.gamma.end(), [](const GammaBranch& g) { return g.jet.has_value(); });
  if (pt.normal_crossing && pt.gamma.size() == 2 && pt.gamma[0].jet->tangent == pt.gamma[1].jet->tangent)
    pt.normal_crossing = false;
  return pt;
}

std::optional<PairType> try_classify_pair_point(const PairPoint& pt) {
  bool r1 = pt.lc1.tag == LinearTag::regular, r2 = pt.lc2.tag == LinearTag::regular;
  std::vector<const GammaBranch*> T;
  for (const auto& g : pt.gamma)
    if (g.in_t) {
      if (!g.jet) return std::nullopt;
      T.push_back(&g);
    }
  if (T.size() == 2 && T[0]->jet->tangent == T[1]->jet->tangent) return std::nullopt;
  auto common = [](const GammaBranch* g) { return g->in_g1 && g->in_g2; };
  auto free_of = [](const GammaBranch* g) { return !g->in_g1 && !g->in_g2; };
  auto transversal = [&](const GammaBranch* g) {
    return !(pt.leaf1->tangent == g->jet->tangent) && !(pt.leaf2->tangent == g->jet->tangent);
  };

  PairType t;
  if (r1 && r2) {
    if (T.empty()) {
      t.tag = PairTag::T1;
      return t;
    }
    if (T.size() == 1) {
      t.k = T[0]->t_multiplicity;
      if (common(T[0])) {
        t.tag = PairTag::T3;
        return t;
      }
      if (free_of(T[0]) && transversal(T[0])) {
        t.tag = PairTag::T2;
        return t;
      }
      return std::nullopt;
    }
    if (T.size() == 2) {
      for (int i = 0; i < 2; ++i) {
        const GammaBranch *inv = T[i], *tr = T[1 - i];
        if (common(inv) && free_of(tr) && transversal(tr)) {
          t.tag = PairTag::T4;
          t.k = tr->t_multiplicity;
          t.l = inv->t_multiplicity;
          return t;
        }
      }
    }
    return std::nullopt;
  }
  if (r1 != r2) {
    if (T.size() != 1 || !common(T[0])) return std::nullopt;
    const LinearClass& lc = r1 ? pt.lc2 : pt.lc1;
    t.singular = r1 ? 2 : 1;
    const Line& along = T[0]->jet->tangent;
    if (lc.tag == LinearTag::saddle_node) {
      auto mu = lc.eigenvalue_along(along);
      if (!mu) return std::nullopt;
      if (mu->is_zero()) {
        t.tag = PairTag::T5_2;
        t.lambda = Scalar(0);
      } else {
        t.tag = PairTag::T5_3;
        t.k = T[0]->t_multiplicity - 1;
      }
      return t;
    }
    auto ratio = lc.oriented_ratio(along);
    if (!ratio) return std::nullopt;
    t.lambda = *ratio;
    t.tag = ratio->is_real() && ratio->sign() <= 0 ? PairTag::T5_2 : PairTag::T5_1;
    return t;
  }
  // both singular
  if (T.size() != 2 || !common(T[0]) || !common(T[1])) return std::nullopt;
  t.tag = PairTag::T6;
  t.lambda1 = pt.lc1.lambda;
  t.lambda2 = pt.lc2.lambda;
  t.reduced_tangency = T[0]->t_multiplicity == 1 && T[1]->t_multiplicity == 1;
  t.saddle_node1 = pt.lc1.tag == LinearTag::saddle_node;
  t.saddle_node2 = pt.lc2.tag == LinearTag::saddle_node;
  if (t.saddle_node1 && t.saddle_node2) {
    auto strong = [&](const LinearClass& lc) {
      auto mu = lc.eigenvalue_along(T[0]->jet->tangent);
      return mu && !mu->is_zero() ? 0 : 1;
    };
    t.orientation = strong(pt.lc1) == strong(pt.lc2) ? "shared-strong" : "opposite";
  }
  return t;
}

PairType classify_pair_point(const PairPoint& pt) {
  auto t = try_classify_pair_point(pt);
  if (!t) fail(ErrorCode::internal, "configuration outside the six local types");
  return *t;
}

PairReductionReport pair_reduce(const FoliationGerm& f1, const FoliationGerm& f2, const ReduceOptions& opt) {
  if (!f1.exact() || !f2.exact()) fail(ErrorCode::precondition, "pair reduction needs polynomial germs");
  PairReductionReport rep;
  ReductionTree& tree = rep.tree;
  tree.nodes.push_back({});
  tree.nodes[0].germ = f1;
  tree.nodes[0].germ2 = f2;

  std::function<void(int)> visit = [&](int id) {
    const FoliationGerm g1 = *tree.nodes[id].germ, g2 = *tree.nodes[id].germ2;
    LinearClass lc1 = linear_classify(g1), lc2 = linear_classify(g2);
    TreeNode& node = tree.nodes[id];
    node.info["tag1"] = to_string(lc1.tag);
    node.info["tag2"] = to_string(lc2.tag);
    if (lc1.lambda) node.info["lambda1"] = lc1.lambda->to_string();
    if (lc2.lambda) node.info["lambda2"] = lc2.lambda->to_string();

    std::string reason;
    DivisorGerm tang = tangency_divisor(g1, g2, opt.order);
    node.curve = tang;
    node.info["tangency"] = tang.to_string();
    if (!usable(lc1) || !usable(lc2)) {
      reason = "seidenberg";
    } else {
      PairPoint pt = analyze_pair_point(g1, g2, opt.order);
      node.info["gamma_normal_crossing"] = pt.normal_crossing ? "true" : "false";
      auto type = try_classify_pair_point(pt);
      if (type && type->orientation == "opposite") {
        node.label = type->to_string();
        node.info["type"] = to_string(type->tag);
        reason = "opposite-saddle-nodes";
        ++rep.opposite_saddle_node_blowups;
      } else if (type) {
        node.label = type->to_string();
        node.info["type"] = to_string(type->tag);
        rep.leaves.push_back({id, *type});
        return;
      } else {
        reason = pt.normal_crossing ? "unclassified" : "gamma";
      }
    }
    if (node.depth >= opt.depth_limit)
      fail(ErrorCode::depth_limit, "pair not reduced within " + std::to_string(opt.depth_limit) + " blow-ups");
    if (node.label.empty()) node.label = "blow-up (" + reason + ")";
    node.info["reason"] = reason;
    node.expanded = true;

    std::vector<Line> pts;
    ExceptionalPoints e1 = exceptional_points(g1), e2 = exceptional_points(g2);
    node.dicritical = e1.dicritical || e2.dicritical;
    for (const auto& l : e1.points) add_line(pts, l);
    for (const auto& l : e2.points) add_line(pts, l);
    for (const auto& b : tang.branches) {
      if (b.jet) add_line(pts, b.jet->tangent);
      else
        for (const auto& l : tangent_lines(b.equation)) add_line(pts, l);
    }
    std::sort(pts.begin(), pts.end(), line_less);
    std::vector<Jet2> exc = node.exceptional;
    for (const auto& l : pts) {
      ChartPoint at = ChartPoint::of(l);
      FoliationGerm h1 = blowup_foliation(g1, at).germ, h2 = blowup_foliation(g2, at).germ;
      int child = tree.add_child(id, at);
      tree.nodes[child].germ = cap_degree(h1, opt.effective_working_order());
      tree.nodes[child].germ2 = cap_degree(h2, opt.effective_working_order());
      for (const auto& e : exc) {
        Jet2 s = strict_transform(e, at);
        if (s.constant_term().is_zero()) tree.nodes[child].exceptional.push_back(s);
      }
      tree.nodes[child].exceptional.push_back(exceptional_equation(at));
      visit(child);
    }
  };
  visit(0);
  std::sort(rep.leaves.begin(), rep.leaves.end(), [](const PairLeaf& a, const PairLeaf& b) { return a.node < b.node; });
  rep.depth = tree.depth();
  return rep;
}

}  // namespace folred
