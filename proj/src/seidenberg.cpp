#include "folred/seidenberg.hpp"

#include <functional>

#include "folred/error.hpp"

namespace folred {

void describe_point(TreeNode& node, const LinearClass& lc, const FoliationGerm& g) {
  node.label = to_string(lc.tag);
  node.info["tag"] = to_string(lc.tag);
  node.info["multiplicity"] = std::to_string(g.multiplicity());
  if (lc.lambda) node.info["lambda"] = lc.lambda->to_string();
  if (lc.tag == LinearTag::resonant_rational_negative) node.info["p:q"] = std::to_string(lc.p) + ":" + std::to_string(lc.q);
}

FoliationGerm cap_degree(const FoliationGerm& f, int w) {
  if (!f.exact()) return f.order() > w ? f.truncated(w) : f;
  return std::max(f.a().degree(), f.b().degree()) > w ? f.truncated(w) : f;
}

namespace {

void check_order(const FoliationGerm& g) {
  int nu = g.multiplicity();
  if (g.exact()) return;
  if (nu < 0 || g.order() < nu + 1)
    fail(ErrorCode::insufficient_order, "truncation order exhausted by blow-ups (order " + std::to_string(g.order()) + ")");
}

}  // namespace

ReductionTree seidenberg_reduce(const FoliationGerm& f, const ReduceOptions& opt) {
  ReductionTree tree;
  tree.nodes.push_back({});
  tree.nodes[0].germ = f;
  std::function<void(int)> visit = [&](int id) {
    const FoliationGerm g = *tree.nodes[id].germ;
    check_order(g);
    LinearClass lc = linear_classify(g);
    describe_point(tree.nodes[id], lc, g);
    if (lc.tag == LinearTag::regular || lc.reduced()) return;
    if (tree.nodes[id].depth >= opt.depth_limit)
      fail(ErrorCode::depth_limit, "not reduced within " + std::to_string(opt.depth_limit) + " blow-ups");
    ExceptionalPoints ep = exceptional_points(g);
    tree.nodes[id].expanded = true;
    tree.nodes[id].dicritical = ep.dicritical;
    std::vector<Jet2> exc = tree.nodes[id].exceptional;
    for (const auto& l : ep.points) {
      ChartPoint at = ChartPoint::of(l);
      BlowUpResult r = blowup_foliation(g, at);
      int child = tree.add_child(id, at);
      tree.nodes[child].germ = cap_degree(r.germ, opt.effective_working_order());
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
