#pragma once

// Reduction of a single foliation germ by repeated point blow-ups until every
// remaining point is regular or reduced.

#include "folred/blowup.hpp"

namespace folred {

struct ReduceOptions {
  int order = 12;
  int depth_limit = 24;
  /// Exact germs produced by blow-ups are truncated here once their degree exceeds it (0: twice the order).
  int working_order = 0;
  int effective_working_order() const { return working_order > 0 ? working_order : 2 * order; }
};

/// The germ itself when exact and of degree at most w, its truncation at w otherwise.
FoliationGerm cap_degree(const FoliationGerm& f, int w);

/// Each node carries its germ and linear tag; expanded nodes were blown up.
ReductionTree seidenberg_reduce(const FoliationGerm& f, const ReduceOptions& opt = {});

/// Fills label and info (tag, lambda, multiplicity) of a tree node from its germ.
void describe_point(TreeNode& node, const LinearClass& lc, const FoliationGerm& g);

}  // namespace folred
