#pragma once

// Simultaneous reduction of a pair of foliations and classification of the
// resulting points into the six local types.

#include <optional>
#include <string>
#include <vector>

#include "folred/seidenberg.hpp"

namespace folred {

enum class PairTag { T1, T2, T3, T4, T5_1, T5_2, T5_3, T6 };
std::string to_string(PairTag tag);

struct PairType {
  PairTag tag = PairTag::T1;
  int k = 0, l = 0;
  int singular = 0;              // T5: which germ (1 or 2) is singular
  std::optional<Scalar> lambda;  // T5_1, T5_2: ratio of the singular germ along T
  std::optional<Scalar> lambda1, lambda2;
  bool reduced_tangency = false;  // T6 with T = (xy)
  bool saddle_node1 = false, saddle_node2 = false;
  std::string orientation;  // T6 with two saddle-nodes: "shared-strong" or "opposite"

  std::string to_string() const;
};

/// A branch of Gamma = Gamma1 + Gamma2 + T at a point with its owners.
struct GammaBranch {
  std::optional<BranchJet> jet;  // empty for a singular branch of T
  Jet2 equation;                 // T factor for singular branches
  bool in_t = false, in_g1 = false, in_g2 = false;
  int t_multiplicity = 0;
};

struct PairPoint {
  LinearClass lc1, lc2;
  DivisorGerm tangency;
  std::vector<GammaBranch> gamma;
  /// At most two smooth branches with distinct tangents.
  bool normal_crossing = false;
  std::optional<BranchJet> leaf1, leaf2;
};

/// Invariant curves of both germs and tangency branches, merged through order n.
/// Both germs must be regular or reduced.
PairPoint analyze_pair_point(const FoliationGerm& f1, const FoliationGerm& f2, int order);

/// Type of the point, if it is one of the six.
std::optional<PairType> try_classify_pair_point(const PairPoint& pt);
/// As above; a configuration outside the six types is an internal error.
PairType classify_pair_point(const PairPoint& pt);

struct PairLeaf {
  int node = 0;
  PairType type;
};

struct PairReductionReport {
  ReductionTree tree;
  std::vector<PairLeaf> leaves;
  int depth = 0;
  int opposite_saddle_node_blowups = 0;
};

PairReductionReport pair_reduce(const FoliationGerm& f1, const FoliationGerm& f2, const ReduceOptions& opt = {});

}  // namespace folred
