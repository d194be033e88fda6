#pragma once

// Foliation germs w = a dx + b dy at the origin, their linear part, tangency
// divisors and separatrix jets.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "folred/jet1.hpp"
#include "folred/jet2.hpp"
#include "folred/poly.hpp"
#include "folred/scalar.hpp"

namespace folred {

class FoliationGerm {
 public:
  /// Normalizes by removing the common monomial factor x^i y^j; exact inputs are
  /// also checked for a common factor through the origin (non-isolated zero).
  static FoliationGerm from_form(Jet2 a, Jet2 b);
  /// The form dual to the vector field P d/dx + Q d/dy, namely Q dx - P dy.
  static FoliationGerm from_vector_field(const Jet2& P, const Jet2& Q);

  const Jet2& a() const { return a_; }
  const Jet2& b() const { return b_; }
  /// Exponents of the monomial factor removed during normalization.
  int removed_x() const { return removed_x_; }
  int removed_y() const { return removed_y_; }

  bool exact() const { return a_.exact() && b_.exact(); }
  /// Truncation order (only meaningful when not exact).
  int order() const;
  bool is_singular() const { return a_.constant_term().is_zero() && b_.constant_term().is_zero(); }
  /// Lowest total degree of a nonzero coefficient of a or b.
  int multiplicity() const;

  /// The germ truncated at total degree n (drops exactness).
  FoliationGerm truncated(int n) const;
  /// Components of the dual vector field v = -b d/dx + a d/dy.
  Jet2 field_x() const { return -b_; }
  Jet2 field_y() const { return a_; }

  /// "(a)*dx + (b)*dy".
  std::string to_string() const;
  friend bool operator==(const FoliationGerm& f, const FoliationGerm& g) { return f.a_ == g.a_ && f.b_ == g.b_; }

 private:
  FoliationGerm(Jet2 a, Jet2 b, int rx, int ry) : a_(std::move(a)), b_(std::move(b)), removed_x_(rx), removed_y_(ry) {}
  Jet2 a_, b_;
  int removed_x_ = 0, removed_y_ = 0;
};

/// a1 b2 - a2 b1, the coefficient of w1 ^ w2 = f dx ^ dy.
Jet2 wedge(const FoliationGerm& f1, const FoliationGerm& f2);

enum class LinearTag { regular, reduced_nondegenerate, resonant_rational_negative, saddle_node, non_reduced };
std::string to_string(LinearTag tag);
bool is_reduced(LinearTag tag);

/// A line through the origin: x = 0 when vertical, y = slope * x otherwise.
struct Line {
  bool vertical = false;
  Scalar slope;
  friend bool operator==(const Line& l, const Line& m) { return l.vertical == m.vertical && (l.vertical || l.slope == m.slope); }
  std::string to_string() const;
};
/// Lexicographic order with sloped lines first.
bool line_less(const Line& l, const Line& m);

struct EigenDirection {
  Line line;
  Scalar eigenvalue;
};

struct LinearClass {
  LinearTag tag = LinearTag::regular;
  std::optional<Scalar> lambda;
  Scalar trace, det, discriminant;
  std::optional<Scalar> sqrt_discriminant;
  /// Eigen-directions in line_less order (empty for regular and nilpotent cases).
  std::vector<EigenDirection> directions;
  /// Linear part is a nonzero multiple of the identity: every line is an eigen-direction.
  bool scalar = false;
  /// lambda = -p/q for the resonant-rational-negative tag.
  long p = 0, q = 0;

  bool reduced() const { return is_reduced(tag); }
  /// Eigenvalue along `along` divided by the other eigenvalue; empty when the other one is zero.
  std::optional<Scalar> oriented_ratio(const Line& along) const;
  /// The eigenvalue along `l`, if l is an eigen-direction.
  std::optional<Scalar> eigenvalue_along(const Line& l) const;
};

LinearClass linear_classify(const FoliationGerm& f);

/// A smooth curve germ through the origin as a graph y = s(x) (or x = s(y) when
/// the tangent is vertical).
struct BranchJet {
  Line tangent;
  Jet1 s;
  bool formal_only = false;
  std::string role;  // "strong", "central" or empty

  /// Pulls a jet back to the branch parameter.
  Jet1 restrict(const Jet2& g) const;
  /// Implicit equation y - s(x) (or x - s(y)) as a truncated jet.
  Jet2 equation() const;
  std::string to_string() const;
};

/// w evaluated on the tangent of the branch; identically zero for invariant curves.
Jet1 invariance_defect(const FoliationGerm& f, const BranchJet& br);
/// Invariance through order n - 1 of the defect.
bool is_invariant(const FoliationGerm& f, const BranchJet& br, int n);
/// Jets agree through the common order, including the tangent line.
bool same_branch(const BranchJet& u, const BranchJet& v, int n);

/// Smooth branches of a reduced singularity, one per eigen-direction (order of
/// LinearClass::directions).
std::vector<BranchJet> separatrix_jets(const FoliationGerm& f, int order);

/// The leaf through the origin of a regular germ.
BranchJet leaf_jet(const FoliationGerm& f, int order);

/// Branch of {P = 0} tangent to `line`, which must be a simple root of the tangent cone.
BranchJet implicit_branch(const Jet2& P, const Line& line, int order);

struct DivisorBranch {
  Jet2 equation;  // square-free factor (exact) or branch equation
  int multiplicity = 1;
  bool smooth = false;
  std::optional<BranchJet> jet;
};

struct DivisorGerm {
  std::vector<DivisorBranch> branches;
  Jet2 defining;  // the series whose divisor this is
  bool empty() const { return branches.empty(); }
  std::string to_string() const;
};

/// Branch decomposition of the zero set of f at the origin (f not identically zero).
DivisorGerm divisor_of(const Jet2& f, int order);
/// Divisor of a product of exact factors, each vanishing at the origin or ignored.
DivisorGerm divisor_from_factors(const std::vector<std::pair<Jet2, int>>& factors, int order);
DivisorGerm tangency_divisor(const FoliationGerm& f1, const FoliationGerm& f2, int order);

}  // namespace folred
