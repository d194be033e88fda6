#pragma once

// Point blow-ups in the two affine charts, exceptional-divisor bookkeeping,
// reduction trees and embedded resolution of curve germs.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "folred/germ.hpp"

namespace folred {

/// chart x: (x, y) = (x, t x), local coordinates (x, t), exceptional divisor x = 0.
/// chart y: (x, y) = (s y, y), local coordinates (s, y), exceptional divisor y = 0.
enum class Chart { x, y };

/// A point of the exceptional divisor: t = center in chart x or s = center in chart y.
struct ChartPoint {
  Chart chart = Chart::x;
  Scalar center;
  static ChartPoint of(const Line& direction);
  std::string to_string() const;
};

struct BlowUpResult {
  FoliationGerm germ;
  int exceptional_multiplicity = 0;
  bool dicritical = false;
  bool unnecessary = false;  // the input point was regular
};

BlowUpResult blowup_foliation(const FoliationGerm& f, const ChartPoint& at);
inline BlowUpResult blowup_foliation(const FoliationGerm& f, Chart chart) { return blowup_foliation(f, {chart, Scalar(0)}); }

/// Points of the exceptional divisor that need attention after blowing up f:
/// singular points when E is invariant, tangency points with E otherwise.
struct ExceptionalPoints {
  bool dicritical = false;
  int multiplicity = 0;  // algebraic multiplicity of f
  std::vector<Line> points;
};
ExceptionalPoints exceptional_points(const FoliationGerm& f);

/// Strict transform of a polynomial curve at a chart point (not necessarily through it).
Jet2 strict_transform(const Jet2& P, const ChartPoint& at);
/// Local equation of the new exceptional divisor at a chart point.
Jet2 exceptional_equation(const ChartPoint& at);

/// Total transform of a curve germ at the chart origin: strict transforms passing
/// through the point plus the exceptional branch with multiplicity equal to the
/// multiplicity of C at the blown-up point.
DivisorGerm blowup_curve(const DivisorGerm& C, const ChartPoint& at, int order);
inline DivisorGerm blowup_curve(const DivisorGerm& C, Chart chart, int order) {
  return blowup_curve(C, {chart, Scalar(0)}, order);
}
/// Multiplicity of the curve germ at the origin (sum over branches of multiplicity times order).
int curve_multiplicity(const DivisorGerm& C);

/// At most two branches, all smooth, with distinct tangents.
bool normal_crossing_test(const DivisorGerm& C);

struct TreeNode {
  int id = 0;
  int parent = -1;
  int depth = 0;
  std::vector<int> children;
  std::string path;                // chart stack from the root
  std::optional<ChartPoint> point;  // point of the parent's exceptional divisor
  bool expanded = false;           // this point was blown up
  bool dicritical = false;
  std::string label;
  std::map<std::string, std::string> info;
  std::vector<Jet2> exceptional;  // local equations of exceptional components through the point
  std::optional<FoliationGerm> germ, germ2;
  std::optional<DivisorGerm> curve;
};

struct ReductionTree {
  std::vector<TreeNode> nodes;

  /// Number of blow-ups on the longest chain.
  int depth() const;
  /// Nodes that were not blown up.
  std::vector<int> leaves() const;
  int add_child(int parent, const ChartPoint& at);
  std::string to_dot(const std::string& name = "reduction") const;
};

ReductionTree resolve_curve(const DivisorGerm& C, int order, int depth_limit = 24);

}  // namespace folred
