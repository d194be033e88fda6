#pragma once

// Text syntax for germs, polynomials and plane maps.
//
//   form   "P*dx + Q*dy", with d(P) for exact differentials
//   field  "P*Dx + Q*Dy"  (read as the dual form Q dx - P dy)
//   map    "(P, Q)"
//
// P and Q are polynomials in x, y with +, -, *, ^ (integer literal exponents)
// and division by nonzero constants. Constants are integers, "i" and sqrtN.

#include <string>
#include <vector>

#include "folred/germ.hpp"
#include "folred/holonomy.hpp"

namespace folred {

enum class InputKind { form, field };

struct ParsedGerm {
  FoliationGerm germ;
  InputKind kind = InputKind::form;
};

/// Errors are ErrorCode::parse with "line L, column C: ..." messages; `line`
/// is the line number reported for the first line of `text`.
ParsedGerm parse_germ(const std::string& text, int line = 1);
Jet2 parse_polynomial(const std::string& text, int line = 1);
PlaneMap parse_map(const std::string& text, int line = 1);

/// Canonical text of a germ as a form; parse_germ(print_germ(g)).germ == g.
std::string print_germ(const FoliationGerm& g);
std::string print_map(const PlaneMap& m);

struct InputSlot {
  std::string label;  // empty when the line has no "label:" prefix
  std::string text;
  int line = 1;
};

/// One expression per line (or per ';'-separated segment); '#' starts a comment.
struct InputDocument {
  std::vector<InputSlot> slots;
  /// The slot with this label, else the index-th unlabeled slot; nullptr if absent.
  const InputSlot* find(const std::string& label, std::size_t index) const;
};

InputDocument parse_document(const std::string& text);

}  // namespace folred
