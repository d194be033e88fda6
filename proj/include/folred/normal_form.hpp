#pragma once

// Transversely formal normalization of reduced singular points: separatrices
// are straightened onto the axes, giving
//   x dy - (lambda + f(x, y)) y dx,   f(0, 0) = 0,
// then every non-resonant monomial of f is removed by changes y -> y g(x, y),
// and the remaining series in u = x^p y^q is normalized in one variable.

#include <optional>
#include <string>
#include <vector>

#include "folred/germ.hpp"
#include "folred/jet1.hpp"
#include "folred/jet2.hpp"

namespace folred {

/// f = sum_n a_n(x) y^n known for n <= y_order and x-degree <= x_order.
class YSeries {
 public:
  YSeries() : YSeries(0, 0) {}
  YSeries(int x_order, int y_order);
  static YSeries constant(int x_order, int y_order, const Scalar& c);
  /// Restriction of a jet known through total degree x_order + y_order.
  static YSeries from_jet(const Jet2& f, int x_order, int y_order);

  int x_order() const { return x_order_; }
  int y_order() const { return static_cast<int>(rows_.size()) - 1; }
  const Jet1& row(int n) const { return rows_[n]; }
  Jet1& row(int n) { return rows_[n]; }
  Scalar coeff(int m, int n) const;
  void set(int m, int n, Scalar c);
  bool is_zero() const;
  bool is_constant() const;

  /// The total-degree jet through `order` (at most min(x_order, y_order)).
  Jet2 to_jet(int order) const;

  YSeries& operator+=(const YSeries& o);
  YSeries& operator-=(const YSeries& o);
  YSeries& operator*=(const Scalar& c);
  friend YSeries operator+(YSeries a, const YSeries& b) { return a += b; }
  friend YSeries operator-(YSeries a, const YSeries& b) { return a -= b; }
  friend YSeries operator*(YSeries a, const Scalar& c) { return a *= c; }
  friend YSeries operator*(const YSeries& a, const YSeries& b);
  friend bool operator==(const YSeries& a, const YSeries& b);

  /// x d/dx and y d/dy.
  YSeries x_dx() const;
  YSeries y_dy() const;

  std::string to_string() const;

 private:
  int x_order_;
  std::vector<Jet1> rows_;
};

/// 1/s for s(0, 0) != 0.
YSeries reciprocal(const YSeries& s);
/// s(x, y g(x, y)).
YSeries substitute_y(const YSeries& s, const YSeries& g);

enum class LambdaClass { irrational, rational_negative, zero };
std::string to_string(LambdaClass c);

struct LambdaData {
  LambdaClass cls = LambdaClass::irrational;
  Scalar lambda;
  long p = 0, q = 1;  // lambda = -p/q; (0, 1) for a saddle-node
  /// nlambda + m == 0 with n >= 1 (and m >= 0).
  bool resonant(int m, int n) const;
};
/// Rejects lambda in Q_{>0}.
LambdaData classify_lambda(const Scalar& lambda);

/// x dy - (lambda + f) y dx.
struct ResonantForm {
  Scalar lambda;
  YSeries f;
  /// The form as a truncated germ through total degree `order` of f.
  FoliationGerm germ(int order) const;
  /// The box coefficients of f read as a polynomial.
  FoliationGerm polynomial_germ() const;
};

/// f~ with y = Y g(x, Y):  ((lambda + f(x, Yg)) g - x g_x) / (g + Y g_Y) - lambda.
ResonantForm apply_transform(const ResonantForm& form, const YSeries& g);

/// (x, y) = (x_map(X, Y), y_map(X, Y)) sends the axes to the separatrices.
struct Straightening {
  Jet2 x_map, y_map;
  bool identity = true;
  Line delta;  // separatrix sent to {y = 0}
};

struct Straightened {
  ResonantForm form;
  Straightening change;
  LambdaData lambda;
};

/// Box orders used for a transverse order n: (x_order, y_order).
std::pair<int, int> box_orders(const LambdaData& l, int n);

/// `delta` picks the separatrix that becomes {y = 0}; by default the strong
/// manifold of a saddle-node, else the x-axis direction when it is one, else
/// the first eigen-direction.
Straightened briot_bouquet_straighten(const FoliationGerm& f, int order, std::optional<Line> delta = {});

struct KilledTerm {
  int m = 0, n = 0;
  Scalar target;   // coefficient of x^m y^n before the stage
  Scalar divisor;  // n lambda + m
  Scalar chosen;   // coefficient of x^m in phi_n (in log phi_0 for n = 0)
};

struct Stage {
  std::string kind;  // "phi0", "phi" or "psi" (the final change y -> y psi(u))
  int n = 0;
  YSeries g;  // y -> y g
  std::vector<KilledTerm> terms;
};

struct TransverselyFormalTransform {
  YSeries g;  // Phi(x, y) = (x, y g(x, y))
  std::vector<Stage> stages;
  bool is_identity() const;
};

struct KillResult {
  TransverselyFormalTransform transform;
  ResonantForm form;    // after all stages
  Jet1 residual;   // coefficients of u^j; zero for irrational lambda
};

/// Stages 0..last_stage (all by default).
KillResult kill_nonresonant_terms(const ResonantForm& form, const LambdaData& l, int last_stage = -1);

struct OneVarNormalization {
  Jet1 phi;  // tangent to the identity
  int k = 0;
  Scalar alpha;    // residue of du/(u f(u))
  Scalar leading;  // f = leading u^k + ...
};

/// phi^*(du/(u f)) = du/(u f_c) with f_c = c u^k (1 - alpha c u^k) and c the
/// leading coefficient; this is du/(c u^{k+1}) + alpha du/u up to a holomorphic
/// term. f is known through its order; phi is returned through order - k + 1.
OneVarNormalization normalize_oneform_1var(const Jet1& f);

struct NormalFormInvariants {
  LambdaClass cls = LambdaClass::irrational;
  Scalar lambda;
  long p = 0, q = 1;
  bool linearizable = false;
  int k = 0;
  Scalar alpha;
  int order = 0;  // transverse order the invariants were computed at

  std::string to_string() const;
  friend bool operator==(const NormalFormInvariants& a, const NormalFormInvariants& b);
};

struct NormalFormResult {
  NormalFormInvariants inv;
  Straightening straightening;
  TransverselyFormalTransform transform;
  Scalar scale;  // leading coefficient c of the model
  ResonantForm model;  // lambda + c u^k + alpha c^2 u^{2k}
};

/// f = c u^k + alpha c^2 u^{2k} on the box for transverse order n.
ResonantForm model_form(const LambdaData& l, int k, const Scalar& alpha, const Scalar& c, int n);
/// x d/dx + (-p/q + u^k + alpha u^{2k}) y d/dy as an exact germ; p = 0, q = 1
/// gives the saddle-node x d/dx + (y^{k+1} + alpha y^{2k+1}) d/dy.
FoliationGerm normal_form_germ(long p, long q, int k, const Scalar& alpha);
FoliationGerm linear_germ(const Scalar& lambda);

/// `order` is the transverse order: coefficients of y^n for n <= order.
NormalFormResult formal_normalize(const FoliationGerm& f, int order, std::optional<Line> delta = {});

}  // namespace folred
