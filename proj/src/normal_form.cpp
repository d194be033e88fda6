#include "folred/normal_form.hpp"

#include <algorithm>
#include <tuple>

#include "folred/error.hpp"

namespace folred {

// ---- YSeries ----

YSeries::YSeries(int x_order, int y_order) : x_order_(x_order), rows_(static_cast<std::size_t>(y_order) + 1, Jet1(x_order)) {
  if (x_order < 0 || y_order < 0) fail(ErrorCode::precondition, "negative box order");
}

YSeries YSeries::constant(int x_order, int y_order, const Scalar& c) {
  YSeries s(x_order, y_order);
  s.rows_[0][0] = c;
  return s;
}

YSeries YSeries::from_jet(const Jet2& f, int x_order, int y_order) {
  if (!f.exact() && f.order() < x_order + y_order)
    fail(ErrorCode::insufficient_order, "jet too short for the requested box");
  YSeries s(x_order, y_order);
  for (int n = 0; n <= y_order; ++n)
    for (int m = 0; m <= x_order; ++m) s.rows_[n][m] = f.coeff(m, n);
  return s;
}

Scalar YSeries::coeff(int m, int n) const {
  if (m < 0 || n < 0 || m > x_order_ || n > y_order()) return Scalar(0);
  return rows_[n][m];
}

void YSeries::set(int m, int n, Scalar c) {
  if (m < 0 || n < 0 || m > x_order_ || n > y_order()) return;
  rows_[n][m] = std::move(c);
}

bool YSeries::is_zero() const {
  return std::all_of(rows_.begin(), rows_.end(), [](const Jet1& r) { return r.is_zero(); });
}

bool YSeries::is_constant() const {
  for (int n = 0; n <= y_order(); ++n)
    for (int m = 0; m <= x_order_; ++m)
      if ((m || n) && !rows_[n][m].is_zero()) return false;
  return true;
}

Jet2 YSeries::to_jet(int order) const {
  if (order > std::min(x_order_, y_order())) fail(ErrorCode::insufficient_order, "box too small for the jet order");
  Jet2 j = Jet2::truncated_zero(order);
  for (int n = 0; n <= order; ++n)
    for (int m = 0; m + n <= order; ++m)
      if (!rows_[n][m].is_zero()) j.set(m, n, rows_[n][m]);
  return j;
}

YSeries& YSeries::operator+=(const YSeries& o) {
  if (o.x_order_ != x_order_ || o.y_order() != y_order()) fail(ErrorCode::internal, "box mismatch");
  for (std::size_t n = 0; n < rows_.size(); ++n) rows_[n] += o.rows_[n];
  return *this;
}

YSeries& YSeries::operator-=(const YSeries& o) {
  if (o.x_order_ != x_order_ || o.y_order() != y_order()) fail(ErrorCode::internal, "box mismatch");
  for (std::size_t n = 0; n < rows_.size(); ++n) rows_[n] -= o.rows_[n];
  return *this;
}

YSeries& YSeries::operator*=(const Scalar& c) {
  for (auto& r : rows_) r.scale(c);
  return *this;
}

YSeries operator*(const YSeries& a, const YSeries& b) {
  if (a.x_order_ != b.x_order_ || a.y_order() != b.y_order()) fail(ErrorCode::internal, "box mismatch");
  int N = a.y_order();
  YSeries r(a.x_order_, N);
  std::vector<bool> nzb(N + 1);
  for (int j = 0; j <= N; ++j) nzb[j] = !b.rows_[j].is_zero();
  for (int i = 0; i <= N; ++i) {
    if (a.rows_[i].is_zero()) continue;
    for (int j = 0; i + j <= N; ++j)
      if (nzb[j]) r.rows_[i + j] += a.rows_[i] * b.rows_[j];
  }
  return r;
}

bool operator==(const YSeries& a, const YSeries& b) { return a.x_order_ == b.x_order_ && a.rows_ == b.rows_; }

YSeries YSeries::x_dx() const {
  YSeries r = *this;
  for (auto& row : r.rows_)
    for (int m = 0; m <= x_order_; ++m) row[m] *= Scalar(m);
  return r;
}

YSeries YSeries::y_dy() const {
  YSeries r = *this;
  for (int n = 0; n <= y_order(); ++n) r.rows_[n].scale(Scalar(n));
  return r;
}

std::string YSeries::to_string() const {
  std::string s;
  for (int n = 0; n <= y_order(); ++n)
    for (int m = 0; m <= x_order_; ++m) {
      const Scalar& c = rows_[n][m];
      if (c.is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + c.to_string() + ")";
      if (m) s += "*x" + (m > 1 ? "^" + std::to_string(m) : std::string());
      if (n) s += "*y" + (n > 1 ? "^" + std::to_string(n) : std::string());
    }
  return s.empty() ? "0" : s;
}

YSeries reciprocal(const YSeries& s) {
  int N = s.y_order(), M = s.x_order();
  if (s.row(0)[0].is_zero()) fail(ErrorCode::precondition, "reciprocal of a non-unit series");
  YSeries r(M, N);
  Jet1 inv0 = reciprocal(s.row(0));
  r.row(0) = inv0;
  for (int n = 1; n <= N; ++n) {
    Jet1 acc(M);
    for (int j = 1; j <= n; ++j)
      if (!s.row(j).is_zero()) acc += s.row(j) * r.row(n - j);
    r.row(n) = -(acc * inv0);
  }
  return r;
}

YSeries substitute_y(const YSeries& s, const YSeries& g) {
  int N = s.y_order(), M = s.x_order();
  // P = y g, then Horner in P.
  YSeries P(M, N);
  for (int n = 1; n <= N; ++n) P.row(n) = g.row(n - 1);
  int top = N;
  while (top > 0 && s.row(top).is_zero()) --top;
  YSeries acc(M, N);
  for (int n = top; n >= 0; --n) {
    if (n < top) acc = acc * P;
    acc.row(0) += s.row(n);
  }
  return acc;
}

// ---- lambda ----

std::string to_string(LambdaClass c) {
  switch (c) {
    case LambdaClass::irrational: return "irrational";
    case LambdaClass::rational_negative: return "rational-negative";
    case LambdaClass::zero: return "zero";
  }
  return "?";
}

bool LambdaData::resonant(int m, int n) const {
  if (n < 1 || m < 0) return false;
  switch (cls) {
    case LambdaClass::zero: return m == 0;
    case LambdaClass::rational_negative: return static_cast<long>(m) * q == p * static_cast<long>(n);
    case LambdaClass::irrational: return false;
  }
  return false;
}

LambdaData classify_lambda(const Scalar& lambda) {
  LambdaData l;
  l.lambda = lambda;
  if (lambda.is_zero()) {
    l.cls = LambdaClass::zero;
    l.p = 0;
    l.q = 1;
  } else if (lambda.is_rational()) {
    const Rational& r = lambda.as_rational();
    if (sgn(r) > 0) fail(ErrorCode::non_reduced, "eigenvalue ratio in Q>0");
    if (!r.get_num().fits_slong_p() || !r.get_den().fits_slong_p())
      fail(ErrorCode::precondition, "eigenvalue ratio too large");
    l.cls = LambdaClass::rational_negative;
    l.p = -r.get_num().get_si();
    l.q = r.get_den().get_si();
  } else {
    l.cls = LambdaClass::irrational;
  }
  return l;
}

std::pair<int, int> box_orders(const LambdaData& l, int n) {
  if (n < 1) fail(ErrorCode::precondition, "transverse order must be positive");
  int mx = n;
  if (l.cls == LambdaClass::rational_negative) mx = std::max<long>(n, l.p * n / l.q);
  return {mx, n};
}

// ---- resonant forms x dy - (lambda + f) y dx ----

FoliationGerm ResonantForm::germ(int order) const {
  Jet2 fl = f.to_jet(order);
  fl.add_to(0, 0, lambda);
  Jet2 a = -(fl * Jet2::y());
  Jet2 b = Jet2::x().as_truncated(order + 1);
  return FoliationGerm::from_form(a, b);
}

FoliationGerm ResonantForm::polynomial_germ() const {
  Jet2 fl = Jet2::constant(lambda);
  for (int n = 0; n <= f.y_order(); ++n)
    for (int m = 0; m <= f.x_order(); ++m)
      if (!f.row(n)[m].is_zero()) fl.add_to(m, n, f.row(n)[m]);
  return FoliationGerm::from_form(-(fl * Jet2::y()), Jet2::x());
}

ResonantForm apply_transform(const ResonantForm& form, const YSeries& g) {
  int M = form.f.x_order(), N = form.f.y_order();
  YSeries lam = YSeries::constant(M, N, form.lambda);
  YSeries num = (lam + substitute_y(form.f, g)) * g - g.x_dx();
  YSeries den = g + g.y_dy();
  return {form.lambda, num * reciprocal(den) - lam};
}

namespace {

// Form a dx + b dy pulled back by (x, y) = (X(x, y), Y(x, y)).
std::pair<Jet2, Jet2> pull_back(const Jet2& a, const Jet2& b, const Jet2& X, const Jet2& Y) {
  Jet2 as = substitute(a, X, Y), bs = substitute(b, X, Y);
  Jet2 A = as * X.derivative_x() + bs * Y.derivative_x();
  Jet2 B = as * X.derivative_y() + bs * Y.derivative_y();
  return {A, B};
}

Jet1 log_series(const Jet1& h) {
  // log h = integral of h'/h
  Jet1 d = h.derivative() * reciprocal(h);
  Jet1 r(h.order());
  for (int k = 1; k <= h.order(); ++k) r[k] = d.coeff(k - 1) / Scalar(k);
  return r;
}

Jet1 shift_up(const Jet1& s, int k, int order) {
  Jet1 r(order);
  for (int j = 0; j + k <= order && j <= s.order(); ++j) r[j + k] = s[j];
  return r;
}

}  // namespace

Straightened briot_bouquet_straighten(const FoliationGerm& f, int order, std::optional<Line> delta) {
  LinearClass lc = linear_classify(f);
  if (lc.tag == LinearTag::regular) fail(ErrorCode::precondition, "regular germ has no separatrices to straighten");
  if (!lc.reduced()) fail(ErrorCode::non_reduced, "normal forms need a reduced singular point");
  if (lc.directions.size() != 2) fail(ErrorCode::internal, "reduced point without two eigen-directions");
  int di = -1;
  if (delta) {
    for (int i = 0; i < 2; ++i)
      if (lc.directions[i].line == *delta) di = i;
    if (di < 0) fail(ErrorCode::precondition, "requested separatrix is not an eigen-direction");
  } else if (lc.tag == LinearTag::saddle_node) {
    di = lc.directions[0].eigenvalue.is_zero() ? 1 : 0;
  } else {
    di = 0;
    for (int i = 0; i < 2; ++i)
      if (!lc.directions[i].line.vertical && lc.directions[i].line.slope.is_zero()) di = i;
  }
  const EigenDirection &d1 = lc.directions[di], &d2 = lc.directions[1 - di];
  if (d1.eigenvalue.is_zero()) fail(ErrorCode::precondition, "the central manifold cannot be sent to {y = 0}");

  Straightened out;
  out.lambda = classify_lambda(d2.eigenvalue / d1.eigenvalue);
  out.change.delta = d1.line;
  auto [mx, n] = box_orders(out.lambda, order);
  int T = mx + n;
  if (!f.exact() && f.order() < T + 1) fail(ErrorCode::insufficient_order, "germ too short for the normalization box");

  auto vec = [](const Line& l) {
    return l.vertical ? std::pair<Scalar, Scalar>{Scalar(0), Scalar(1)} : std::pair<Scalar, Scalar>{Scalar(1), l.slope};
  };
  auto [v1x, v1y] = vec(d1.line);
  auto [v2x, v2y] = vec(d2.line);
  Jet2 Lx = Jet2::x() * v1x + Jet2::y() * v2x, Ly = Jet2::x() * v1y + Jet2::y() * v2y;
  bool linear_id = Lx == Jet2::x() && Ly == Jet2::y();
  Jet2 a = f.a(), b = f.b();
  if (!linear_id) std::tie(a, b) = pull_back(a, b, Lx, Ly);
  Jet2 xm = Lx, ym = Ly;

  auto straight = [&](const Jet2& A, const Jet2& B) {
    Jet2 At = A.exact() ? A : A.truncated(T + 1), Bt = B.exact() ? B : B.truncated(T + 1);
    return (At.is_zero() || At.y_adic_valuation() >= 1) && (Bt.is_zero() || Bt.x_adic_valuation() >= 1);
  };
  bool nonlinear = !straight(a, b);
  if (nonlinear) {
    FoliationGerm g = FoliationGerm::from_form(a, b);
    std::vector<BranchJet> br = separatrix_jets(g, T + 2);
    Jet1 s, t;
    for (const auto& bj : br) (bj.tangent.vertical ? t : s) = bj.s;
    Jet2 X = Jet2::x().as_truncated(T + 2), Y = Jet2::y().as_truncated(T + 2);
    for (int k = 2; k <= t.order(); ++k) X.add_to(0, k, t[k]);
    for (int k = 2; k <= s.order(); ++k) Y.add_to(k, 0, s[k]);
    std::tie(a, b) = pull_back(a, b, X, Y);
    xm = substitute(Lx, X, Y);
    ym = substitute(Ly, X, Y);
    if (!straight(a, b)) fail(ErrorCode::internal, "straightening left a non-invariant axis");
  }
  out.change.identity = linear_id && !nonlinear;
  out.change.x_map = xm;
  out.change.y_map = ym;

  if (!a.exact()) a = a.truncated(T + 1);
  if (!b.exact()) b = b.truncated(T + 1);
  Jet2 A = a.is_zero() ? (a.exact() ? a : Jet2::truncated_zero(T)) : a.divide_monomial(0, 1);
  Jet2 B = b.divide_monomial(1, 0);
  Jet2 fl = -(A * reciprocal(B, T));
  if (fl.exact()) fl = fl.as_truncated(T);
  fl.add_to(0, 0, -out.lambda.lambda);
  if (!fl.constant_term().is_zero()) fail(ErrorCode::internal, "straightened form has the wrong eigenvalue ratio");
  out.form = {out.lambda.lambda, YSeries::from_jet(fl, mx, n)};
  return out;
}

// ---- killing stages ----

KillResult kill_nonresonant_terms(const ResonantForm& form, const LambdaData& l, int last_stage) {
  int M = form.f.x_order(), N = form.f.y_order();
  if (!form.f.coeff(0, 0).is_zero()) fail(ErrorCode::precondition, "f(0, 0) must vanish");
  if (!(form.lambda == l.lambda)) fail(ErrorCode::precondition, "lambda data does not match the form");
  if (last_stage < 0 || last_stage > N) last_stage = N;
  KillResult kr;
  ResonantForm cur = form;
  std::vector<Stage>& stages = kr.transform.stages;

  if (!cur.f.row(0).is_zero()) {
    // x phi0' = a0 phi0, phi0 = exp(sum a0_m x^m / m)
    Stage st{"phi0", 0, YSeries(M, N), {}};
    Jet1 lg(M);
    for (int m = 1; m <= M; ++m) {
      const Scalar& c = cur.f.row(0)[m];
      if (c.is_zero()) continue;
      lg[m] = c / Scalar(m);
      st.terms.push_back({m, 0, c, Scalar(m), lg[m]});
    }
    st.g.row(0) = exp_series(lg);
    cur = apply_transform(cur, st.g);
    if (!cur.f.row(0).is_zero()) fail(ErrorCode::internal, "stage 0 left an x-only term");
    stages.push_back(std::move(st));
  }

  for (int n = 1; n <= last_stage; ++n) {
    Stage st{"phi", n, YSeries::constant(M, N, Scalar(1)), {}};
    Scalar nl = Scalar(n) * l.lambda;
    for (int m = 0; m <= M; ++m) {
      const Scalar& c = cur.f.row(n)[m];
      if (c.is_zero() || l.resonant(m, n)) continue;
      Scalar div = nl + Scalar(m);
      if (div.is_zero()) fail(ErrorCode::internal, "vanishing divisor outside the resonance lattice");
      Scalar b = c / div;
      st.terms.push_back({m, n, c, div, b});
      st.g.row(n)[m] = b;
    }
    if (st.terms.empty()) continue;
    cur = apply_transform(cur, st.g);
    for (int m = 0; m <= M; ++m)
      if (!l.resonant(m, n) && !cur.f.row(n)[m].is_zero()) fail(ErrorCode::internal, "stage left a non-resonant term");
    stages.push_back(std::move(st));
  }

  YSeries G = YSeries::constant(M, N, Scalar(1));
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) G = G * substitute_y(it->g, G);
  kr.transform.g = G;
  kr.form = cur;

  int mu = l.cls == LambdaClass::rational_negative ? N / static_cast<int>(l.q) : N;
  kr.residual = Jet1(mu);
  if (l.cls != LambdaClass::irrational)
    for (int j = 1; j <= mu; ++j) kr.residual[j] = cur.f.coeff(static_cast<int>(l.p) * j, static_cast<int>(l.q) * j);
  return kr;
}

// ---- one variable ----

OneVarNormalization normalize_oneform_1var(const Jet1& f) {
  int mu = f.order();
  int k = f.valuation();
  if (k < 0) fail(ErrorCode::precondition, "f vanishes through the order: the form is linearizable");
  if (k == 0) fail(ErrorCode::precondition, "f(0) must vanish");
  if (2 * k > mu) fail(ErrorCode::insufficient_order, "the residue needs f through u^" + std::to_string(2 * k));
  OneVarNormalization out;
  out.k = k;
  Scalar c = f[k];
  out.leading = c;
  int mh = mu - k;
  Jet1 fh(mh);
  for (int j = 0; j <= mh; ++j) fh[j] = f[j + k];
  Jet1 e = reciprocal(fh);  // 1/(u f) = u^{-k-1} sum e_j u^j
  Scalar r = e[k];
  out.alpha = r;

  // Solve I_T(u h) = I_f(u) with I the antiderivatives without constant terms
  // (this is the inverse change);
  // multiplied by -c k u^k this reads R(h) = 0 with R linear in h_j as -k h_j.
  Scalar ck = c * Scalar(k);
  Scalar mb = r * c;  // -b in f_c = c u^k (1 + b u^k)
  Jet1 known(mh);
  for (int j = 1; j <= mh; ++j)
    if (j != k) known[j] = ck * e[j] / Scalar(j - k);
  auto residual = [&](const Jet1& h) {
    Jet1 inv = reciprocal(h), hk = Jet1::monomial(mh, 0);
    for (int i = 0; i < k; ++i) hk = hk * inv;
    Jet1 R = hk + known;
    R[0] -= Scalar(1);
    R -= shift_up(log_series(h), k, mh).scale(ck * r);
    // u^k H(u h) with H(v) = sum_{i >= 2} (-b)^i / (c (i-1) k) v^{(i-1) k}
    Jet1 v = shift_up(h, 1, mh), vk = Jet1::monomial(mh, 0);
    for (int i = 0; i < k; ++i) vk = vk * v;
    Jet1 H(mh), pw = vk;
    Scalar mbi = mb;
    for (int i = 2; (i - 1) * k + k <= mh; ++i) {
      mbi *= mb;
      H += Jet1(pw).scale(mbi / (c * Scalar((i - 1) * k)));
      pw = pw * vk;
    }
    R -= shift_up(H, k, mh).scale(ck);
    return R;
  };
  Jet1 h = Jet1::monomial(mh, 0);
  for (int j = 1; j <= mh; ++j) h[j] += residual(h)[j] / Scalar(k);
  if (!residual(h).is_zero()) fail(ErrorCode::internal, "one-variable normalization did not converge");
  out.phi = invert(shift_up(h, 1, mh + 1));
  return out;
}

// ---- invariants and the full pipeline ----

std::string NormalFormInvariants::to_string() const {
  std::string s = "class=" + folred::to_string(cls) + " lambda=" + lambda.to_string();
  if (cls != LambdaClass::irrational) s += " p=" + std::to_string(p) + " q=" + std::to_string(q);
  if (linearizable) return s + " linearizable";
  return s + " k=" + std::to_string(k) + " alpha=" + alpha.to_string();
}

bool operator==(const NormalFormInvariants& a, const NormalFormInvariants& b) {
  return a.cls == b.cls && a.lambda == b.lambda && a.p == b.p && a.q == b.q && a.linearizable == b.linearizable &&
         a.k == b.k && a.alpha == b.alpha;
}

bool TransverselyFormalTransform::is_identity() const { return g.row(0)[0].is_one() && g.is_constant(); }

ResonantForm model_form(const LambdaData& l, int k, const Scalar& alpha, const Scalar& c, int n) {
  auto [mx, ny] = box_orders(l, n);
  ResonantForm m{l.lambda, YSeries(mx, ny)};
  if (l.cls == LambdaClass::irrational || k == 0) return m;
  int p = static_cast<int>(l.p), q = static_cast<int>(l.q);
  m.f.set(p * k, q * k, c);
  m.f.set(2 * p * k, 2 * q * k, alpha * c * c);
  return m;
}

FoliationGerm normal_form_germ(long p, long q, int k, const Scalar& alpha) {
  if (q < 1 || p < 0 || k < 1) fail(ErrorCode::precondition, "normal form needs p >= 0, q >= 1, k >= 1");
  Jet2 Q = Jet2::y() * Scalar(Rational(-p, q));
  Q.add_to(static_cast<int>(p * k), static_cast<int>(q * k) + 1, Scalar(1));
  Q.add_to(static_cast<int>(2 * p * k), static_cast<int>(2 * q * k) + 1, alpha);
  return FoliationGerm::from_vector_field(Jet2::x(), Q);
}

FoliationGerm linear_germ(const Scalar& lambda) { return FoliationGerm::from_vector_field(Jet2::x(), Jet2::y() * lambda); }

NormalFormResult formal_normalize(const FoliationGerm& f, int order, std::optional<Line> delta) {
  Straightened st = briot_bouquet_straighten(f, order, delta);
  const LambdaData& l = st.lambda;
  KillResult kr = kill_nonresonant_terms(st.form, l);
  NormalFormResult out;
  out.straightening = st.change;
  out.inv.cls = l.cls;
  out.inv.lambda = l.lambda;
  out.inv.p = l.p;
  out.inv.q = l.q;
  out.inv.order = order;
  out.transform = kr.transform;
  int M = st.form.f.x_order(), N = st.form.f.y_order();

  if (kr.residual.is_zero()) {
    if (l.cls == LambdaClass::zero)
      fail(ErrorCode::insufficient_order, "saddle-node residual vanishes through order " + std::to_string(order));
    out.inv.linearizable = true;
    out.model = model_form(l, 0, Scalar(0), Scalar(0), order);
    if (!(kr.form.f == out.model.f)) fail(ErrorCode::internal, "linearization left resonant terms");
    return out;
  }

  OneVarNormalization one = normalize_oneform_1var(kr.residual);
  out.inv.k = one.k;
  out.inv.alpha = -one.alpha;
  out.scale = one.leading;
  // u = phi(v) with phi = v psi^q, psi(0) = 1 on the principal branch.
  Jet1 h(one.phi.order() - 1);
  for (int j = 0; j <= h.order(); ++j) h[j] = one.phi[j + 1];
  Jet1 psi = l.q == 1 ? h : root_series(h, static_cast<int>(l.q));
  YSeries gpsi(M, N);
  for (int j = 0; j <= psi.order(); ++j) gpsi.set(static_cast<int>(l.p) * j, static_cast<int>(l.q) * j, psi[j]);
  ResonantForm fin = apply_transform(kr.form, gpsi);
  out.model = model_form(l, one.k, out.inv.alpha, one.leading, order);
  if (!(fin.f == out.model.f)) fail(ErrorCode::internal, "normalized form differs from the model");
  if (!gpsi.is_constant() || !gpsi.row(0)[0].is_one()) {
    out.transform.g = gpsi * substitute_y(out.transform.g, gpsi);
    out.transform.stages.push_back({"psi", static_cast<int>(l.q), gpsi, {}});
  }
  return out;
}

}  // namespace folred
