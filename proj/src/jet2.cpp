#include "folred/jet2.hpp"

#include <algorithm>

#include "folred/error.hpp"

namespace folred {

namespace {
const Scalar kZero{};

std::string monomial_text(int i, int j) {
  std::string s;
  auto var = [&](const char* v, int e) {
    if (e == 0) return;
    if (!s.empty()) s += "*";
    s += v;
    if (e > 1) s += "^" + std::to_string(e);
  };
  var("x", i);
  var("y", j);
  return s;
}
}  // namespace

Jet2::Jet2(int order, bool exact) : order_(order), exact_(exact) {
  if (order < 0) fail(ErrorCode::precondition, "negative truncation order");
  coeffs_.assign(index(order + 1, 0), Scalar());
}

Jet2 Jet2::truncated_zero(int order) { return Jet2(order, false); }

Jet2 Jet2::constant(Scalar c) {
  Jet2 r;
  r.coeffs_[0] = std::move(c);
  return r;
}

Jet2 Jet2::monomial(int i, int j, Scalar c) {
  Jet2 r(i + j, true);
  r.coeffs_[index(i, j)] = std::move(c);
  r.trim();
  return r;
}

const Scalar& Jet2::coeff(int i, int j) const {
  if (i < 0 || j < 0 || i + j > order_) return kZero;
  return coeffs_[index(i, j)];
}

void Jet2::grow(int order) {
  if (order <= order_) return;
  coeffs_.resize(index(order + 1, 0));
  order_ = order;
}

void Jet2::trim() {
  if (!exact_) return;
  int d = degree();
  order_ = std::max(d, 0);
  coeffs_.resize(index(order_ + 1, 0));
}

void Jet2::set(int i, int j, Scalar c) {
  if (i + j > order_) {
    if (!exact_ || c.is_zero()) return;
    grow(i + j);
  }
  coeffs_[index(i, j)] = std::move(c);
  if (exact_ && i + j == order_) trim();
}

void Jet2::add_to(int i, int j, const Scalar& c) {
  if (i + j > order_) {
    if (!exact_ || c.is_zero()) return;
    grow(i + j);
  }
  coeffs_[index(i, j)] += c;
  if (exact_ && i + j == order_) trim();
}

bool Jet2::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Scalar& c) { return c.is_zero(); });
}

int Jet2::valuation() const {
  for (int d = 0; d <= order_; ++d)
    for (int j = 0; j <= d; ++j)
      if (!coeffs_[index(d - j, j)].is_zero()) return d;
  return -1;
}

int Jet2::degree() const {
  for (int d = order_; d >= 0; --d)
    for (int j = 0; j <= d; ++j)
      if (!coeffs_[index(d - j, j)].is_zero()) return d;
  return -1;
}

int Jet2::x_adic_valuation() const {
  int best = order_ + 1;
  for (int d = 0; d <= order_; ++d)
    for (int j = 0; j <= d; ++j)
      if (!coeffs_[index(d - j, j)].is_zero()) best = std::min(best, d - j);
  return best;
}

int Jet2::y_adic_valuation() const {
  int best = order_ + 1;
  for (int d = 0; d <= order_; ++d)
    for (int j = 0; j <= d; ++j)
      if (!coeffs_[index(d - j, j)].is_zero()) best = std::min(best, j);
  return best;
}

std::vector<Scalar> Jet2::homogeneous(int d) const {
  std::vector<Scalar> h(static_cast<std::size_t>(d) + 1);
  for (int j = 0; j <= d; ++j) h[j] = coeff(d - j, j);
  return h;
}

Jet2 Jet2::truncated(int order) const {
  if (exact_ && order >= order_) return *this;
  Jet2 r(std::min(order, order_), false);
  std::copy_n(coeffs_.begin(), r.coeffs_.size(), r.coeffs_.begin());
  return r;
}

Jet2 Jet2::as_truncated(int order) const {
  Jet2 r(order, false);
  std::size_t n = std::min(r.coeffs_.size(), coeffs_.size());
  std::copy_n(coeffs_.begin(), n, r.coeffs_.begin());
  return r;
}

int combined_order(const Jet2& a, const Jet2& b) {
  if (a.exact() && b.exact()) return std::max(a.order(), b.order());
  if (a.exact()) return b.order();
  if (b.exact()) return a.order();
  return std::min(a.order(), b.order());
}

Jet2& Jet2::operator+=(const Jet2& o) {
  int n = combined_order(*this, o);
  bool ex = exact_ && o.exact_;
  if (ex) {
    grow(n);
  } else if (n < order_ || exact_) {
    *this = as_truncated(n);
  }
  exact_ = ex;
  int lim = std::min(n, o.order_);
  for (int d = 0; d <= lim; ++d)
    for (int j = 0; j <= d; ++j) {
      const Scalar& c = o.coeffs_[index(d - j, j)];
      if (!c.is_zero()) coeffs_[index(d - j, j)] += c;
    }
  trim();
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) { return *this += -o; }

Jet2& Jet2::operator*=(const Scalar& c) {
  for (auto& v : coeffs_)
    if (!v.is_zero()) v *= c;
  trim();
  return *this;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  bool ex = a.exact_ && b.exact_;
  int n;
  if (ex)
    n = std::max(a.degree(), 0) + std::max(b.degree(), 0);
  else
    n = combined_order(a, b);
  Jet2 r(n, ex);
  int va = a.valuation(), vb = b.valuation();
  if (va < 0 || vb < 0) {
    r.trim();
    return r;
  }
  int da = std::min(a.order_, n - vb), db = std::min(b.order_, n - va);
  for (int d1 = va; d1 <= da; ++d1)
    for (int j1 = 0; j1 <= d1; ++j1) {
      const Scalar& c1 = a.coeffs_[Jet2::index(d1 - j1, j1)];
      if (c1.is_zero()) continue;
      for (int d2 = vb; d2 <= db && d1 + d2 <= n; ++d2)
        for (int j2 = 0; j2 <= d2; ++j2) {
          const Scalar& c2 = b.coeffs_[Jet2::index(d2 - j2, j2)];
          if (!c2.is_zero()) r.coeffs_[Jet2::index(d1 - j1 + d2 - j2, j1 + j2)] += c1 * c2;
        }
    }
  r.trim();
  return r;
}

bool operator==(const Jet2& a, const Jet2& b) {
  return a.exact_ == b.exact_ && a.order_ == b.order_ && a.coeffs_ == b.coeffs_;
}

bool Jet2::agrees_through(const Jet2& o, int n) const {
  for (int d = 0; d <= n; ++d)
    for (int j = 0; j <= d; ++j)
      if (!(coeff(d - j, j) == o.coeff(d - j, j))) return false;
  return true;
}

Jet2 Jet2::derivative_x() const {
  Jet2 r(std::max(order_ - 1, 0), exact_);
  for (int d = 1; d <= order_; ++d)
    for (int j = 0; j < d; ++j) {
      const Scalar& c = coeffs_[index(d - j, j)];
      if (!c.is_zero()) r.coeffs_[index(d - j - 1, j)] = c * Scalar(d - j);
    }
  r.trim();
  return r;
}

Jet2 Jet2::derivative_y() const {
  Jet2 r(std::max(order_ - 1, 0), exact_);
  for (int d = 1; d <= order_; ++d)
    for (int j = 1; j <= d; ++j) {
      const Scalar& c = coeffs_[index(d - j, j)];
      if (!c.is_zero()) r.coeffs_[index(d - j, j - 1)] = c * Scalar(j);
    }
  r.trim();
  return r;
}

Jet2 Jet2::divide_monomial(int i, int j) const {
  if (i == 0 && j == 0) return *this;
  int n = order_ - i - j;
  if (n < 0) {
    if (exact_ && is_zero()) return Jet2();
    fail(ErrorCode::insufficient_order, "monomial division exhausts the truncation order");
  }
  Jet2 r(n, exact_);
  for (int d = 0; d <= order_; ++d)
    for (int jj = 0; jj <= d; ++jj) {
      const Scalar& c = coeffs_[index(d - jj, jj)];
      if (c.is_zero()) continue;
      int ii = d - jj;
      if (ii < i || jj < j) fail(ErrorCode::internal, "monomial does not divide the jet");
      r.coeffs_[index(ii - i, jj - j)] = c;
    }
  r.trim();
  return r;
}

Jet2 substitute(const Jet2& s, const Jet2& X, const Jet2& Y) {
  bool x0 = X.constant_term().is_zero(), y0 = Y.constant_term().is_zero();
  if (!s.exact() && !(x0 && y0))
    fail(ErrorCode::precondition, "substitution into a truncated jet needs X(0,0) = Y(0,0) = 0");
  bool ex = s.exact() && X.exact() && Y.exact();
  int n = 0;
  if (!ex) {
    n = 1 << 30;
    if (!s.exact()) n = std::min(n, s.order());
    if (!X.exact()) n = std::min(n, X.order());
    if (!Y.exact()) n = std::min(n, Y.order());
  }
  auto cut = [&](const Jet2& j) { return ex ? j : j.as_truncated(std::min(n, j.exact() ? n : j.order())); };
  int deg = s.exact() ? std::max(s.degree(), 0) : s.order();
  std::vector<Jet2> ypow{cut(Jet2::constant(Scalar(1)))};
  Jet2 Yc = cut(Y), Xc = cut(X);
  for (int j = 1; j <= deg; ++j) ypow.push_back(ypow.back() * Yc);
  // Horner in x: s = sum_i x^i * (sum_j s_ij y^j)
  Jet2 acc = cut(Jet2());
  for (int i = deg; i >= 0; --i) {
    acc = acc * Xc;
    Jet2 inner = cut(Jet2());
    for (int j = 0; i + j <= deg; ++j) {
      const Scalar& c = s.coeff(i, j);
      if (!c.is_zero()) inner += ypow[j] * c;
    }
    acc += inner;
  }
  return acc;
}

Jet1 Jet2::along_graph_y(const Jet1& f) const {
  int n = exact_ ? f.order() : std::min(order_, f.order());
  Jet1 x = Jet1::identity(n), y = f.truncated(n);
  Jet1 acc(n);
  int deg = exact_ ? std::max(degree(), 0) : order_;
  std::vector<Jet1> ypow{Jet1::monomial(n, 0)};
  for (int j = 1; j <= deg; ++j) ypow.push_back(ypow.back() * y);
  for (int i = deg; i >= 0; --i) {
    acc = acc * x;
    for (int j = 0; i + j <= deg; ++j)
      if (!coeff(i, j).is_zero()) acc += Jet1(ypow[j]).scale(coeff(i, j));
  }
  return acc;
}

Jet1 Jet2::along_graph_x(const Jet1& f) const {
  Jet2 swapped = exact_ ? Jet2() : truncated_zero(order_);
  for (int d = 0; d <= order_; ++d)
    for (int j = 0; j <= d; ++j) swapped.set(j, d - j, coeff(d - j, j));
  return swapped.along_graph_y(f);
}

Jet1 Jet2::restrict_x_axis() const {
  Jet1 r(order_);
  for (int i = 0; i <= order_; ++i) r[i] = coeff(i, 0);
  return r;
}

Jet1 Jet2::restrict_y_axis() const {
  Jet1 r(order_);
  for (int j = 0; j <= order_; ++j) r[j] = coeff(0, j);
  return r;
}

Jet2 reciprocal(const Jet2& s, int order) {
  const Scalar& c0 = s.constant_term();
  if (c0.is_zero()) fail(ErrorCode::precondition, "reciprocal of a non-unit jet");
  int n = s.exact() ? order : std::min(order, s.order());
  // 1/s = (1/c0) * sum_k (-h)^k with h = s/c0 - 1, h(0) = 0.
  Scalar inv = c0.inverse();
  Jet2 h = s.as_truncated(n) * inv;
  h.set(0, 0, Scalar(0));
  Jet2 term = Jet2::truncated_zero(n);
  term.set(0, 0, Scalar(1));
  Jet2 acc = term;
  Jet2 mh = -h;
  for (int k = 1; k <= n; ++k) {
    term = term * mh;
    if (term.is_zero()) break;
    acc += term;
  }
  return acc * inv;
}

std::string Jet2::to_string() const {
  std::string s;
  for (int d = 0; d <= order_; ++d)
    for (int j = 0; j <= d; ++j) {
      const Scalar& c = coeffs_[index(d - j, j)];
      if (c.is_zero()) continue;
      std::string mono = monomial_text(d - j, j);
      bool neg = c.is_rational() && sgn(c.as_rational()) < 0;
      Scalar mag = neg ? -c : c;
      std::string cs;
      if (mag.is_rational())
        cs = mag.to_string();
      else
        cs = "(" + mag.to_string() + ")";
      std::string term;
      if (mono.empty())
        term = cs;
      else if (mag.is_one())
        term = mono;
      else
        term = cs + "*" + mono;
      if (s.empty())
        s = (neg ? "-" : "") + term;
      else
        s += (neg ? " - " : " + ") + term;
    }
  if (s.empty()) s = "0";
  if (!exact_) s += " + O(" + std::to_string(order_ + 1) + ")";
  return s;
}

}  // namespace folred
