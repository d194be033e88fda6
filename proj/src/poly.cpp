#include "folred/poly.hpp"

#include <algorithm>
#include <set>

#include "folred/error.hpp"

namespace folred {

Poly1::Poly1(Scalar c) {
  if (!c.is_zero()) c_.push_back(std::move(c));
}

Poly1::Poly1(std::vector<Scalar> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly1 Poly1::monomial(int degree, Scalar c) {
  std::vector<Scalar> v(static_cast<std::size_t>(degree) + 1);
  v[degree] = std::move(c);
  return Poly1(std::move(v));
}

void Poly1::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Scalar Poly1::eval(const Scalar& t) const {
  Scalar acc;
  for (int k = degree(); k >= 0; --k) acc = acc * t + c_[k];
  return acc;
}

Poly1 Poly1::derivative() const {
  std::vector<Scalar> v;
  for (int k = 1; k <= degree(); ++k) v.push_back(c_[k] * Scalar(k));
  return Poly1(std::move(v));
}

Poly1 Poly1::monic() const {
  if (is_zero()) return *this;
  Scalar inv = lead().inverse();
  std::vector<Scalar> v = c_;
  for (auto& c : v) c *= inv;
  return Poly1(std::move(v));
}

int Poly1::low_degree() const {
  for (int k = 0; k <= degree(); ++k)
    if (!c_[k].is_zero()) return k;
  return -1;
}

Poly1& Poly1::operator+=(const Poly1& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Poly1& Poly1::operator-=(const Poly1& o) { return *this += -o; }

Poly1 operator-(const Poly1& a) {
  std::vector<Scalar> v = a.c_;
  for (auto& c : v) c = -c;
  return Poly1(std::move(v));
}

Poly1 operator*(const Poly1& a, const Poly1& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Scalar> v(a.c_.size() + b.c_.size() - 1);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly1(std::move(v));
}

std::pair<Poly1, Poly1> divmod(const Poly1& a, const Poly1& b) {
  if (b.is_zero()) fail(ErrorCode::internal, "polynomial division by zero");
  if (a.degree() < b.degree()) return {Poly1(), a};
  std::vector<Scalar> q(static_cast<std::size_t>(a.degree() - b.degree()) + 1);
  std::vector<Scalar> r = a.c_;
  Scalar inv = b.lead().inverse();
  for (int k = a.degree(); k >= b.degree(); --k) {
    if (r[k].is_zero()) continue;
    Scalar f = r[k] * inv;
    int s = k - b.degree();
    q[s] = f;
    for (int j = 0; j <= b.degree(); ++j) r[s + j] -= f * b.c_[j];
  }
  return {Poly1(std::move(q)), Poly1(std::move(r))};
}

std::string Poly1::to_string(const char* var) const {
  if (is_zero()) return "0";
  std::string s;
  for (int k = 0; k <= degree(); ++k) {
    if (c_[k].is_zero()) continue;
    if (!s.empty()) s += " + ";
    s += "(" + c_[k].to_string() + ")";
    if (k) s += std::string("*") + var + (k > 1 ? "^" + std::to_string(k) : "");
  }
  return s;
}

Poly1 gcd(const Poly1& a, const Poly1& b) {
  Poly1 u = a, v = b;
  while (!v.is_zero()) {
    Poly1 r = u % v;
    u = std::move(v);
    v = std::move(r);
  }
  return u.monic();
}

std::vector<std::pair<Poly1, int>> square_free(const Poly1& p) {
  std::vector<std::pair<Poly1, int>> out;
  if (p.degree() < 1) return out;
  Poly1 dp = p.derivative();
  Poly1 a = gcd(p, dp);
  Poly1 b = p / a;
  Poly1 c = dp / a;
  Poly1 d = c - b.derivative();
  for (int k = 1; b.degree() >= 1; ++k) {
    Poly1 g = gcd(b, d);
    if (g.degree() >= 1) out.emplace_back(g.monic(), k);
    b = b / g;
    c = d / g;
    d = c - b.derivative();
  }
  return out;
}

namespace {

// Divisors of |n| by trial division; a cofactor above the trial bound is taken as prime.
std::vector<mpz_class> divisors(mpz_class n) {
  n = abs(n);
  std::vector<std::pair<mpz_class, int>> fac;
  for (unsigned long p = 2; p < 1000000 && mpz_class(p) * p <= n; ++p) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      int e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        n /= p;
        ++e;
      }
      fac.emplace_back(mpz_class(p), e);
    }
  }
  if (n > 1) fac.emplace_back(n, 1);
  std::vector<mpz_class> divs{1};
  for (const auto& [p, e] : fac) {
    std::size_t m = divs.size();
    mpz_class pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < m; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

// Field automorphism sqrt(D) -> -sqrt(D).
Scalar galois(const Scalar& s) {
  if (s.discriminant() == 0) return s;
  return Scalar(s.base(), -s.ext(), s.discriminant());
}

Poly1 map_coeffs(const Poly1& p, Scalar (*f)(const Scalar&)) {
  std::vector<Scalar> v;
  for (const auto& c : p.coeffs()) v.push_back(f(c));
  return Poly1(std::move(v));
}

Scalar conj_of(const Scalar& s) { return s.conj(); }

// A rational multiple of p * conj(p) * galois(...) with rational coefficients.
std::vector<Rational> rational_norm(const Poly1& p) {
  Poly1 r = p * map_coeffs(p, galois);
  r = r * map_coeffs(r, conj_of);
  std::vector<Rational> out;
  for (const auto& c : r.coeffs()) {
    if (!c.is_rational()) fail(ErrorCode::internal, "norm polynomial is not rational");
    out.push_back(c.as_rational());
  }
  return out;
}

std::vector<Rational> rational_roots(std::vector<Rational> r) {
  std::vector<Rational> out;
  std::size_t low = 0;
  while (low < r.size() && sgn(r[low]) == 0) ++low;
  if (low > 0) out.push_back(0);
  r.erase(r.begin(), r.begin() + static_cast<long>(low));
  if (r.size() < 2) return out;
  mpz_class den = 1;
  for (const auto& c : r) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> z;
  for (const auto& c : r) z.push_back(mpz_class(c * den));
  auto ps = divisors(z.front()), qs = divisors(z.back());
  std::set<Rational> seen;
  for (const auto& p : ps)
    for (const auto& q : qs)
      for (int s : {1, -1}) {
        Rational cand(p * s, q);
        cand.canonicalize();
        if (!seen.insert(cand).second) continue;
        mpq_class acc = 0;
        for (auto it = z.rbegin(); it != z.rend(); ++it) acc = acc * cand + *it;
        if (sgn(acc) == 0) out.push_back(cand);
      }
  return out;
}

std::vector<Scalar> roots_square_free(Poly1 g) {
  std::vector<Scalar> out;
  if (g.low_degree() > 0) {
    out.emplace_back(0);
    g = g / Poly1::monomial(1);
  }
  if (g.degree() >= 3) {
    for (const Rational& r : rational_roots(rational_norm(g))) {
      if (sgn(r) == 0) continue;
      Scalar rs(r);
      if (g.eval(rs).is_zero()) {
        out.push_back(rs);
        g = g / Poly1(std::vector<Scalar>{-rs, Scalar(1)});
      }
    }
  }
  if (g.degree() == 1) {
    out.push_back(-g[0] / g[1]);
  } else if (g.degree() == 2) {
    Scalar disc = g[1] * g[1] - Scalar(4) * g[0] * g[2];
    std::optional<Scalar> s;
    try {
      s = exact_sqrt(disc);
    } catch (const Error&) {
      s.reset();
    }
    if (!s) fail(ErrorCode::unresolved_locus, "quadratic root outside the representable field");
    try {
      Scalar two_a = Scalar(2) * g[2];
      out.push_back((-g[1] + *s) / two_a);
      out.push_back((-g[1] - *s) / two_a);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::context_mismatch)
        fail(ErrorCode::unresolved_locus, "root needs a second quadratic extension");
      throw;
    }
  } else if (g.degree() >= 3) {
    fail(ErrorCode::unresolved_locus,
         "irreducible factor of degree " + std::to_string(g.degree()) + " has no representable roots");
  }
  return out;
}

bool lex_less(const Scalar& a, const Scalar& b) { return lex_compare(a, b) < 0; }

}  // namespace

std::vector<Root> roots(const Poly1& p) {
  if (p.is_zero()) fail(ErrorCode::precondition, "roots of the zero polynomial");
  std::vector<Root> out;
  for (const auto& [f, k] : square_free(p))
    for (auto& r : roots_square_free(f)) out.push_back({std::move(r), k});
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) { return lex_less(a.value, b.value); });
  return out;
}

std::vector<Direction> binary_form_roots(const std::vector<Scalar>& h) {
  Poly1 p{std::vector<Scalar>(h)};
  if (p.is_zero()) fail(ErrorCode::precondition, "binary form is zero");
  int d = static_cast<int>(h.size()) - 1;
  std::vector<Direction> out;
  if (p.degree() >= 1)
    for (auto& r : roots(p)) out.push_back({false, std::move(r.value), r.multiplicity});
  if (d > p.degree()) out.push_back({true, Scalar(0), d - p.degree()});
  return out;
}

// ---- bivariate ----

namespace {

using PolyY = std::vector<Poly1>;  // coefficients of y^j, each a polynomial in x

void trim(PolyY& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

int deg(const PolyY& a) { return static_cast<int>(a.size()) - 1; }

PolyY to_py(const Jet2& f) {
  if (!f.exact()) fail(ErrorCode::precondition, "polynomial algorithm on a truncated jet");
  int n = f.order();
  PolyY out(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    std::vector<Scalar> v(static_cast<std::size_t>(n - j) + 1);
    for (int i = 0; i + j <= n; ++i) v[i] = f.coeff(i, j);
    out[j] = Poly1(std::move(v));
  }
  trim(out);
  return out;
}

Jet2 from_py(const PolyY& a) {
  Jet2 f;
  for (int j = 0; j <= deg(a); ++j)
    for (int i = 0; i <= a[j].degree(); ++i) f.set(i, j, a[j][i]);
  return f;
}

Poly1 content(const PolyY& a) {
  Poly1 g;
  for (const auto& c : a) {
    g = gcd(g, c);
    if (g.degree() == 0) break;
  }
  return g;
}

PolyY scale(const PolyY& a, const Poly1& c) {
  PolyY r;
  for (const auto& v : a) r.push_back(v * c);
  trim(r);
  return r;
}

PolyY divide_coeffs(const PolyY& a, const Poly1& c) {
  PolyY r;
  for (const auto& v : a) r.push_back(v / c);
  return r;
}

PolyY primitive(const PolyY& a) {
  if (a.empty()) return a;
  return divide_coeffs(a, content(a));
}

PolyY prem(PolyY a, const PolyY& b) {
  const Poly1& lb = b.back();
  while (!a.empty() && deg(a) >= deg(b)) {
    Poly1 la = a.back();
    int s = deg(a) - deg(b);
    a = scale(a, lb);
    for (int j = 0; j <= deg(b); ++j) a[s + j] -= la * b[j];
    trim(a);
  }
  return a;
}

Poly1 specialize(const PolyY& a, const Scalar& x0) {
  std::vector<Scalar> v;
  for (const auto& c : a) v.push_back(c.eval(x0));
  return Poly1(std::move(v));
}

// A specialization x = x0 keeping both leading coefficients alive maps a
// y-dependent common factor to a nonconstant common factor, so a constant
// specialized gcd certifies that the gcd has y-degree zero.
bool coprime_in_y(const PolyY& a, const PolyY& b) {
  for (long x0 : {2L, -3L, 5L, 7L, -11L, 13L}) {
    Scalar t(x0);
    if (a.back().eval(t).is_zero() || b.back().eval(t).is_zero()) continue;
    return gcd(specialize(a, t), specialize(b, t)).degree() == 0;
  }
  return false;
}

PolyY gcd_py(PolyY a, PolyY b) {
  if (a.empty()) return primitive(b);
  if (b.empty()) return primitive(a);
  Poly1 c = gcd(content(a), content(b));
  if (coprime_in_y(a, b)) return {c};
  a = primitive(a);
  b = primitive(b);
  if (deg(a) < deg(b)) std::swap(a, b);
  while (!b.empty()) {
    PolyY r = prem(a, b);
    a = std::move(b);
    b = r.empty() ? r : primitive(r);
  }
  if (deg(a) == 0) return {c};
  return scale(a, c);
}

PolyY divide_py(PolyY a, const PolyY& b) {
  if (b.empty()) fail(ErrorCode::internal, "bivariate division by zero");
  if (a.empty()) return a;
  PolyY q(static_cast<std::size_t>(std::max(deg(a) - deg(b), 0)) + 1);
  while (!a.empty() && deg(a) >= deg(b)) {
    auto [qc, rc] = divmod(a.back(), b.back());
    if (!rc.is_zero()) fail(ErrorCode::internal, "inexact bivariate division");
    int s = deg(a) - deg(b);
    q[s] = qc;
    for (int j = 0; j <= deg(b); ++j) a[s + j] -= qc * b[j];
    trim(a);
  }
  if (!a.empty()) fail(ErrorCode::internal, "inexact bivariate division");
  trim(q);
  return q;
}

PolyY dy(const PolyY& a) {
  PolyY r;
  for (int j = 1; j <= deg(a); ++j) r.push_back(a[j] * Poly1(Scalar(j)));
  trim(r);
  return r;
}

PolyY sub(PolyY a, const PolyY& b) {
  if (b.size() > a.size()) a.resize(b.size());
  for (std::size_t j = 0; j < b.size(); ++j) a[j] -= b[j];
  trim(a);
  return a;
}

}  // namespace

Jet2 normalize_leading(const Jet2& f) {
  int v = f.valuation();
  if (v < 0) return f;
  for (int j = 0; j <= v; ++j)
    if (!f.coeff(v - j, j).is_zero()) return f * f.coeff(v - j, j).inverse();
  return f;
}

Jet2 gcd(const Jet2& a, const Jet2& b) {
  PolyY g = gcd_py(to_py(a), to_py(b));
  return normalize_leading(from_py(g));
}

Jet2 exact_divide(const Jet2& a, const Jet2& b) { return from_py(divide_py(to_py(a), to_py(b))); }

std::vector<std::pair<Jet2, int>> square_free(const Jet2& f) {
  std::vector<std::pair<Jet2, int>> out;
  PolyY a = to_py(f);
  if (a.empty()) fail(ErrorCode::precondition, "square-free decomposition of zero");
  Poly1 c = content(a);
  for (const auto& [g, k] : square_free(c)) {
    Jet2 gx;
    for (int i = 0; i <= g.degree(); ++i) gx.set(i, 0, g[i]);
    out.emplace_back(normalize_leading(gx), k);
  }
  PolyY p = divide_coeffs(a, c);
  if (deg(p) >= 1) {
    PolyY dp = dy(p);
    PolyY g = gcd_py(p, dp);
    PolyY b = divide_py(p, g);
    PolyY d = sub(divide_py(dp, g), dy(b));
    for (int k = 1; deg(b) >= 1; ++k) {
      PolyY h = gcd_py(b, d);
      if (deg(h) >= 1) out.emplace_back(normalize_leading(from_py(h)), k);
      b = divide_py(b, h);
      d = sub(divide_py(d, h), dy(b));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.second < r.second; });
  return out;
}

}  // namespace folred
