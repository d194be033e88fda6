#include "folred/scalar.hpp"

#include <array>
#include <utility>

#include "folred/error.hpp"

namespace folred {

Gaussian operator*(const Gaussian& a, const Gaussian& b) {
  if (a.is_real() && b.is_real()) return Gaussian(a.re * b.re);
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

Gaussian operator/(const Gaussian& a, const Gaussian& b) {
  if (b.is_zero()) fail(ErrorCode::precondition, "division by zero");
  if (b.is_real()) return {a.re / b.re, a.im / b.re};
  Rational n = b.norm();
  Gaussian num = a * b.conj();
  return {num.re / n, num.im / n};
}

namespace {

// n = s^2 * m with m square-free (trial division; cofactors beyond the bound
// are assumed square-free unless they are perfect squares).
std::pair<mpz_class, mpz_class> split_square(mpz_class n) {
  mpz_class s = 1, m = 1;
  if (n < 0) fail(ErrorCode::internal, "split_square of a negative integer");
  for (unsigned long p = 2; p <= 1000000 && mpz_class(p) * p <= n; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      n /= p;
      ++e;
    }
    for (int k = 0; k < e / 2; ++k) s *= p;
    if (e % 2) m *= p;
  }
  if (n > 1) {
    if (mpz_perfect_square_p(n.get_mpz_t())) {
      mpz_class r;
      mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
      s *= r;
    } else {
      m *= n;
    }
  }
  return {s, m};
}

bool rational_is_square(const Rational& q, Rational& root) {
  if (q < 0) return false;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t())) return false;
  mpz_class n, d;
  mpz_sqrt(n.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), q.get_den_mpz_t());
  root = Rational(n, d);
  root.canonicalize();
  return true;
}

// sqrt(q) = c * sqrt(m) with c rational, m square-free positive (m == 1 when rational).
std::pair<Rational, long> rational_sqrt_parts(const Rational& q) {
  mpz_class k = q.get_num() * q.get_den();
  auto [s, m] = split_square(abs(k));
  if (!m.fits_slong_p()) fail(ErrorCode::unresolved_locus, "square-free part too large for an extension");
  Rational c(s, q.get_den());
  c.canonicalize();
  return {c, m.get_si()};
}

std::optional<Gaussian> gaussian_sqrt(const Gaussian& g) {
  if (g.is_zero()) return Gaussian{};
  Rational r;
  if (g.is_real()) {
    if (rational_is_square(abs(g.re), r)) return g.re > 0 ? Gaussian(r) : Gaussian(0, r);
    return std::nullopt;
  }
  Rational modulus;
  if (!rational_is_square(g.norm(), modulus)) return std::nullopt;
  Rational w = (g.re + modulus) / 2;
  Rational x;
  if (!rational_is_square(w, x) || x == 0) return std::nullopt;
  return Gaussian(x, g.im / (2 * x));
}

bool rational_root(const Rational& q, unsigned n, Rational& root) {
  if (q < 0) return false;
  mpz_class a, b;
  if (!mpz_root(a.get_mpz_t(), q.get_num_mpz_t(), n)) return false;
  if (!mpz_root(b.get_mpz_t(), q.get_den_mpz_t(), n)) return false;
  root = Rational(a, b);
  root.canonicalize();
  return true;
}

}  // namespace

Scalar::Scalar(Gaussian a, Gaussian b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (d_ < 0 || d_ == 1) fail(ErrorCode::precondition, "extension discriminant must be square-free and > 1");
  normalize();
}

Scalar Scalar::sqrt_of(long n) {
  if (n < 0) return Scalar::i() * sqrt_of(-n);
  auto [c, m] = rational_sqrt_parts(Rational(n));
  if (m == 1) return Scalar(c);
  return Scalar(Gaussian{}, Gaussian(c), m);
}

void Scalar::normalize() {
  if (b_.is_zero()) d_ = 0;
}

long Scalar::merge_context(const Scalar& o) const {
  if (d_ != 0 && o.d_ != 0 && d_ != o.d_)
    fail(ErrorCode::context_mismatch,
         "mixing quadratic extensions sqrt" + std::to_string(d_) + " and sqrt" + std::to_string(o.d_));
  return d_ != 0 ? d_ : o.d_;
}

int Scalar::sign() const {
  if (!is_real()) fail(ErrorCode::precondition, "sign of a non-real scalar");
  int sa = sgn(a_.re), sb = sgn(b_.re);
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // a and b*sqrt(d) have opposite signs: compare magnitudes.
  Rational lhs = a_.re * a_.re, rhs = b_.re * b_.re * d_;
  if (lhs == rhs) return 0;
  return lhs > rhs ? sa : sb;
}

const Rational& Scalar::as_rational() const {
  if (!is_rational()) fail(ErrorCode::precondition, "scalar is not rational: " + to_string());
  return a_.re;
}

Scalar Scalar::conj() const {
  Scalar r = *this;
  r.a_ = a_.conj();
  r.b_ = b_.conj();
  return r;
}

Scalar Scalar::inverse() const {
  if (is_zero()) fail(ErrorCode::precondition, "division by zero");
  if (b_.is_zero()) return Scalar(Gaussian(1) / a_);
  // (a + b r)^-1 = (a - b r) / (a^2 - b^2 d)
  Gaussian n = a_ * a_ - b_ * b_ * Gaussian(Rational(d_));
  Scalar r;
  r.a_ = a_ / n;
  r.b_ = -(b_ / n);
  r.d_ = d_;
  r.normalize();
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  d_ = merge_context(o);
  a_ = a_ + o.a_;
  if (!o.b_.is_zero()) b_ = b_ + o.b_;
  normalize();
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  d_ = merge_context(o);
  a_ = a_ - o.a_;
  if (!o.b_.is_zero()) b_ = b_ - o.b_;
  normalize();
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  long d = merge_context(o);
  if (b_.is_zero() && o.b_.is_zero()) {
    a_ = a_ * o.a_;
  } else {
    Gaussian na = a_ * o.a_ + b_ * o.b_ * Gaussian(Rational(d));
    Gaussian nb = a_ * o.b_ + b_ * o.a_;
    a_ = std::move(na);
    b_ = std::move(nb);
  }
  d_ = d;
  normalize();
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.b_.is_zero()) {
    if (o.a_.is_zero()) fail(ErrorCode::precondition, "division by zero");
    a_ = a_ / o.a_;
    if (!b_.is_zero()) b_ = b_ / o.a_;
    normalize();
    return *this;
  }
  return *this *= o.inverse();
}

Scalar operator-(const Scalar& a) {
  Scalar r = a;
  r.a_ = -a.a_;
  r.b_ = -a.b_;
  return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!a.b_.is_zero() || !b.b_.is_zero()) {
    if (a.d_ != b.d_) return false;
    if (!(a.b_ == b.b_)) return false;
  }
  return a.a_ == b.a_;
}

std::strong_ordering lex_compare(const Scalar& a, const Scalar& b) {
  auto order = [](const Rational& x, const Rational& y) {
    int c = ::cmp(x, y);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  };
  for (auto [x, y] : std::array<std::pair<const Rational*, const Rational*>, 4>{
           {{&a.a_.re, &b.a_.re}, {&a.a_.im, &b.a_.im}, {&a.b_.re, &b.b_.re}, {&a.b_.im, &b.b_.im}}}) {
    auto c = order(*x, *y);
    if (c != 0) return c;
  }
  return a.d_ <=> b.d_;
}

namespace {

std::string gaussian_string(const Gaussian& g) {
  auto imag = [](const Rational& im) {
    if (im == 1) return std::string("i");
    if (im == -1) return std::string("-i");
    return im.get_str() + "*i";
  };
  if (g.is_real()) return g.re.get_str();
  if (sgn(g.re) == 0) return imag(g.im);
  std::string im = imag(g.im);
  return g.re.get_str() + (im[0] == '-' ? "" : "+") + im;
}

}  // namespace

std::string Scalar::to_string() const {
  std::string s = (b_.is_zero() || !a_.is_zero()) ? gaussian_string(a_) : std::string();
  if (!b_.is_zero()) {
    std::string root = "sqrt" + std::to_string(d_);
    std::string term;
    if (b_.is_real()) {
      if (b_.re == 1)
        term = root;
      else if (b_.re == -1)
        term = "-" + root;
      else
        term = b_.re.get_str() + "*" + root;
    } else {
      term = "(" + gaussian_string(b_) + ")*" + root;
    }
    if (!s.empty() && term[0] != '-') s += "+";
    s += term;
  }
  return s;
}

Scalar pow(Scalar base, unsigned exp) {
  Scalar r(1);
  while (exp) {
    if (exp & 1u) r *= base;
    exp >>= 1u;
    if (exp) base *= base;
  }
  return r;
}

std::optional<Scalar> exact_sqrt(const Scalar& s) {
  if (s.is_zero()) return Scalar(0);
  if (s.is_gaussian()) {
    const Gaussian& g = s.base();
    if (auto r = gaussian_sqrt(g)) return Scalar(*r);
    if (g.is_real()) {
      auto [c, m] = rational_sqrt_parts(g.re);
      Gaussian coeff = g.re > 0 ? Gaussian(c) : Gaussian(0, c);
      return Scalar(Gaussian{}, coeff, m);
    }
    Rational modulus;
    if (!rational_is_square(g.norm(), modulus)) return std::nullopt;
    Rational w = (g.re + modulus) / 2;
    auto [e, m] = rational_sqrt_parts(w);
    if (m == 1 || e == 0) return std::nullopt;
    // sqrt = sqrt(m) * (e + i * im / (2 e m))
    Rational y = g.im / (2 * e * m);
    return Scalar(Gaussian{}, Gaussian(e, y), m);
  }
  // (u + v r)^2 = a + b r  =>  u^2 + v^2 d = a, 2 u v = b.
  const Gaussian& a = s.base();
  const Gaussian& b = s.ext();
  long d = s.discriminant();
  auto t = gaussian_sqrt(a * a - b * b * Gaussian(Rational(d)));
  if (!t) return std::nullopt;
  for (int sgn_t : {1, -1}) {
    Gaussian w = (a + (sgn_t > 0 ? *t : -*t)) / Gaussian(2);
    if (w.is_zero()) continue;
    if (auto u = gaussian_sqrt(w)) {
      Scalar cand(*u, b / (Gaussian(2) * *u), d);
      if (cand * cand == s) return cand;
    }
    if (auto e = gaussian_sqrt(w / Gaussian(Rational(d)))) {
      Scalar cand(b / (Gaussian(2) * *e), *e, d);
      if (cand * cand == s) return cand;
    }
  }
  return std::nullopt;
}

std::optional<Scalar> exact_root(const Scalar& s, unsigned n) {
  if (n == 0) fail(ErrorCode::precondition, "zeroth root");
  if (n == 1 || s.is_zero()) return s;
  if (!s.is_gaussian()) return std::nullopt;
  static const std::array<Gaussian, 8> units = {Gaussian(1),     Gaussian(-1),    Gaussian(0, 1),   Gaussian(0, -1),
                                                Gaussian(1, 1),  Gaussian(1, -1), Gaussian(-1, 1),  Gaussian(-1, -1)};
  for (const Gaussian& z : units) {
    Scalar zn = pow(Scalar(z), n);
    Scalar w = s / zn;
    if (!w.is_rational() || w.as_rational() < 0) continue;
    Rational r;
    if (rational_root(w.as_rational(), n, r)) return Scalar(z) * Scalar(r);
  }
  return std::nullopt;
}

}  // namespace folred
