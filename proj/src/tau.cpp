#include "folred/tau.hpp"

#include "folred/error.hpp"

namespace folred {

TauPoly::TauPoly(Scalar c, int exponent) {
  if (!c.is_zero()) terms_.emplace(exponent, std::move(c));
}

Scalar TauPoly::coeff(int exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void TauPoly::add(int e, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TauPoly& TauPoly::operator+=(const TauPoly& o) {
  for (const auto& [e, c] : o.terms_) add(e, c);
  return *this;
}

TauPoly& TauPoly::operator-=(const TauPoly& o) {
  for (const auto& [e, c] : o.terms_) add(e, -c);
  return *this;
}

TauPoly& TauPoly::operator*=(const TauPoly& o) {
  TauPoly r;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) r.add(e1 + e2, c1 * c2);
  return *this = std::move(r);
}

TauPoly& TauPoly::operator/=(const TauPoly& o) {
  if (!o.is_monomial()) fail(ErrorCode::precondition, "tau-polynomial division only by monomials");
  const auto& [e, c] = *o.terms_.begin();
  std::map<int, Scalar> r;
  for (const auto& [e1, c1] : terms_) r.emplace(e1 - e, c1 / c);
  terms_ = std::move(r);
  return *this;
}

TauPoly& TauPoly::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

std::string TauPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [e, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.to_string() + ")";
    if (e == 1)
      s += "*tau";
    else if (e != 0)
      s += "*tau^" + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e));
  }
  return s;
}

}  // namespace folred
