#include "p67/forms.hpp"

#include <algorithm>

namespace p67 {

TernaryForm TernaryForm::monomial(const Scalar& c, int i, int j, int k) {
  TernaryForm f(c.field());
  f.add_term(c, i, j, k);
  return f;
}

TernaryForm TernaryForm::linear(const Scalar& a, const Scalar& b, const Scalar& c) {
  TernaryForm f(a.field());
  f.add_term(a, 1, 0, 0);
  f.add_term(b, 0, 1, 0);
  f.add_term(c, 0, 0, 1);
  return f;
}

TernaryForm TernaryForm::of_conic(const Conic& c) {
  TernaryForm f(c.field());
  for (int i = 0; i < 3; ++i) {
    f.add_term(c.gram(i, i), i == 0 ? 2 : 0, i == 1 ? 2 : 0, i == 2 ? 2 : 0);
    for (int j = i + 1; j < 3; ++j) {
      Scalar twice = c.gram(i, j) + c.gram(i, j);
      int e[3] = {0, 0, 0};
      e[i] += 1;
      e[j] += 1;
      f.add_term(twice, e[0], e[1], e[2]);
    }
  }
  return f;
}

Conic TernaryForm::to_conic() const {
  if (degree() != 2) throw Error("InvalidArgument", "form is not quadratic");
  auto coeff = [&](int i, int j, int k) {
    auto it = terms_.find({i, j, k});
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
  };
  for (const auto& [e, c] : terms_)
    if (e[0] + e[1] + e[2] != 2) throw Error("InvalidArgument", "form is not homogeneous");
  return Conic::from_coefficients({coeff(2, 0, 0), coeff(0, 2, 0), coeff(0, 0, 2),
                                   coeff(1, 1, 0), coeff(1, 0, 1), coeff(0, 1, 1)});
}

void TernaryForm::add_term(const Scalar& c, int i, int j, int k) {
  if (c.field() != field_) throw FieldMismatch("coefficient field differs");
  if (c.is_zero()) return;
  std::array<int, 3> e = {i, j, k};
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

TernaryForm TernaryForm::operator+(const TernaryForm& o) const {
  TernaryForm r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(c, e[0], e[1], e[2]);
  return r;
}

TernaryForm TernaryForm::operator-(const TernaryForm& o) const {
  TernaryForm r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(-c, e[0], e[1], e[2]);
  return r;
}

TernaryForm TernaryForm::operator*(const TernaryForm& o) const {
  TernaryForm r(field_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_)
      r.add_term(c1 * c2, e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]);
  return r;
}

int TernaryForm::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[0] + e[1] + e[2]);
  return d;
}

Scalar TernaryForm::evaluate(const Point2& p) const {
  Scalar r = Scalar::zero(field_);
  for (const auto& [e, c] : terms_) {
    Scalar t = c;
    for (int v = 0; v < 3; ++v)
      for (int n = 0; n < e[v]; ++n) t = t * p[v];
    r = r + t;
  }
  return r;
}

bool TernaryForm::proportional_to(const TernaryForm& o) const {
  if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
  if (terms_.size() != o.terms_.size()) return false;
  auto it = terms_.begin();
  auto jt = o.terms_.begin();
  Scalar ratio = it->second / jt->second;
  for (; it != terms_.end(); ++it, ++jt) {
    if (it->first != jt->first) return false;
    if (it->second != ratio * jt->second) return false;
  }
  return true;
}

TernaryForm TernaryForm::without_monomial_content() const {
  if (is_zero()) throw ZeroForm("monomial content of the zero form");
  std::array<int, 3> mins = terms_.begin()->first;
  for (const auto& [e, c] : terms_)
    for (int v = 0; v < 3; ++v) mins[v] = std::min(mins[v], e[v]);
  TernaryForm r(field_);
  for (const auto& [e, c] : terms_)
    r.add_term(c, e[0] - mins[0], e[1] - mins[1], e[2] - mins[2]);
  return r;
}

TernaryForm TernaryForm::cremona_substituted() const {
  TernaryForm r(field_);
  for (const auto& [e, c] : terms_)
    r.add_term(c, e[1] + e[2], e[0] + e[2], e[0] + e[1]);
  return r;
}

std::string TernaryForm::to_string() const {
  if (is_zero()) return "0";
  std::string s;
  static const char* vars = "xyz";
  for (const auto& [e, c] : terms_) {
    if (!s.empty()) s += " + ";
    s += "(" + c.to_text() + ")";
    for (int v = 0; v < 3; ++v) {
      if (e[v] == 0) continue;
      s += "*";
      s += vars[v];
      if (e[v] > 1) s += "^" + std::to_string(e[v]);
    }
  }
  return s;
}

}  // namespace p67
