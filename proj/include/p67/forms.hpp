#ifndef P67_FORMS_HPP
#define P67_FORMS_HPP

#include <array>
#include <map>
#include <string>

#include "p67/field.hpp"
#include "p67/projective.hpp"

namespace p67 {

// Sparse polynomial in x, y, z over one field, keyed by exponent triples.
// Terms with zero coefficient are never stored. Used to track how plane
// curves transform under the standard quadratic involution.
class TernaryForm {
 public:
  explicit TernaryForm(const FieldDescriptor& f) : field_(f) {}
  static TernaryForm monomial(const Scalar& c, int i, int j, int k);
  // a x + b y + c z
  static TernaryForm linear(const Scalar& a, const Scalar& b, const Scalar& c);
  // the quadratic polynomial of the stored Gram matrix
  static TernaryForm of_conic(const Conic& c);
  // degree 2 forms back to a conic; anything else is rejected
  Conic to_conic() const;

  void add_term(const Scalar& c, int i, int j, int k);
  TernaryForm operator+(const TernaryForm& o) const;
  TernaryForm operator-(const TernaryForm& o) const;
  TernaryForm operator*(const TernaryForm& o) const;
  bool operator==(const TernaryForm& o) const { return field_ == o.field_ && terms_ == o.terms_; }

  bool is_zero() const { return terms_.empty(); }
  // max total degree, -1 for the zero form
  int degree() const;
  Scalar evaluate(const Point2& p) const;
  // equal up to a nonzero scalar factor
  bool proportional_to(const TernaryForm& o) const;
  // strip the largest monomial dividing every term (ZeroForm on zero input)
  TernaryForm without_monomial_content() const;
  // substitute x <- yz, y <- xz, z <- xy
  TernaryForm cremona_substituted() const;

  const FieldDescriptor& field() const { return field_; }
  const std::map<std::array<int, 3>, Scalar>& terms() const { return terms_; }
  std::string to_string() const;

 private:
  FieldDescriptor field_;
  std::map<std::array<int, 3>, Scalar> terms_;
};

}  // namespace p67

#endif  // P67_FORMS_HPP
