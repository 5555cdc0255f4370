#ifndef P67_FIELD_HPP
#define P67_FIELD_HPP

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>

#include "p67/errors.hpp"

namespace p67 {

class Scalar;

// Describes one of the supported exact coefficient fields:
//   * the rationals,
//   * a prime field F_p with 3 < p < 2^64,
//   * a single quadratic extension of either (adjoining sqrt(d) for a
//     non-square d of the base field).
// Towers deeper than one quadratic layer are rejected with
// ExtensionDepthExceeded at the point where a second sqrt would be needed.
// Descriptors are immutable and cheap to copy.
class FieldDescriptor {
 public:
  enum class Kind { rationals, prime, quadratic };

  // The rationals. Default-constructed descriptors are this field.
  FieldDescriptor() : FieldDescriptor(rationals()) {}
  static FieldDescriptor rationals();
  // Requires p prime (deterministic Miller-Rabin, exact for 64-bit inputs)
  // and p > 3.
  static FieldDescriptor prime(std::uint64_t p);
  // Base must not itself be an extension. d must be a nonzero non-square in
  // `base`. Over the rationals d is replaced by the squarefree core of
  // num(d)*den(d), so equal extensions get equal descriptors.
  static FieldDescriptor quadratic(const FieldDescriptor& base, const Scalar& d);

  Kind kind() const;
  bool is_extension() const { return kind() == Kind::quadratic; }
  Kind base_kind() const;
  // Characteristic: p for prime fields and their extensions, 0 otherwise.
  const mpz_class& characteristic() const;
  FieldDescriptor base() const;
  // The adjoined square's value as an element of base(). Quadratic only.
  Scalar discriminant() const;
  // Raw stored discriminant: squarefree integer or residue; 0 when not an
  // extension.
  const mpz_class& discriminant_raw() const;

  bool operator==(const FieldDescriptor& o) const;
  bool operator!=(const FieldDescriptor& o) const { return !(*this == o); }

  std::string to_string() const;
  // Short stable tag used inside canonical keys.
  std::string key_tag() const;

 private:
  struct Data;
  explicit FieldDescriptor(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;

  friend class Scalar;
};

// An immutable element of the field named by its descriptor. Extension
// elements are stored as a + b*sqrt(d) with components in the base field;
// base-field elements keep b = 0. Prime-field residues are stored as the
// canonical representative in [0, p). All arithmetic is exact, and operands
// of distinct fields are rejected with FieldMismatch (use embedded_into for
// the explicit base-to-extension embedding).
class Scalar {
 public:
  Scalar() : Scalar(FieldDescriptor::rationals(), 0, 0) {}

  static Scalar zero(const FieldDescriptor& f);
  static Scalar one(const FieldDescriptor& f);
  static Scalar of_int(const FieldDescriptor& f, long v);
  // Reduces v into f: identity on the rationals, num*den^-1 for prime fields
  // (DivisionByZero if p divides den).
  static Scalar of_rational(const FieldDescriptor& f, const mpq_class& v);
  // a + b*sqrt(d) with a, b elements of f.base(); f must be quadratic.
  static Scalar extension(const FieldDescriptor& f, const Scalar& a, const Scalar& b);

  const FieldDescriptor& field() const { return field_; }
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar inv() const;
  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // Galois conjugate a - b*sqrt(d) on extension elements, identity otherwise.
  Scalar conjugate() const;
  // Field norm to the base field: a^2 - d*b^2 for extensions, the element
  // itself otherwise.
  Scalar norm() const;

  // Principal square root. Stays in the current field when possible and
  // otherwise adjoins the missing root (ExtensionDepthExceeded if the current
  // field is already an extension). Of the two roots the canonical one has a
  // canonically positive leading nonzero component: positive over the
  // rationals, in [1, (p-1)/2] over a prime field.
  static Scalar sqrt(const Scalar& a);
  // True when sqrt(a) exists within a's own field.
  bool is_square() const;

  // Identity if f equals the current field; embeds a base element into its
  // quadratic extension f; anything else is a FieldMismatch.
  Scalar embedded_into(const FieldDescriptor& f) const;

  // Deterministic serialization; equal keys iff equal scalars of equal
  // fields. Keys compare with plain byte order.
  std::string canonical_key() const;
  // Value-only text: decimal for integers and residues, "a/b" for
  // non-integral rationals. Extension elements render as a+b*sqrt(d).
  std::string to_text() const;

  // Component access for serialization. `a` and `b` are base-field values
  // (numerator over denominator for rationals, residue/1 for prime fields).
  const mpq_class& comp_a() const { return a_; }
  const mpq_class& comp_b() const { return b_; }

 private:
  Scalar(FieldDescriptor f, mpq_class a, mpq_class b)
      : field_(std::move(f)), a_(std::move(a)), b_(std::move(b)) {}

  void require_same_field(const Scalar& o) const;

  FieldDescriptor field_;
  mpq_class a_;
  mpq_class b_;

  friend class FieldDescriptor;
};

// Byte order on canonical keys; a total order usable for sorting. It is not
// compatible with field arithmetic and carries no numeric meaning.
inline bool key_less(const Scalar& x, const Scalar& y) {
  return x.canonical_key() < y.canonical_key();
}

// Deterministic Miller-Rabin, exact for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

// Squarefree core of a nonzero integer: n = s^2 * core with core squarefree
// and sign(core) = sign(n). Factorization runs trial division then
// Pollard-Brent rounds with a bounded work budget; FactorizationLimit is
// raised if the budget is exhausted (practically unreachable for inputs in
// this codebase).
mpz_class squarefree_core(const mpz_class& n, mpz_class* sqrt_part = nullptr);

}  // namespace p67

#endif  // P67_FIELD_HPP
