#ifndef P67_ERRORS_HPP
#define P67_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace p67 {

// Base class for all typed failures raised by the library. `kind()` is a
// stable machine-readable tag; `what()` carries the human-readable context.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

#define P67_DEFINE_ERROR(NAME)                                      \
  struct NAME : Error {                                             \
    explicit NAME(const std::string& msg = "") : Error(#NAME, msg) {} \
  }

// exact fields
P67_DEFINE_ERROR(DivisionByZero);
P67_DEFINE_ERROR(FieldMismatch);
P67_DEFINE_ERROR(ExtensionDepthExceeded);
P67_DEFINE_ERROR(InvalidField);
P67_DEFINE_ERROR(FactorizationLimit);

// projective geometry
P67_DEFINE_ERROR(ZeroVector);
P67_DEFINE_ERROR(NotUnique);
P67_DEFINE_ERROR(DegenerateConic);
P67_DEFINE_ERROR(PointOnConic);
P67_DEFINE_ERROR(PointNotOnConic);
P67_DEFINE_ERROR(CenterEqualsPoint);
P67_DEFINE_ERROR(DegenerateTriple);
P67_DEFINE_ERROR(DegenerateFrame);

// cremona
P67_DEFINE_ERROR(IndeterminatePoint);
P67_DEFINE_ERROR(ZeroForm);
P67_DEFINE_ERROR(CollinearBase);
P67_DEFINE_ERROR(DegenerateFourthPoint);
P67_DEFINE_ERROR(NotGeneric);

// configurations on the line
P67_DEFINE_ERROR(TooFewDistinctPoints);
P67_DEFINE_ERROR(WeightMismatch);

// plane/line bridge
P67_DEFINE_ERROR(DuplicatePoint);
P67_DEFINE_ERROR(NotInDomain);
P67_DEFINE_ERROR(NotOnConic);
P67_DEFINE_ERROR(NoFrame);
P67_DEFINE_ERROR(UnliftableOverField);
P67_DEFINE_ERROR(NotInStratum);
P67_DEFINE_ERROR(WrongStratum);
P67_DEFINE_ERROR(WrongDegeneracy);

// cli / io
P67_DEFINE_ERROR(ParseError);
P67_DEFINE_ERROR(ExhaustedRetries);
P67_DEFINE_ERROR(UnknownSuite);

#undef P67_DEFINE_ERROR

// NotIrreducible keeps the degenerate conic's data alive so the caller can
// decide whether a rank < 3 conic is acceptable; defined in projective.hpp.

}  // namespace p67

#endif  // P67_ERRORS_HPP
