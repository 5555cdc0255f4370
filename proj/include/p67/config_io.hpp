#ifndef P67_CONFIG_IO_HPP
#define P67_CONFIG_IO_HPP

#include <optional>
#include <string>

#include "p67/cremona.hpp"
#include "p67/dm.hpp"
#include "p67/field.hpp"

namespace p67 {

// One input file: a field plus at most one configuration of each kind. The
// six plane points are stored raw, so degenerate inputs (coincident points,
// special position) load fine and fail later in whichever construction
// actually needs genericity.
struct ConfigFile {
  FieldDescriptor field;
  std::optional<LabeledSix> plane_config;
  std::optional<P1Config> p1_config;
};

// "rational", or "prime:<decimal>" with 3 < p < 2^64 prime. ParseError
// otherwise, naming the offending part.
FieldDescriptor parse_field_spec(const std::string& text);

// Scalar literal in the declared field: an optionally signed decimal
// integer, or "a/b" with a nonzero denominator, for the rationals; a plain
// decimal (reduced mod p) for a prime field. ParseError on anything else.
Scalar parse_scalar(const std::string& text, const FieldDescriptor& f);

// JSON round trip. The document is an object with a mandatory "field" block
// ({"kind":"rational"} or {"kind":"prime","p":"<decimal>"}) and optional
// "plane_config" ({"points": six [x,y,z] triples of scalar literals}) and
// "p1_config" ({"points": [x,y] pairs, "weights": positive integers})
// blocks. Unknown keys are rejected. serialize_config(parse_config(t))
// reproduces t byte for byte whenever t is in canonical form.
ConfigFile parse_config(const std::string& text);
std::string serialize_config(const ConfigFile& c);

}  // namespace p67

#endif  // P67_CONFIG_IO_HPP
