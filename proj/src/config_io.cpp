#include "p67/config_io.hpp"

#include <gmpxx.h>

#include <nlohmann/json.hpp>
#include <vector>

#include "p67/errors.hpp"

namespace p67 {

using ordered_json = nlohmann::ordered_json;

namespace {

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

std::uint64_t parse_prime_modulus(const std::string& text, const std::string& where) {
  if (!all_digits(text)) throw ParseError(where + ": modulus must be a decimal integer");
  mpz_class v(text, 10);
  if (!v.fits_ulong_p() || sizeof(unsigned long) < 8)
    throw ParseError(where + ": modulus does not fit below 2^64");
  std::uint64_t p = v.get_ui();
  if (p <= 3) throw ParseError(where + ": modulus must exceed 3");
  if (!is_prime_u64(p)) throw ParseError(where + ": " + text + " is composite");
  return p;
}

// The object keys actually consumed; anything else is a typo worth flagging.
void reject_unknown_keys(const ordered_json& obj, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) throw ParseError(where + ": unknown key \"" + it.key() + "\"");
  }
}

const ordered_json& require(const ordered_json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing \"" + key + "\"");
  return *it;
}

std::string require_string(const ordered_json& j, const std::string& where) {
  if (!j.is_string()) throw ParseError(where + ": expected a string");
  return j.get<std::string>();
}

FieldDescriptor parse_field_block(const ordered_json& j) {
  if (!j.is_object()) throw ParseError("field: expected an object");
  std::string kind = require_string(require(j, "kind", "field"), "field.kind");
  if (kind == "rational") {
    reject_unknown_keys(j, {"kind"}, "field");
    return FieldDescriptor::rationals();
  }
  if (kind == "prime") {
    reject_unknown_keys(j, {"kind", "p"}, "field");
    std::string p = require_string(require(j, "p", "field"), "field.p");
    return FieldDescriptor::prime(parse_prime_modulus(p, "field.p"));
  }
  throw ParseError("field.kind: expected \"rational\" or \"prime\", got \"" + kind + "\"");
}

ordered_json field_block(const FieldDescriptor& f) {
  ordered_json j;
  switch (f.kind()) {
    case FieldDescriptor::Kind::rationals:
      j["kind"] = "rational";
      return j;
    case FieldDescriptor::Kind::prime:
      j["kind"] = "prime";
      j["p"] = mpz_class(f.characteristic()).get_str();
      return j;
    case FieldDescriptor::Kind::quadratic:
      break;
  }
  throw ParseError("field: only rational and prime fields serialize");
}

Scalar scalar_at(const ordered_json& j, const FieldDescriptor& f, const std::string& where) {
  return parse_scalar(require_string(j, where), f);
}

std::vector<Scalar> coord_tuple(const ordered_json& j, const FieldDescriptor& f, std::size_t n,
                                const std::string& where) {
  if (!j.is_array() || j.size() != n)
    throw ParseError(where + ": expected " + std::to_string(n) + " coordinates");
  std::vector<Scalar> v;
  for (std::size_t i = 0; i < n; ++i)
    v.push_back(scalar_at(j[i], f, where + "[" + std::to_string(i) + "]"));
  return v;
}

LabeledSix parse_plane_block(const ordered_json& j, const FieldDescriptor& f) {
  if (!j.is_object()) throw ParseError("plane_config: expected an object");
  reject_unknown_keys(j, {"points"}, "plane_config");
  const ordered_json& pts = require(j, "points", "plane_config");
  if (!pts.is_array() || pts.size() != 6)
    throw ParseError("plane_config.points: expected exactly 6 triples");
  std::vector<Point2> v;
  for (std::size_t i = 0; i < 6; ++i) {
    auto c = coord_tuple(pts[i], f, 3, "plane_config.points[" + std::to_string(i) + "]");
    v.emplace_back(c[0], c[1], c[2]);
  }
  return LabeledSix{v[0], v[1], v[2], v[3], v[4], v[5]};
}

P1Config parse_p1_block(const ordered_json& j, const FieldDescriptor& f) {
  if (!j.is_object()) throw ParseError("p1_config: expected an object");
  reject_unknown_keys(j, {"points", "weights"}, "p1_config");
  const ordered_json& pts = require(j, "points", "p1_config");
  const ordered_json& wts = require(j, "weights", "p1_config");
  if (!pts.is_array() || pts.empty()) throw ParseError("p1_config.points: expected a point list");
  std::vector<Point1> points;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    auto c = coord_tuple(pts[i], f, 2, "p1_config.points[" + std::to_string(i) + "]");
    points.emplace_back(c[0], c[1]);
  }
  if (!wts.is_array()) throw ParseError("p1_config.weights: expected an integer list");
  std::vector<int> weights;
  for (std::size_t i = 0; i < wts.size(); ++i) {
    if (!wts[i].is_number_integer())
      throw ParseError("p1_config.weights[" + std::to_string(i) + "]: expected an integer");
    weights.push_back(wts[i].get<int>());
  }
  return P1Config(std::move(points), WeightVector(std::move(weights)));
}

std::string scalar_text(const Scalar& s) { return s.to_text(); }

template <typename P, std::size_t N>
ordered_json coords_json(const P& p) {
  ordered_json a = ordered_json::array();
  for (std::size_t i = 0; i < N; ++i) a.push_back(scalar_text(p[i]));
  return a;
}

}  // namespace

FieldDescriptor parse_field_spec(const std::string& text) {
  if (text == "rational") return FieldDescriptor::rationals();
  const std::string prefix = "prime:";
  if (text.rfind(prefix, 0) == 0)
    return FieldDescriptor::prime(parse_prime_modulus(text.substr(prefix.size()), "field"));
  throw ParseError("field: expected \"rational\" or \"prime:<p>\", got \"" + text + "\"");
}

Scalar parse_scalar(const std::string& text, const FieldDescriptor& f) {
  if (f.kind() == FieldDescriptor::Kind::quadratic)
    throw ParseError("scalar \"" + text + "\": extension fields have no literal syntax");
  std::string num = text;
  std::string den;
  if (auto slash = text.find('/'); slash != std::string::npos) {
    if (f.kind() != FieldDescriptor::Kind::rationals)
      throw ParseError("scalar \"" + text + "\": fractions need the rational field");
    num = text.substr(0, slash);
    den = text.substr(slash + 1);
    if (!all_digits(den)) throw ParseError("scalar \"" + text + "\": malformed denominator");
    if (mpz_class(den, 10) == 0) throw ParseError("scalar \"" + text + "\": zero denominator");
  }
  bool negative = !num.empty() && num[0] == '-';
  if (negative) num = num.substr(1);
  if (!all_digits(num)) throw ParseError("scalar \"" + text + "\": malformed integer part");
  if (negative && f.kind() != FieldDescriptor::Kind::rationals)
    throw ParseError("scalar \"" + text + "\": residues are plain decimals");
  mpq_class q(mpz_class(num, 10));
  if (!den.empty()) q /= mpq_class(mpz_class(den, 10));
  if (negative) q = -q;
  return Scalar::of_rational(f, q);
}

ConfigFile parse_config(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("config: expected a JSON object");
  reject_unknown_keys(j, {"field", "plane_config", "p1_config"}, "config");
  ConfigFile out;
  out.field = parse_field_block(require(j, "field", "config"));
  if (auto it = j.find("plane_config"); it != j.end())
    out.plane_config = parse_plane_block(*it, out.field);
  if (auto it = j.find("p1_config"); it != j.end()) out.p1_config = parse_p1_block(*it, out.field);
  return out;
}

std::string serialize_config(const ConfigFile& c) {
  ordered_json j;
  j["field"] = field_block(c.field);
  if (c.plane_config) {
    ordered_json pts = ordered_json::array();
    for (const Point2& p : *c.plane_config) pts.push_back(coords_json<Point2, 3>(p));
    j["plane_config"] = ordered_json{{"points", pts}};
  }
  if (c.p1_config) {
    ordered_json pts = ordered_json::array();
    for (const Point1& p : c.p1_config->points()) pts.push_back(coords_json<Point1, 2>(p));
    ordered_json wts = ordered_json::array();
    for (int w : c.p1_config->weights().weights()) wts.push_back(w);
    j["p1_config"] = ordered_json{{"points", pts}, {"weights", wts}};
  }
  return j.dump(2) + "\n";
}

}  // namespace p67
