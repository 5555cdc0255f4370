#include "p67/bridge.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "p67/forms.hpp"

namespace p67 {

namespace {

std::string triple_text(const std::array<int, 3>& t) {
  return "{" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," + std::to_string(t[2]) +
         "}";
}

// all collinear triples, as ascending 1-based label triples in lex order
std::vector<std::array<int, 3>> collinear_triples(const LabeledSix& p) {
  std::vector<std::array<int, 3>> out;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      for (int k = j + 1; k < 6; ++k)
        if (collinear(p[i], p[j], p[k])) out.push_back({i + 1, j + 1, k + 1});
  return out;
}

std::array<Point2, 5> first_five(const LabeledSix& p) {
  return {p[0], p[1], p[2], p[3], p[4]};
}

bool frame_at(const LabeledSix& p, const std::array<int, 4>& idx) {
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      for (int c = b + 1; c < 4; ++c)
        if (collinear(p[idx[a]], p[idx[b]], p[idx[c]])) return false;
  return true;
}

std::optional<std::array<int, 4>> first_frame(const LabeledSix& p) {
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      for (int k = j + 1; k < 6; ++k)
        for (int l = k + 1; l < 6; ++l) {
          std::array<int, 4> idx{i, j, k, l};
          if (frame_at(p, idx)) return idx;
        }
  return std::nullopt;
}

FieldDescriptor common_field(const FieldDescriptor& x, const FieldDescriptor& y) {
  if (x == y) return x;
  if (x.is_extension() && x.base() == y) return x;
  if (y.is_extension() && y.base() == x) return y;
  throw FieldMismatch("no common field for " + x.to_string() + " and " + y.to_string());
}

P1Config embedded_config(const P1Config& c, const FieldDescriptor& f) {
  std::vector<Point1> pts;
  pts.reserve(c.size());
  for (const Point1& p : c.points()) pts.push_back(p.embedded_into(f));
  return P1Config(std::move(pts), c.weights());
}

}  // namespace

PlaneConfig::PlaneConfig(LabeledSix pts) : pts_(std::move(pts)) {
  const FieldDescriptor& f = pts_[0].field();
  for (int i = 1; i < 6; ++i)
    if (pts_[i].field() != f)
      throw FieldMismatch("configuration points live in different fields");
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (pts_[i] == pts_[j])
        throw DuplicatePoint("labels " + std::to_string(i + 1) + " and " +
                             std::to_string(j + 1) + " coincide");
}

bool PlaneConfig::operator==(const PlaneConfig& o) const {
  return field() == o.field() && pts_ == o.pts_;
}

PlaneConfig PlaneConfig::embedded_into(const FieldDescriptor& f) const {
  return PlaneConfig(LabeledSix{pts_[0].embedded_into(f), pts_[1].embedded_into(f),
                                pts_[2].embedded_into(f), pts_[3].embedded_into(f),
                                pts_[4].embedded_into(f), pts_[5].embedded_into(f)});
}

std::string StratumClass::to_string() const {
  switch (kind) {
    case Kind::GenericSmooth:
      return "GenericSmooth";
    case Kind::OnConic:
      return "OnConic";
    case Kind::CollinearThrough6:
      return "CollinearThrough6{" + std::to_string(pair[0]) + "," + std::to_string(pair[1]) +
             "}";
    case Kind::Excluded:
      return "Excluded: " + reason;
  }
  return "";
}

StratumClass classify(const PlaneConfig& cfg) {
  const LabeledSix& p = cfg.points();
  std::vector<std::array<int, 3>> triples = collinear_triples(p);
  StratumClass s;
  if (triples.empty()) {
    // five points, no three collinear: the conic exists, is unique, rank 3
    Conic q = conic_through_five(first_five(p));
    s.kind = q.contains(p[5]) ? StratumClass::Kind::OnConic : StratumClass::Kind::GenericSmooth;
    return s;
  }
  if (triples.size() == 1 && triples[0][2] == 6) {
    s.kind = StratumClass::Kind::CollinearThrough6;
    s.pair = {triples[0][0], triples[0][1]};
    return s;
  }
  s.kind = StratumClass::Kind::Excluded;
  if (triples.size() == 1) {
    s.reason = "collinear triple among the first five: " + triple_text(triples[0]);
  } else {
    s.reason = "multiple collinear triples:";
    for (const auto& t : triples) s.reason += " " + triple_text(t);
  }
  return s;
}

P1Output::P1Output(std::array<Point1, 5> ordered, std::array<Point1, 2> pair)
    : ordered_(std::move(ordered)), pair_(std::move(pair)) {
  const FieldDescriptor& f = ordered_[0].field();
  for (int i = 1; i < 5; ++i)
    if (ordered_[i].field() != f) throw FieldMismatch("line images live in different fields");
  if (pair_[0].field() != f || pair_[1].field() != f)
    throw FieldMismatch("tangency pair lives in a different field");
  if (pair_[0] == pair_[1]) throw NotInStratum("tangency pair collapsed to one point");
  if (pair_[1].canonical_key() < pair_[0].canonical_key()) std::swap(pair_[0], pair_[1]);
  Stratum st = collision_stratum(as_p1_config());
  static const std::set<std::vector<int>> allowed = {{2, 2, 2, 2, 2, 1, 1},
                                                     {3, 2, 2, 2, 2, 1},
                                                     {3, 3, 2, 2, 2},
                                                     {4, 2, 2, 2, 1, 1}};
  if (allowed.find(st.merged) == allowed.end())
    throw NotInStratum("collision stratum (" + WeightVector(st.merged).to_string() +
                       ") is not among the admissible degenerations");
}

P1Config P1Output::as_p1_config() const {
  std::vector<Point1> pts(ordered_.begin(), ordered_.end());
  pts.push_back(pair_[0]);
  pts.push_back(pair_[1]);
  return P1Config(std::move(pts), WeightVector({2, 2, 2, 2, 2, 1, 1}));
}

bool P1Output::operator==(const P1Output& o) const {
  return field() == o.field() && ordered_ == o.ordered_ && pair_ == o.pair_;
}

P1Output phi67(const PlaneConfig& cfg) {
  StratumClass s = classify(cfg);
  if (s.kind != StratumClass::Kind::GenericSmooth &&
      s.kind != StratumClass::Kind::CollinearThrough6)
    throw NotInDomain("needs GenericSmooth or CollinearThrough6, got " + s.to_string());
  const LabeledSix& p = cfg.points();
  Conic q = conic_through_five(first_five(p));
  // the sixth point is off the conic in both admissible strata
  std::pair<Point2, Point2> t = tangent_points(q, p[5]);
  const FieldDescriptor& f = t.first.field();
  Point2 center = p[5].embedded_into(f);
  std::array<Point1, 5> ordered{project_from(center, p[0].embedded_into(f)),
                                project_from(center, p[1].embedded_into(f)),
                                project_from(center, p[2].embedded_into(f)),
                                project_from(center, p[3].embedded_into(f)),
                                project_from(center, p[4].embedded_into(f))};
  return P1Output(std::move(ordered),
                  {project_from(center, t.first), project_from(center, t.second)});
}

P1Config phi67_on_conic(const PlaneConfig& cfg) {
  StratumClass s = classify(cfg);
  if (s.kind != StratumClass::Kind::OnConic)
    throw NotOnConic("needs all six points on a rank-3 conic, got " + s.to_string());
  const LabeledSix& p = cfg.points();
  Conic q = conic_through_five(first_five(p));
  std::vector<Point1> out;
  out.reserve(6);
  for (int i = 0; i < 5; ++i) out.push_back(project_from(p[5], p[i]));
  // the polar of a point on the conic is the tangent line there
  out.push_back(project_line_from(p[5], polar_line(q, p[5])));
  return P1Config(std::move(out), WeightVector({2, 2, 2, 2, 2, 2}));
}

PlaneConfig geometric_swap(const PlaneConfig& cfg, const SwapSet& s) {
  StratumClass c = classify(cfg);
  if (c.kind != StratumClass::Kind::GenericSmooth)
    throw NotGeneric("geometric swap needs GenericSmooth, got " + c.to_string());
  Conic q = conic_through_five(first_five(cfg.points()));
  LabeledSix out = cfg.points();
  for (int label : s.members())
    out[label - 1] = second_intersection(q, cfg[static_cast<std::size_t>(label - 1)], cfg[5]);
  return PlaneConfig(std::move(out));
}

bool moduli_equal_plane(const PlaneConfig& a, const PlaneConfig& b) {
  if (a.field() != b.field()) throw FieldMismatch("moduli comparison needs one field");
  std::optional<std::array<int, 4>> fa = first_frame(a.points());
  if (!fa) throw NoFrame("first configuration has no four points in general position");
  if (!first_frame(b.points()))
    throw NoFrame("second configuration has no four points in general position");
  const std::array<int, 4>& idx = *fa;
  // a matching projectivity would carry the frame property across
  if (!frame_at(b.points(), idx)) return false;
  Map3 m = Map3::from_frames(
      {a[static_cast<std::size_t>(idx[0])], a[static_cast<std::size_t>(idx[1])],
       a[static_cast<std::size_t>(idx[2])], a[static_cast<std::size_t>(idx[3])]},
      {b[static_cast<std::size_t>(idx[0])], b[static_cast<std::size_t>(idx[1])],
       b[static_cast<std::size_t>(idx[2])], b[static_cast<std::size_t>(idx[3])]});
  for (std::size_t i = 0; i < 6; ++i)
    if (m.apply(a[i]) != b[i]) return false;
  return true;
}

std::vector<PlaneConfig> fiber_orbit(const PlaneConfig& cfg) {
  StratumClass s = classify(cfg);
  if (s.kind != StratumClass::Kind::GenericSmooth)
    throw NotGeneric("fiber orbit needs GenericSmooth, got " + s.to_string());
  std::vector<PlaneConfig> reps;
  for (int mask = 0; mask < 32; ++mask) {
    SwapSet sw;
    for (int b = 0; b < 5; ++b)
      if ((mask >> b) & 1) sw.add(b + 1);
    PlaneConfig img = geometric_swap(cfg, sw);
    bool fresh = true;
    for (const PlaneConfig& r : reps)
      if (moduli_equal_plane(r, img)) {
        fresh = false;
        break;
      }
    if (fresh) reps.push_back(std::move(img));
  }
  return reps;
}

bool moduli_equal(const P1Output& a, const P1Output& b) {
  FieldDescriptor f = common_field(a.field(), b.field());
  SymmetryGroup pair_swap = SymmetryGroup::of_blocks(7, {{5, 6}});
  return moduli_equal(embedded_config(a.as_p1_config(), f),
                      embedded_config(b.as_p1_config(), f), pair_swap);
}

PlaneConfig lift(const P1Output& out) {
  const FieldDescriptor& f = out.field();
  Scalar fz = Scalar::zero(f), fo = Scalar::one(f);
  const std::array<Point1, 5>& ord = out.ordered();
  const std::array<Point1, 2>& pr = out.pair();
  int anchor = -1;
  for (int i = 0; i < 5 && anchor < 0; ++i)
    if (ord[static_cast<std::size_t>(i)] != pr[0] && ord[static_cast<std::size_t>(i)] != pr[1])
      anchor = i;
  // the admissible collision patterns leave at least three points off the pair
  Map2 g = Map2::from_triples({pr[0], pr[1], ord[static_cast<std::size_t>(anchor)]},
                              {Point1(fz, fo), Point1(fo, fz), Point1(fo, fo)});

  // normalized affine values; nullopt marks infinity (the image of pair[0])
  std::array<std::optional<Scalar>, 5> lambda;
  for (std::size_t i = 0; i < 5; ++i) {
    Point1 im = g.apply(ord[i]);
    if (im[0].is_zero())
      lambda[i] = std::nullopt;
    else
      lambda[i] = im[1] / im[0];
  }

  // square obstructions: rationals and extensions must solve in place, a
  // prime field may adjoin one discriminant (the first non-square value)
  FieldDescriptor ext = f;
  if (f.kind() == FieldDescriptor::Kind::prime) {
    for (std::size_t i = 0; i < 5; ++i)
      if (lambda[i] && !lambda[i]->is_zero() && !lambda[i]->is_square()) {
        ext = FieldDescriptor::quadratic(f, *lambda[i]);
        break;
      }
  } else {
    for (std::size_t i = 0; i < 5; ++i)
      if (lambda[i] && !lambda[i]->is_zero() && !lambda[i]->is_square())
        throw UnliftableOverField("normalized value " + lambda[i]->to_text() +
                                  " is not a square in " + f.to_string());
  }

  Scalar z = Scalar::zero(ext), o = Scalar::one(ext);
  // a repeated value lifts to the two opposite roots
  std::array<int, 5> partner{-1, -1, -1, -1, -1};
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (lambda[i] && lambda[j] && *lambda[i] == *lambda[j]) partner[i] = static_cast<int>(j);

  std::vector<Point2> ms;
  ms.reserve(6);
  for (std::size_t i = 0; i < 5; ++i) {
    if (!lambda[i]) {
      ms.push_back(Point2(z, z, o));
      continue;
    }
    if (lambda[i]->is_zero()) {
      ms.push_back(Point2(o, z, z));
      continue;
    }
    Scalar lam = lambda[i]->embedded_into(ext);
    try {
      Scalar r = Scalar::sqrt(lam);
      if (partner[i] >= 0) r = -r;
      ms.push_back(Point2(o, r, lam));
    } catch (const Error& e) {
      if (e.kind() == "ExtensionDepthExceeded")
        throw UnliftableOverField("no square root of " + lam.to_text() +
                                  " within one extension layer");
      throw;
    }
  }
  ms.push_back(Point2(z, o, z));
  return PlaneConfig(LabeledSix{ms[0], ms[1], ms[2], ms[3], ms[4], ms[5]});
}

PlaneConfig collinear_to_conic(const PlaneConfig& cfg) {
  StratumClass s = classify(cfg);
  if (s.kind != StratumClass::Kind::CollinearThrough6)
    throw WrongStratum("needs CollinearThrough6, got " + s.to_string());
  std::array<int, 3> base{};
  int k = 0;
  for (int label = 1; label <= 5; ++label)
    if (label != s.pair[0] && label != s.pair[1]) base[static_cast<std::size_t>(k++)] = label;
  return PlaneConfig(based_cremona(cfg.points(), base));
}

DegenerateLimitReport degenerate_limit_check_I(const PlaneConfig& cfg) {
  const LabeledSix& p = cfg.points();
  std::vector<std::array<int, 3>> triples = collinear_triples(p);
  if (triples.size() != 2)
    throw WrongDegeneracy("expected exactly two collinear triples, found " +
                          std::to_string(triples.size()));
  // labels ascend inside a triple, so 6 can only sit last
  const bool six0 = triples[0][2] == 6;
  const bool six1 = triples[1][2] == 6;
  if (six0 == six1) throw WrongDegeneracy("exactly one collinear triple must contain label 6");
  const std::array<int, 3>& with6 = six0 ? triples[0] : triples[1];
  const std::array<int, 3>& among5 = six0 ? triples[1] : triples[0];
  const std::array<int, 2> pr{with6[0], with6[1]};
  std::array<int, 3> base{};
  {
    int k = 0;
    for (int label = 1; label <= 5; ++label)
      if (label != pr[0] && label != pr[1]) base[static_cast<std::size_t>(k++)] = label;
  }
  auto is_base = [&](int l) { return l == base[0] || l == base[1] || l == base[2]; };
  int doubled = 0;
  int base_hits = 0;
  for (int l : among5) {
    if (l == pr[0] || l == pr[1])
      doubled = doubled == 0 ? l : -1;
    else if (is_base(l))
      ++base_hits;
  }
  if (doubled <= 0 || base_hits != 2)
    throw WrongDegeneracy(
        "the second collinear triple must join one of the collinear pair to two base labels");
  int opposite = 0;
  for (int l : base)
    if (l != among5[0] && l != among5[1] && l != among5[2]) opposite = l;

  LabeledSix raw = based_cremona(p, base);

  DegenerateLimitReport rep;
  rep.line_pair = pr;
  rep.doubled_label = doubled;
  rep.opposite_label = opposite;
  rep.doubled_class_is_opposite_vertex =
      raw[static_cast<std::size_t>(doubled - 1)] == p[static_cast<std::size_t>(opposite - 1)];
  {
    std::set<std::string> keys;
    for (const Point2& q : raw) keys.insert(q.canonical_key());
    rep.distinct_classes = static_cast<int>(keys.size());
  }

  // the image of the degenerate line: a conic through every image class
  Map3 g = based_frame_map(p, base);
  Line moved = line_image(g, join(p[static_cast<std::size_t>(pr[0] - 1)],
                                  p[static_cast<std::size_t>(pr[1] - 1)]));
  TernaryForm lf = TernaryForm::linear(moved[0], moved[1], moved[2]);
  Conic image = conic_image(g.inverse(), std_cremona_form_image(lf).to_conic());
  bool on = image.rank() == 3;
  for (const Point2& q : raw) on = on && image.contains(q);
  rep.classes_on_conic = on;

  // project the five ordered classes and the tangent class from the image
  // of label 6
  std::vector<Point1> proj;
  proj.reserve(6);
  for (std::size_t i = 0; i < 5; ++i) proj.push_back(project_from(raw[5], raw[i]));
  proj.push_back(project_line_from(raw[5], polar_line(image, raw[5])));
  rep.merged =
      collision_stratum(P1Config(std::move(proj), WeightVector({2, 2, 2, 2, 2, 2}))).merged;
  return rep;
}

}  // namespace p67
