#include "p67/projective.hpp"

#include <set>
#include <vector>

#include "doctest.h"
#include "p67/rng.hpp"

using namespace p67;

namespace {

const FieldDescriptor Q = FieldDescriptor::rationals();

Scalar q(long num, long den = 1) { return Scalar::of_rational(Q, mpq_class(num, den)); }

Point2 pt(const FieldDescriptor& f, long x, long y, long z) {
  return Point2(Scalar::of_int(f, x), Scalar::of_int(f, y), Scalar::of_int(f, z));
}

Point2 qpt(long x, long y, long z) { return pt(Q, x, y, z); }

// first five of the parabola t -> [1, t, t^2] plus an off-conic sixth point
std::array<Point2, 6> veronese_cfg(const FieldDescriptor& f, std::array<long, 5> xs) {
  std::array<Point2, 6> cfg = {pt(f, 1, xs[0], xs[0] * xs[0]), pt(f, 1, xs[1], xs[1] * xs[1]),
                               pt(f, 1, xs[2], xs[2] * xs[2]), pt(f, 1, xs[3], xs[3] * xs[3]),
                               pt(f, 1, xs[4], xs[4] * xs[4]), pt(f, 0, 1, 0)};
  return cfg;
}

Conic standard_conic(const FieldDescriptor& f) {
  // y^2 - xz
  Scalar z = Scalar::zero(f);
  return Conic::from_coefficients({z, Scalar::one(f), z, z, Scalar::of_int(f, -1), z});
}

Point2 random_point(SplitMix64& g, const FieldDescriptor& f) {
  for (;;) {
    try {
      return Point2(Scalar::of_int(f, g.range(-20, 20)), Scalar::of_int(f, g.range(-20, 20)),
                    Scalar::of_int(f, g.range(-20, 20)));
    } catch (const ZeroVector&) {
    }
  }
}

Map3 random_map(SplitMix64& g, const FieldDescriptor& f) {
  for (;;) {
    try {
      std::array<std::array<Scalar, 3>, 3> m;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = Scalar::of_int(f, g.range(-30, 30));
      return Map3(m);
    } catch (const DegenerateFrame&) {
    }
  }
}

}  // namespace

TEST_CASE("homogeneous coordinates are canonically scaled") {
  CHECK(qpt(2, 4, 6) == qpt(1, 2, 3));
  CHECK(Point2(q(0), q(3), q(9)) == Point2(q(0), q(1), q(3)));
  CHECK(qpt(1, 2, 3) != qpt(1, 2, 4));
  CHECK_THROWS_AS(Point2(q(0), q(0), q(0)), ZeroVector);
  CHECK(Point1(q(3), q(12)) == Point1(q(1), q(4)));
  CHECK(qpt(2, 4, 6).canonical_key() == qpt(1, 2, 3).canonical_key());
  // first coordinate of the canonical representative is one when nonzero
  CHECK(qpt(-2, 4, 6)[0] == q(1));
  CHECK(qpt(-2, 4, 6)[1] == q(-2));
}

TEST_CASE("collinearity matches the Vandermonde oracle") {
  // det of rows [1, x_i, x_i^2] is prod of differences; zero iff repeats
  SplitMix64 g(11);
  for (int t = 0; t < 200; ++t) {
    long a = g.range(-8, 8), b = g.range(-8, 8), c = g.range(-8, 8);
    bool degenerate = (a == b) || (b == c) || (a == c);
    CHECK(collinear(qpt(1, a, a * a), qpt(1, b, b * b), qpt(1, c, c * c)) == degenerate);
  }
  CHECK(collinear(qpt(1, 1, 1), qpt(1, 2, 4), qpt(1, 3, 9)) == false);
  CHECK(collinear(qpt(1, 0, 0), qpt(0, 1, 0), qpt(1, 1, 0)));
}

TEST_CASE("join and meet are dual and consistent") {
  Point2 p = qpt(1, 1, 1), r = qpt(1, 2, 4), s = qpt(1, 3, 9);
  Line pr = join(p, r);
  CHECK(on_line(pr, p));
  CHECK(on_line(pr, r));
  CHECK(!on_line(pr, s));
  CHECK(meet(pr, join(p, s)) == p);
  CHECK_THROWS_AS(join(p, p), DegenerateTriple);
  CHECK_THROWS_AS(meet(pr, pr), DegenerateTriple);
  // any combination of p and r stays on their join
  CHECK(on_line(pr, linear_combination(q(2), p, q(-5), r)));
}

TEST_CASE("conic through five points reproduces the parabola") {
  auto cfg = veronese_cfg(Q, {1, 2, 3, 4, 5});
  Conic c = conic_through_five({cfg[0], cfg[1], cfg[2], cfg[3], cfg[4]});
  CHECK(c.rank() == 3);
  for (int i = 0; i < 5; ++i) CHECK(c.contains(cfg[i]));
  CHECK(c.contains(qpt(1, 6, 36)));
  CHECK(c.contains(qpt(0, 0, 1)));
  CHECK(!c.contains(qpt(0, 1, 0)));
  CHECK(c == standard_conic(Q));
  // evaluate scales with the stored gram; ratios are scale-free:
  // (y^2 - xz) is 1 at [1,1,0] and 4 at [1,2,0]
  CHECK(c.evaluate(qpt(1, 2, 0)) == q(4) * c.evaluate(qpt(1, 1, 0)));
}

TEST_CASE("degenerate five point sets are detected") {
  // four points on z = 0 leave a pencil
  std::array<Point2, 5> dependent = {qpt(1, 0, 0), qpt(0, 1, 0), qpt(1, 1, 0), qpt(1, 2, 0),
                                     qpt(0, 0, 1)};
  CHECK_THROWS_AS(conic_through_five(dependent), NotUnique);
  // exactly three collinear force a line pair, reported with the conic
  std::array<Point2, 5> linepair = {qpt(1, 0, 0), qpt(0, 1, 0), qpt(1, 1, 0), qpt(0, 0, 1),
                                    qpt(1, 1, 1)};
  try {
    conic_through_five(linepair);
    FAIL("expected NotIrreducible");
  } catch (const NotIrreducible& e) {
    CHECK(e.conic().rank() == 2);
    for (const auto& p : linepair) CHECK(e.conic().contains(p));
  }
}

TEST_CASE("polar lines and tangency chords") {
  Conic c = standard_conic(Q);
  // chord of contact of [0,1,0] is y = 0
  CHECK(polar_line(c, qpt(0, 1, 0)) == Line(q(0), q(1), q(0)));
  // polar of a point on the conic is its tangent line
  CHECK(polar_line(c, qpt(1, 0, 0)) == Line(q(0), q(0), q(1)));
  CHECK(on_line(polar_line(c, qpt(1, 2, 4)), qpt(1, 2, 4)));
  // tangent points of [0,1,0] against the exhaustive rational solution
  auto [t1, t2] = tangent_points(c, qpt(0, 1, 0));
  std::set<std::string> keys = {t1.canonical_key(), t2.canonical_key()};
  std::set<std::string> expect = {qpt(1, 0, 0).canonical_key(), qpt(0, 0, 1).canonical_key()};
  CHECK(keys == expect);
  CHECK(t1.canonical_key() < t2.canonical_key());
}

TEST_CASE("tangency from an inside point extends the field") {
  Conic c = standard_conic(Q);
  Point2 p = qpt(1, 0, 1);
  auto [t1, t2] = tangent_points(c, p);
  const FieldDescriptor& ext = t1.field();
  CHECK(ext.is_extension());
  CHECK(ext.discriminant_raw() == -1);
  Conic ce = c.embedded_into(ext);
  Line pol = polar_line(ce, p.embedded_into(ext));
  for (const auto& t : {t1, t2}) {
    CHECK(ce.contains(t));
    CHECK(on_line(pol, t));
  }
  // the two contact points are Galois conjugates
  CHECK(Point2(t1[0].conjugate(), t1[1].conjugate(), t1[2].conjugate()) == t2);
}

TEST_CASE("tangency over F_11 against exhaustive conic enumeration") {
  auto f11 = FieldDescriptor::prime(11);
  Conic c = standard_conic(f11);
  // all rational points of y^2 = xz over F_11: [1,t,t^2] and [0,0,1]
  std::vector<Point2> rational;
  for (long t = 0; t < 11; ++t) rational.push_back(pt(f11, 1, t, t * t));
  rational.push_back(pt(f11, 0, 0, 1));
  CHECK(rational.size() == 12);
  for (const auto& r : rational) CHECK(c.contains(r));

  Point2 p = pt(f11, 1, 0, 1);
  auto [t1, t2] = tangent_points(c, p);
  CHECK(t1.field().is_extension());
  // oracle: no rational conic point may lie on the polar when the contact
  // discriminant is a non-residue
  Line pol = polar_line(c, p);
  for (const auto& r : rational) CHECK(!on_line(pol, r));

  // a point whose contacts stay rational: exhaustive cross check
  Point2 outside = pt(f11, 1, 1, 0);
  auto [s1, s2] = tangent_points(c, outside);
  if (s1.field() == f11) {
    Line pol2 = polar_line(c, outside);
    std::set<std::string> found;
    for (const auto& r : rational)
      if (on_line(pol2, r)) found.insert(r.canonical_key());
    CHECK(found == std::set<std::string>{s1.canonical_key(), s2.canonical_key()});
  }
}

TEST_CASE("second intersection walks secants exactly") {
  Conic c = standard_conic(Q);
  CHECK(second_intersection(c, qpt(1, 2, 4), qpt(0, 1, 0)) == qpt(1, -2, 4));
  // tangent secant returns the contact point itself
  CHECK(second_intersection(c, qpt(1, 0, 0), qpt(0, 1, 0)) == qpt(1, 0, 0));
  CHECK_THROWS_AS(second_intersection(c, qpt(1, 1, 0), qpt(0, 1, 0)), PointNotOnConic);
  CHECK_THROWS_AS(second_intersection(c, qpt(1, 2, 4), qpt(1, 3, 9)), PointOnConic);
  // randomized: the result is on the conic and collinear with both inputs
  SplitMix64 g(21);
  auto f = FieldDescriptor::prime(101);
  Conic cp = standard_conic(f);
  for (int t = 0; t < 100; ++t) {
    Point2 a = pt(f, 1, g.range(0, 100), 0);
    a = Point2(a[0], a[1], a[1] * a[1]);
    Point2 m = random_point(g, f);
    if (cp.contains(m)) continue;
    if (a == m) continue;
    Point2 b = second_intersection(cp, a, m);
    CHECK(cp.contains(b));
    if (b != a) CHECK(collinear(a, m, b));
  }
}

TEST_CASE("projection from a center matches the pencil chart") {
  // center [0,1,0]: chart [x : z]
  Point2 center = qpt(0, 1, 0);
  CHECK(project_from(center, qpt(1, 3, 9)) == Point1(q(1), q(9)));
  CHECK(project_from(center, qpt(1, -5, 25)) == Point1(q(1), q(25)));
  CHECK(project_from(center, qpt(0, 0, 1)) == Point1(q(0), q(1)));
  CHECK_THROWS_AS(project_from(center, center), CenterEqualsPoint);
  // collinear through the center means equal projections
  SplitMix64 g(31);
  for (int t = 0; t < 100; ++t) {
    Point2 a = random_point(g, Q);
    if (a == center) continue;
    Point2 b = linear_combination(q(g.range(1, 9)), a, q(g.range(-9, 9)), center);
    CHECK(project_from(center, a) == project_from(center, b));
  }
  // line through the center projects to the same chart point
  Line tangent = Line(q(0), q(0), q(1));  // z = 0 passes [0,1,0]
  CHECK(project_line_from(center, tangent) == Point1(q(1), q(0)));
  CHECK_THROWS_AS(project_line_from(center, Line(q(0), q(1), q(0))), NotInDomain);
}

TEST_CASE("cross ratio against the closed formula") {
  auto p1 = [&](long v) { return Point1(q(1), q(v)); };
  // normalized frame is fixed pointwise
  CHECK(cross_ratio(p1(0), p1(1), Point1(q(0), q(1)), p1(5)) == p1(5));
  // (a,b,c,d) = (0,1,2,3): (d-a)(b-c) / ((d-c)(b-a)) = -3
  CHECK(cross_ratio(p1(0), p1(1), p1(2), p1(3)) == p1(-3));
  CHECK_THROWS_AS(cross_ratio(p1(0), p1(0), p1(2), p1(3)), DegenerateTriple);
  // random quadruples against the affine formula, and Moebius invariance
  SplitMix64 g(41);
  for (int t = 0; t < 100; ++t) {
    long a = g.range(-20, 20), b = g.range(-20, 20), c = g.range(-20, 20),
         d = g.range(-20, 20);
    if (a == b || a == c || b == c) continue;
    Point1 cr = cross_ratio(p1(a), p1(b), p1(c), p1(d));
    mpq_class num((d - a) * (b - c));
    mpq_class den((d - c) * (b - a));
    if (den != 0)
      CHECK(cr == Point1(q(1), Scalar::of_rational(Q, mpq_class(num / den))));
    else
      CHECK(cr == Point1(q(0), q(1)));
    // invariance under a fixed Moebius map
    Map2 m({{{q(2), q(1)}, {q(1), q(1)}}});
    CHECK(cross_ratio(m.apply(p1(a)), m.apply(p1(b)), m.apply(p1(c)), m.apply(p1(d))) == cr);
  }
}

TEST_CASE("frame maps send frames to frames") {
  SplitMix64 g(51);
  auto f = FieldDescriptor::prime(10007);
  for (int t = 0; t < 50; ++t) {
    std::array<Point2, 4> src = {pt(f, 1, 0, 0), pt(f, 0, 1, 0), pt(f, 0, 0, 1),
                                 pt(f, 1, 1, 1)};
    std::array<Point2, 4> dst = src;
    auto fill = [&](std::array<Point2, 4>& fr) {
      for (;;) {
        for (int i = 0; i < 4; ++i) fr[i] = random_point(g, f);
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i)
          for (int j = i + 1; j < 4 && ok; ++j)
            for (int k = j + 1; k < 4 && ok; ++k)
              if (collinear(fr[i], fr[j], fr[k])) ok = false;
        if (ok) return;
      }
    };
    fill(src);
    fill(dst);
    Map3 m = Map3::from_frames(src, dst);
    for (int i = 0; i < 4; ++i) CHECK(m.apply(src[i]) == dst[i]);
    CHECK(m.compose(m.inverse()) == Map3::identity(f));
    CHECK(m.inverse().apply(dst[2]) == src[2]);
  }
  // collinear frames are rejected
  std::array<Point2, 4> bad = {qpt(1, 0, 0), qpt(0, 1, 0), qpt(1, 1, 0), qpt(0, 0, 1)};
  std::array<Point2, 4> good = {qpt(1, 0, 0), qpt(0, 1, 0), qpt(0, 0, 1), qpt(1, 1, 1)};
  CHECK_THROWS_AS(Map3::from_frames(bad, good), DegenerateFrame);
  CHECK_THROWS_AS(Map3::from_frames(good, bad), DegenerateFrame);
  // scale invariance of the matrix representation
  Map3 m1({{{q(1), q(2), q(3)}, {q(0), q(1), q(4)}, {q(5), q(6), q(0)}}});
  Map3 m2({{{q(2), q(4), q(6)}, {q(0), q(2), q(8)}, {q(10), q(12), q(0)}}});
  CHECK(m1 == m2);
}

TEST_CASE("lines and conics transport covariantly") {
  SplitMix64 g(61);
  auto f = FieldDescriptor::prime(10007);
  Conic c = standard_conic(f);
  for (int t = 0; t < 50; ++t) {
    Map3 m = random_map(g, f);
    Conic ci = conic_image(m, c);
    CHECK(ci.rank() == 3);
    for (long x : {0L, 1L, 2L, 5L, 9L}) {
      Point2 p = pt(f, 1, x, x * x);
      CHECK(ci.contains(m.apply(p)));
    }
    Point2 a = random_point(g, f), b = random_point(g, f);
    if (a == b) continue;
    Line l = join(a, b);
    CHECK(line_image(m, l) == join(m.apply(a), m.apply(b)));
  }
}

TEST_CASE("kernel basis really spans the kernel") {
  SplitMix64 g(71);
  auto f = FieldDescriptor::prime(97);
  for (int t = 0; t < 60; ++t) {
    std::size_t rows = 2 + g.below(3), cols = 3 + g.below(4);
    std::vector<std::vector<Scalar>> m(rows);
    for (auto& r : m) {
      r.clear();
      for (std::size_t j = 0; j < cols; ++j) r.push_back(Scalar::of_int(f, g.range(0, 96)));
    }
    auto mm = m;
    int rank = row_reduce(mm);
    auto basis = kernel_basis(m, f);
    CHECK(basis.size() == cols - static_cast<std::size_t>(rank));
    for (const auto& v : basis) {
      for (const auto& row : m) {
        Scalar s = Scalar::zero(f);
        for (std::size_t j = 0; j < cols; ++j) s = s + row[j] * v[j];
        CHECK(s.is_zero());
      }
    }
  }
}

TEST_CASE("normal form pins the parabola and the sixth point") {
  auto cfg = veronese_cfg(Q, {2, 3, 4, 5, 7});
  NormalizedSix n = veronese_normalize(cfg);
  Conic std_c = standard_conic(Q);
  for (int i = 0; i < 5; ++i) CHECK(std_c.contains(n.points[i]));
  CHECK(n.points[5] == qpt(0, 1, 0));
  CHECK(n.points[0] == qpt(1, 1, 1));
  Conic orig = conic_through_five({cfg[0], cfg[1], cfg[2], cfg[3], cfg[4]});
  CHECK(conic_image(n.map, orig) == std_c);

  // a sixth point with irrational tangency contacts forces one extension
  std::array<Point2, 6> cfg2 = veronese_cfg(Q, {1, 2, 3, 4, 5});
  cfg2[5] = qpt(1, 0, 1);
  NormalizedSix n2 = veronese_normalize(cfg2);
  CHECK(n2.points[0].field().is_extension());
  CHECK(n2.points[5] == pt(n2.points[5].field(), 0, 1, 0));
  Conic std_e = standard_conic(n2.points[0].field());
  for (int i = 0; i < 5; ++i) CHECK(std_e.contains(n2.points[i]));

  // first point on the tangency chord cannot be framed
  auto bad = veronese_cfg(Q, {0, 2, 3, 4, 5});
  CHECK_THROWS_AS(veronese_normalize(bad), DegenerateFrame);
  // sixth point on the conic is out of scope here
  auto on_conic = veronese_cfg(Q, {1, 2, 3, 4, 5});
  on_conic[5] = qpt(1, 6, 36);
  CHECK_THROWS_AS(veronese_normalize(on_conic), PointOnConic);
}
