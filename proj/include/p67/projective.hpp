#ifndef P67_PROJECTIVE_HPP
#define P67_PROJECTIVE_HPP

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "p67/errors.hpp"
#include "p67/field.hpp"

namespace p67 {

// Homogeneous coordinates are stored canonically scaled: the first nonzero
// coordinate equals one. Equality, keys and hashing therefore work on the
// representative directly. All coordinates of one object live in one field.

class Point1 {
 public:
  Point1(const Scalar& x, const Scalar& y);
  const Scalar& operator[](std::size_t i) const { return c_[i]; }
  const FieldDescriptor& field() const { return c_[0].field(); }
  bool operator==(const Point1& o) const { return c_[0] == o.c_[0] && c_[1] == o.c_[1]; }
  bool operator!=(const Point1& o) const { return !(*this == o); }
  std::string canonical_key() const;
  Point1 embedded_into(const FieldDescriptor& f) const;

 private:
  std::array<Scalar, 2> c_;
};

class Point2 {
 public:
  Point2(const Scalar& x, const Scalar& y, const Scalar& z);
  const Scalar& operator[](std::size_t i) const { return c_[i]; }
  const FieldDescriptor& field() const { return c_[0].field(); }
  bool operator==(const Point2& o) const {
    return c_[0] == o.c_[0] && c_[1] == o.c_[1] && c_[2] == o.c_[2];
  }
  bool operator!=(const Point2& o) const { return !(*this == o); }
  std::string canonical_key() const;
  Point2 embedded_into(const FieldDescriptor& f) const;

 private:
  std::array<Scalar, 3> c_;
};

// A line in the dual plane; same canonical scaling as points.
class Line {
 public:
  Line(const Scalar& a, const Scalar& b, const Scalar& c);
  const Scalar& operator[](std::size_t i) const { return c_[i]; }
  const FieldDescriptor& field() const { return c_[0].field(); }
  bool operator==(const Line& o) const {
    return c_[0] == o.c_[0] && c_[1] == o.c_[1] && c_[2] == o.c_[2];
  }
  bool operator!=(const Line& o) const { return !(*this == o); }
  std::string canonical_key() const;
  Line embedded_into(const FieldDescriptor& f) const;

 private:
  std::array<Scalar, 3> c_;
};

// A conic as its symmetric Gram matrix, canonically scaled so that the first
// nonzero entry in row-major order equals one. Rank is computed once at
// construction. Characteristic 2 never arises (fields have p > 3 or p = 0).
class Conic {
 public:
  // coefficients (A,B,C,D,E,F) of A x^2 + B y^2 + C z^2 + D xy + E xz + F yz
  static Conic from_coefficients(const std::array<Scalar, 6>& v);
  static Conic from_gram(const std::array<std::array<Scalar, 3>, 3>& g);

  const Scalar& gram(int i, int j) const { return g_[i][j]; }
  int rank() const { return rank_; }
  const FieldDescriptor& field() const { return g_[0][0].field(); }
  Scalar evaluate(const Point2& p) const;
  bool contains(const Point2& p) const { return evaluate(p).is_zero(); }
  bool operator==(const Conic& o) const;
  bool operator!=(const Conic& o) const { return !(*this == o); }
  std::string canonical_key() const;
  Conic embedded_into(const FieldDescriptor& f) const;

 private:
  Conic(std::array<std::array<Scalar, 3>, 3> g, int rank) : g_(std::move(g)), rank_(rank) {}
  std::array<std::array<Scalar, 3>, 3> g_;
  int rank_;
};

// Raised when a construction forces a rank < 3 conic; carries the conic so
// callers expecting degenerations can inspect it.
class NotIrreducible : public Error {
 public:
  NotIrreducible(const std::string& msg, Conic c)
      : Error("NotIrreducible", msg), conic_(std::move(c)) {}
  const Conic& conic() const { return conic_; }

 private:
  Conic conic_;
};

// Invertible projectivity of the plane; matrix stored canonically scaled.
class Map3 {
 public:
  explicit Map3(const std::array<std::array<Scalar, 3>, 3>& m);
  static Map3 identity(const FieldDescriptor& f);
  // Unique projectivity sending one frame (4 points, no 3 collinear) to
  // another; DegenerateFrame when either quadruple fails that condition.
  static Map3 from_frames(const std::array<Point2, 4>& src, const std::array<Point2, 4>& dst);

  Point2 apply(const Point2& p) const;
  Map3 inverse() const;
  Map3 compose(const Map3& o) const;  // this after o
  const Scalar& at(int i, int j) const { return m_[i][j]; }
  const FieldDescriptor& field() const { return m_[0][0].field(); }
  bool operator==(const Map3& o) const;
  Map3 embedded_into(const FieldDescriptor& f) const;

 private:
  std::array<std::array<Scalar, 3>, 3> m_;
};

// Invertible projectivity of the line.
class Map2 {
 public:
  explicit Map2(const std::array<std::array<Scalar, 2>, 2>& m);
  // Unique Moebius map through two triples of pairwise distinct points;
  // DegenerateTriple when a triple has a repeat.
  static Map2 from_triples(const std::array<Point1, 3>& src, const std::array<Point1, 3>& dst);

  Point1 apply(const Point1& p) const;
  Map2 inverse() const;
  Map2 compose(const Map2& o) const;
  const Scalar& at(int i, int j) const { return m_[i][j]; }
  bool operator==(const Map2& o) const;

 private:
  std::array<std::array<Scalar, 2>, 2> m_;
};

// ---- incidence and constructions ----

Scalar incidence(const Line& l, const Point2& p);
bool on_line(const Line& l, const Point2& p);
// Line through two distinct points (DegenerateTriple on equal inputs).
Line join(const Point2& p, const Point2& q);
// Intersection of two distinct lines.
Point2 meet(const Line& l, const Line& m);
bool collinear(const Point2& p, const Point2& q, const Point2& r);
// s*p + t*q on canonical representatives; ZeroVector if it vanishes.
Point2 linear_combination(const Scalar& s, const Point2& p, const Scalar& t, const Point2& q);

// The unique conic through five points in general position. NotUnique when
// the five impose dependent conditions (four or more collinear, repeats);
// NotIrreducible (carrying the conic) when exactly three are collinear and
// the unique conic degenerates to a line pair.
Conic conic_through_five(const std::array<Point2, 5>& pts);

// Polar line of p: Gram * p. DegenerateConic if that vanishes (p in the
// radical of a degenerate conic). For p on the conic this is the tangent.
Line polar_line(const Conic& c, const Point2& p);

// Both contact points of the two tangents from p (rank 3, p off the conic:
// PointOnConic otherwise). May extend the field by the square root of the
// contact discriminant; the pair comes back sorted by canonical key.
std::pair<Point2, Point2> tangent_points(const Conic& c, const Point2& p);

// Second intersection of line(a, m) with the conic through a. Requires a on
// the conic (PointNotOnConic) and m off it (PointOnConic). Never leaves the
// base field; returns a itself when line(a, m) is tangent at a.
Point2 second_intersection(const Conic& c, const Point2& a, const Point2& m);

// Projection away from a center point onto the pencil of lines through it,
// coordinatized by the two pencil basis lines with smallest coordinate
// indices. CenterEqualsPoint when p equals the center.
Point1 project_from(const Point2& center, const Point2& p);
// Image of a whole line through the center under the same coordinatization.
Point1 project_line_from(const Point2& center, const Line& l);

// Cross ratio as the image of d under the Moebius map (a,b,c) -> (0,1,inf),
// with 0 = [1,0], 1 = [1,1], inf = [0,1]. DegenerateTriple if a, b, c are
// not pairwise distinct.
Point1 cross_ratio(const Point1& a, const Point1& b, const Point1& c, const Point1& d);

// Transport of lines and conics: the image object under p -> M p.
Line line_image(const Map3& m, const Line& l);
Conic conic_image(const Map3& m, const Conic& c);

// Moves a six point configuration whose first five lie on a smooth conic
// missing the sixth into the normal form where the conic becomes y^2 = xz
// and the sixth point [0,1,0]: the frame (tangent point, sixth point, other
// tangent point, first point) maps to ([1,0,0],[0,1,0],[0,0,1],[1,1,1]).
// May extend the field by the tangency discriminant. DegenerateFrame if the
// first point lies on the tangency chord or on a tangent line through the
// sixth point.
struct NormalizedSix {
  Map3 map;
  std::array<Point2, 6> points;
};
NormalizedSix veronese_normalize(const std::array<Point2, 6>& cfg);

// ---- shared exact linear algebra ----

// Row echelon reduction in place; returns the rank. Deterministic pivoting:
// columns left to right, first row with a nonzero entry.
int row_reduce(std::vector<std::vector<Scalar>>& m);
// Basis of the right kernel, one vector per free column, in column order.
std::vector<std::vector<Scalar>> kernel_basis(std::vector<std::vector<Scalar>> m,
                                              const FieldDescriptor& f);

}  // namespace p67

#endif  // P67_PROJECTIVE_HPP
