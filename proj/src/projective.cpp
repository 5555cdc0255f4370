#include "p67/projective.hpp"

#include <algorithm>

namespace p67 {

namespace {

template <std::size_t N>
std::array<Scalar, N> canonicalized(std::array<Scalar, N> c) {
  for (std::size_t i = 1; i < N; ++i)
    if (c[i].field() != c[0].field()) throw FieldMismatch("coordinates in different fields");
  int lead = -1;
  for (std::size_t i = 0; i < N; ++i)
    if (!c[i].is_zero()) {
      lead = static_cast<int>(i);
      break;
    }
  if (lead < 0) throw ZeroVector("all coordinates vanish");
  if (!c[lead].is_one()) {
    Scalar s = c[lead].inv();
    for (auto& x : c) x = x * s;
  }
  return c;
}

template <std::size_t N>
std::string join_keys(const std::array<Scalar, N>& c) {
  std::string k;
  for (std::size_t i = 0; i < N; ++i) {
    if (i) k += ",";
    k += c[i].canonical_key();
  }
  return k;
}

using Mat3 = std::array<std::array<Scalar, 3>, 3>;
using Mat2 = std::array<std::array<Scalar, 2>, 2>;

Scalar det3(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 adjugate3(const Mat3& m) {
  auto cof = [&](int i, int j) {
    int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
    return m[i1][j1] * m[i2][j2] - m[i1][j2] * m[i2][j1];
  };
  // adj[j][i] = cofactor(i, j); the cyclic index form absorbs the sign
  Mat3 a{{{cof(0, 0), cof(1, 0), cof(2, 0)},
          {cof(0, 1), cof(1, 1), cof(2, 1)},
          {cof(0, 2), cof(1, 2), cof(2, 2)}}};
  return a;
}

Mat3 mul3(const Mat3& a, const Mat3& b) {
  Mat3 r = a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
  return r;
}

int rank_of_gram(const Mat3& g) {
  std::vector<std::vector<Scalar>> m;
  for (int i = 0; i < 3; ++i) m.emplace_back(g[i].begin(), g[i].end());
  return row_reduce(m);
}

// a^T G b
Scalar bilinear(const Conic& c, const Point2& a, const Point2& b) {
  Scalar r = Scalar::zero(a.field());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r = r + a[i] * c.gram(i, j) * b[j];
  return r;
}

}  // namespace

// ---- points and lines ----

Point1::Point1(const Scalar& x, const Scalar& y) : c_(canonicalized<2>({x, y})) {}
std::string Point1::canonical_key() const { return join_keys(c_); }
Point1 Point1::embedded_into(const FieldDescriptor& f) const {
  return Point1(c_[0].embedded_into(f), c_[1].embedded_into(f));
}

Point2::Point2(const Scalar& x, const Scalar& y, const Scalar& z)
    : c_(canonicalized<3>({x, y, z})) {}
std::string Point2::canonical_key() const { return join_keys(c_); }
Point2 Point2::embedded_into(const FieldDescriptor& f) const {
  return Point2(c_[0].embedded_into(f), c_[1].embedded_into(f), c_[2].embedded_into(f));
}

Line::Line(const Scalar& a, const Scalar& b, const Scalar& c)
    : c_(canonicalized<3>({a, b, c})) {}
std::string Line::canonical_key() const { return join_keys(c_); }
Line Line::embedded_into(const FieldDescriptor& f) const {
  return Line(c_[0].embedded_into(f), c_[1].embedded_into(f), c_[2].embedded_into(f));
}

Scalar incidence(const Line& l, const Point2& p) {
  return l[0] * p[0] + l[1] * p[1] + l[2] * p[2];
}

bool on_line(const Line& l, const Point2& p) { return incidence(l, p).is_zero(); }

Line join(const Point2& p, const Point2& q) {
  if (p == q) throw DegenerateTriple("join of equal points");
  return Line(p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2],
              p[0] * q[1] - p[1] * q[0]);
}

Point2 meet(const Line& l, const Line& m) {
  if (l == m) throw DegenerateTriple("meet of equal lines");
  return Point2(l[1] * m[2] - l[2] * m[1], l[2] * m[0] - l[0] * m[2],
                l[0] * m[1] - l[1] * m[0]);
}

bool collinear(const Point2& p, const Point2& q, const Point2& r) {
  Mat3 m{{{p[0], p[1], p[2]}, {q[0], q[1], q[2]}, {r[0], r[1], r[2]}}};
  return det3(m).is_zero();
}

Point2 linear_combination(const Scalar& s, const Point2& p, const Scalar& t, const Point2& q) {
  return Point2(s * p[0] + t * q[0], s * p[1] + t * q[1], s * p[2] + t * q[2]);
}

// ---- exact linear algebra ----

int row_reduce(std::vector<std::vector<Scalar>>& m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    Scalar inv = m[rank][col].inv();
    for (std::size_t j = col; j < cols; ++j) m[rank][j] = m[rank][j] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || m[i][col].is_zero()) continue;
      Scalar f = m[i][col];
      for (std::size_t j = col; j < cols; ++j) m[i][j] = m[i][j] - f * m[rank][j];
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

std::vector<std::vector<Scalar>> kernel_basis(std::vector<std::vector<Scalar>> m,
                                              const FieldDescriptor& f) {
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  int rank = row_reduce(m);
  // locate pivot columns in the reduced form
  std::vector<int> pivot_col(rank, -1);
  std::vector<bool> is_pivot(cols, false);
  for (int r = 0; r < rank; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (!m[r][c].is_zero()) {
        pivot_col[r] = static_cast<int>(c);
        is_pivot[c] = true;
        break;
      }
    }
  }
  std::vector<std::vector<Scalar>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Scalar> v(cols, Scalar::zero(f));
    v[free] = Scalar::one(f);
    for (int r = 0; r < rank; ++r) v[pivot_col[r]] = -m[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

// ---- conics ----

Conic Conic::from_coefficients(const std::array<Scalar, 6>& v) {
  const FieldDescriptor& f = v[0].field();
  Scalar half = Scalar::of_rational(f, mpq_class(1, 2));
  Mat3 g{{{v[0], v[3] * half, v[4] * half},
          {v[3] * half, v[1], v[5] * half},
          {v[4] * half, v[5] * half, v[2]}}};
  return from_gram(g);
}

Conic Conic::from_gram(const std::array<std::array<Scalar, 3>, 3>& g0) {
  Mat3 g = g0;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (g[i][j] != g[j][i]) throw Error("InvalidArgument", "gram matrix not symmetric");
  // canonical scale: first nonzero entry in row-major order becomes one
  const Scalar* lead = nullptr;
  for (int i = 0; i < 3 && !lead; ++i)
    for (int j = 0; j < 3 && !lead; ++j)
      if (!g[i][j].is_zero()) lead = &g0[i][j];
  if (!lead) throw ZeroVector("zero conic");
  if (!lead->is_one()) {
    Scalar s = lead->inv();
    for (auto& row : g)
      for (auto& x : row) x = x * s;
  }
  int rank = rank_of_gram(g);
  return Conic(std::move(g), rank);
}

Scalar Conic::evaluate(const Point2& p) const { return bilinear(*this, p, p); }

bool Conic::operator==(const Conic& o) const {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (g_[i][j] != o.g_[i][j]) return false;
  return true;
}

std::string Conic::canonical_key() const {
  std::string k;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      if (!k.empty()) k += ",";
      k += g_[i][j].canonical_key();
    }
  return k;
}

Conic Conic::embedded_into(const FieldDescriptor& f) const {
  Mat3 g = g_;
  for (auto& row : g)
    for (auto& x : row) x = x.embedded_into(f);
  return Conic(std::move(g), rank_);
}

Conic conic_through_five(const std::array<Point2, 5>& pts) {
  const FieldDescriptor& f = pts[0].field();
  std::vector<std::vector<Scalar>> rows;
  rows.reserve(5);
  for (const auto& p : pts) {
    rows.push_back({p[0] * p[0], p[1] * p[1], p[2] * p[2], p[0] * p[1], p[0] * p[2],
                    p[1] * p[2]});
  }
  auto ker = kernel_basis(std::move(rows), f);
  if (ker.size() != 1)
    throw NotUnique("five points impose dependent conic conditions");
  Conic c = Conic::from_coefficients(
      {ker[0][0], ker[0][1], ker[0][2], ker[0][3], ker[0][4], ker[0][5]});
  if (c.rank() < 3) throw NotIrreducible("conic through the five points degenerates", c);
  return c;
}

Line polar_line(const Conic& c, const Point2& p) {
  std::array<Scalar, 3> l = {Scalar::zero(p.field()), Scalar::zero(p.field()),
                             Scalar::zero(p.field())};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) l[i] = l[i] + c.gram(i, j) * p[j];
  if (l[0].is_zero() && l[1].is_zero() && l[2].is_zero())
    throw DegenerateConic("point lies in the radical");
  return Line(l[0], l[1], l[2]);
}

std::pair<Point2, Point2> tangent_points(const Conic& c, const Point2& p) {
  if (c.rank() < 3) throw DegenerateConic("tangency needs a rank 3 conic");
  if (c.contains(p)) throw PointOnConic("tangent points from a point on the conic");
  Line l = polar_line(c, p);
  // parametrize the polar by two spanning points
  auto span = kernel_basis({{l[0], l[1], l[2]}}, l.field());
  Point2 u(span[0][0], span[0][1], span[0][2]);
  Point2 v(span[1][0], span[1][1], span[1][2]);
  Scalar alpha = bilinear(c, u, u);
  Scalar beta = bilinear(c, u, v);
  Scalar gamma = bilinear(c, v, v);
  Point2 t1 = u, t2 = u;
  if (alpha.is_zero()) {
    // roots [1:0] and [-gamma : 2 beta] of 2 beta s t + gamma t^2
    t1 = u;
    t2 = linear_combination(-gamma, u, beta + beta, v);
  } else {
    Scalar disc = beta * beta - alpha * gamma;
    Scalar r = Scalar::sqrt(disc);  // may extend the field
    const FieldDescriptor& ext = r.field();
    Point2 ue = u.embedded_into(ext), ve = v.embedded_into(ext);
    Scalar ae = alpha.embedded_into(ext), be = beta.embedded_into(ext);
    t1 = linear_combination((-be + r) / ae, ue, Scalar::one(ext), ve);
    t2 = linear_combination((-be - r) / ae, ue, Scalar::one(ext), ve);
  }
  if (t2.canonical_key() < t1.canonical_key()) std::swap(t1, t2);
  return {t1, t2};
}

Point2 second_intersection(const Conic& c, const Point2& a, const Point2& m) {
  if (c.rank() < 3) throw DegenerateConic("secant construction needs a rank 3 conic");
  if (!c.contains(a)) throw PointNotOnConic("first point must lie on the conic");
  if (c.contains(m)) throw PointOnConic("direction point must avoid the conic");
  Scalar b = bilinear(c, a, m);
  Scalar q = bilinear(c, m, m);
  Scalar t = -(b + b) / q;
  if (t.is_zero()) return a;  // line tangent at a
  return linear_combination(Scalar::one(a.field()), a, t, m);
}

Point1 project_from(const Point2& center, const Point2& p) {
  if (center == p) throw CenterEqualsPoint("projection of the center");
  int k = 0;
  while (center[k].is_zero()) ++k;
  int i = k == 0 ? 1 : 0;
  int j = k == 2 ? 1 : 2;
  // pencil basis lines l_i(x) = x_i c_k - x_k c_i for the two smallest
  // non-leading indices; both vanish exactly at the center
  return Point1(p[i] * center[k] - p[k] * center[i], p[j] * center[k] - p[k] * center[j]);
}

Point1 project_line_from(const Point2& center, const Line& l) {
  if (!on_line(l, center)) throw NotInDomain("line misses the projection center");
  auto span = kernel_basis({{l[0], l[1], l[2]}}, l.field());
  Point2 u(span[0][0], span[0][1], span[0][2]);
  Point2 v(span[1][0], span[1][1], span[1][2]);
  return project_from(center, u == center ? v : u);
}

Point1 cross_ratio(const Point1& a, const Point1& b, const Point1& c, const Point1& d) {
  const FieldDescriptor& f = a.field();
  Scalar s0 = Scalar::zero(f), s1 = Scalar::one(f);
  Map2 m = Map2::from_triples({a, b, c}, {Point1(s1, s0), Point1(s1, s1), Point1(s0, s1)});
  return m.apply(d);
}

// ---- projectivities ----

Map3::Map3(const std::array<std::array<Scalar, 3>, 3>& m) : m_(m) {
  if (det3(m_).is_zero()) throw DegenerateFrame("projectivity matrix is singular");
  const Scalar* lead = nullptr;
  for (int i = 0; i < 3 && !lead; ++i)
    for (int j = 0; j < 3 && !lead; ++j)
      if (!m_[i][j].is_zero()) lead = &m_[i][j];
  if (!lead->is_one()) {
    Scalar s = lead->inv();
    for (auto& row : m_)
      for (auto& x : row) x = x * s;
  }
}

Map3 Map3::identity(const FieldDescriptor& f) {
  Scalar z = Scalar::zero(f), o = Scalar::one(f);
  return Map3({{{o, z, z}, {z, o, z}, {z, z, o}}});
}

namespace {

// columns scaled so the matrix sends the standard frame to the four points
Mat3 frame_matrix(const std::array<Point2, 4>& pts) {
  Mat3 m{{{pts[0][0], pts[1][0], pts[2][0]},
          {pts[0][1], pts[1][1], pts[2][1]},
          {pts[0][2], pts[1][2], pts[2][2]}}};
  if (det3(m).is_zero()) throw DegenerateFrame("three of the frame points are collinear");
  Mat3 adj = adjugate3(m);
  std::array<Scalar, 3> w;
  for (int i = 0; i < 3; ++i)
    w[i] = adj[i][0] * pts[3][0] + adj[i][1] * pts[3][1] + adj[i][2] * pts[3][2];
  for (int i = 0; i < 3; ++i) {
    if (w[i].is_zero())
      throw DegenerateFrame("fourth frame point is collinear with two others");
    for (int r = 0; r < 3; ++r) m[r][i] = m[r][i] * w[i];
  }
  return m;
}

}  // namespace

Map3 Map3::from_frames(const std::array<Point2, 4>& src, const std::array<Point2, 4>& dst) {
  Map3 a{frame_matrix(src)};
  Map3 b{frame_matrix(dst)};
  return b.compose(a.inverse());
}

Point2 Map3::apply(const Point2& p) const {
  return Point2(m_[0][0] * p[0] + m_[0][1] * p[1] + m_[0][2] * p[2],
                m_[1][0] * p[0] + m_[1][1] * p[1] + m_[1][2] * p[2],
                m_[2][0] * p[0] + m_[2][1] * p[1] + m_[2][2] * p[2]);
}

Map3 Map3::inverse() const { return Map3(adjugate3(m_)); }

Map3 Map3::compose(const Map3& o) const { return Map3(mul3(m_, o.m_)); }

bool Map3::operator==(const Map3& o) const {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (m_[i][j] != o.m_[i][j]) return false;
  return true;
}

Map3 Map3::embedded_into(const FieldDescriptor& f) const {
  Mat3 m = m_;
  for (auto& row : m)
    for (auto& x : row) x = x.embedded_into(f);
  return Map3(m);
}

Line line_image(const Map3& m, const Line& l) {
  Map3 inv = m.inverse();
  std::array<Scalar, 3> r;
  for (int j = 0; j < 3; ++j)
    r[j] = l[0] * inv.at(0, j) + l[1] * inv.at(1, j) + l[2] * inv.at(2, j);
  return Line(r[0], r[1], r[2]);
}

Conic conic_image(const Map3& m, const Conic& c) {
  Map3 inv = m.inverse();
  Mat3 g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Scalar s = Scalar::zero(c.field());
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) s = s + inv.at(k, i) * c.gram(k, l) * inv.at(l, j);
      g[i][j] = s;
    }
  return Conic::from_gram(g);
}

// ---- Map2 ----

Map2::Map2(const std::array<std::array<Scalar, 2>, 2>& m) : m_(m) {
  Scalar det = m_[0][0] * m_[1][1] - m_[0][1] * m_[1][0];
  if (det.is_zero()) throw DegenerateTriple("Moebius matrix is singular");
  const Scalar* lead = nullptr;
  for (int i = 0; i < 2 && !lead; ++i)
    for (int j = 0; j < 2 && !lead; ++j)
      if (!m_[i][j].is_zero()) lead = &m_[i][j];
  if (!lead->is_one()) {
    Scalar s = lead->inv();
    for (auto& row : m_)
      for (auto& x : row) x = x * s;
  }
}

Map2 Map2::from_triples(const std::array<Point1, 3>& src, const std::array<Point1, 3>& dst) {
  auto triple_matrix = [](const std::array<Point1, 3>& t) {
    Mat2 m{{{t[0][0], t[1][0]}, {t[0][1], t[1][1]}}};
    Scalar det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if (det.is_zero()) throw DegenerateTriple("triple has a repeated point");
    // solve m w = t[2] by the 2x2 adjugate
    Scalar w0 = m[1][1] * t[2][0] - m[0][1] * t[2][1];
    Scalar w1 = m[0][0] * t[2][1] - m[1][0] * t[2][0];
    if (w0.is_zero() || w1.is_zero())
      throw DegenerateTriple("triple has a repeated point");
    return Mat2{{{m[0][0] * w0, m[0][1] * w1}, {m[1][0] * w0, m[1][1] * w1}}};
  };
  Map2 a{triple_matrix(src)};
  Map2 b{triple_matrix(dst)};
  return b.compose(a.inverse());
}

Point1 Map2::apply(const Point1& p) const {
  return Point1(m_[0][0] * p[0] + m_[0][1] * p[1], m_[1][0] * p[0] + m_[1][1] * p[1]);
}

Map2 Map2::inverse() const {
  return Map2({{{m_[1][1], -m_[0][1]}, {-m_[1][0], m_[0][0]}}});
}

Map2 Map2::compose(const Map2& o) const {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r[i][j] = m_[i][0] * o.m_[0][j] + m_[i][1] * o.m_[1][j];
  return Map2(r);
}

bool Map2::operator==(const Map2& o) const {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      if (m_[i][j] != o.m_[i][j]) return false;
  return true;
}

// ---- normal form ----

NormalizedSix veronese_normalize(const std::array<Point2, 6>& cfg) {
  Conic q = conic_through_five({cfg[0], cfg[1], cfg[2], cfg[3], cfg[4]});
  if (q.contains(cfg[5])) throw PointOnConic("sixth point lies on the conic");
  auto [t1, t2] = tangent_points(q, cfg[5]);
  const FieldDescriptor& ext = t1.field();
  std::array<Point2, 6> e = {cfg[0].embedded_into(ext), cfg[1].embedded_into(ext),
                             cfg[2].embedded_into(ext), cfg[3].embedded_into(ext),
                             cfg[4].embedded_into(ext), cfg[5].embedded_into(ext)};
  Scalar z = Scalar::zero(ext), o = Scalar::one(ext);
  Map3 m = Map3::from_frames(
      {t1, e[5], t2, e[0]},
      {Point2(o, z, z), Point2(z, o, z), Point2(z, z, o), Point2(o, o, o)});
  std::array<Point2, 6> out = {m.apply(e[0]), m.apply(e[1]), m.apply(e[2]),
                               m.apply(e[3]), m.apply(e[4]), m.apply(e[5])};
  return {m, out};
}

}  // namespace p67
