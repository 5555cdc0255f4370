#ifndef P67_BRIDGE_HPP
#define P67_BRIDGE_HPP

#include <array>
#include <string>
#include <vector>

#include "p67/cremona.hpp"
#include "p67/dm.hpp"
#include "p67/errors.hpp"
#include "p67/projective.hpp"

namespace p67 {

// Six labeled plane points, pairwise distinct, one field; label i lives at
// index i-1. Coincident points are out of scope at this level (they stand
// for infinitely-near data); raw LabeledSix arrays carry such degenerations
// where they are meaningful.
class PlaneConfig {
 public:
  explicit PlaneConfig(LabeledSix pts);
  const Point2& operator[](std::size_t i) const { return pts_[i]; }
  const LabeledSix& points() const { return pts_; }
  const FieldDescriptor& field() const { return pts_[0].field(); }
  bool operator==(const PlaneConfig& o) const;
  bool operator!=(const PlaneConfig& o) const { return !(*this == o); }
  PlaneConfig embedded_into(const FieldDescriptor& f) const;

 private:
  LabeledSix pts_;
};

// Position of a configuration relative to the conic through its first five
// points and to collinearity degenerations. Labels are 1-based.
struct StratumClass {
  enum class Kind { GenericSmooth, OnConic, CollinearThrough6, Excluded };
  Kind kind = Kind::Excluded;
  // CollinearThrough6 only: the labels i < j <= 5 collinear with label 6
  std::array<int, 2> pair{0, 0};
  // Excluded only: diagnostic
  std::string reason;

  std::string to_string() const;
};

// Total classification; degeneracies never throw, they come back Excluded
// with a reason. Six points on a rank-3 conic admit no collinear triple, so
// OnConic and CollinearThrough6 exclude each other by construction;
// CollinearThrough6 requires exactly one collinear triple, containing 6.
StratumClass classify(const PlaneConfig& cfg);

// Seven weighted points on the line: images of the five ordered points
// (weight 2 each) and of the unordered tangency pair (weight 1 each), all
// in one field. The pair is sorted by canonical key and must be disjoint as
// a set of two. Construction validates the collision pattern: the merged
// stratum must be one of (2^5,1^2), (3,2^4,1), (3^2,2^3), (4,2^3,1^2);
// anything deeper raises NotInStratum.
class P1Output {
 public:
  P1Output(std::array<Point1, 5> ordered, std::array<Point1, 2> pair);
  const std::array<Point1, 5>& ordered() const { return ordered_; }
  const std::array<Point1, 2>& pair() const { return pair_; }
  const FieldDescriptor& field() const { return ordered_[0].field(); }
  // the seven points in label order (five ordered, then the pair)
  P1Config as_p1_config() const;
  bool operator==(const P1Output& o) const;
  bool operator!=(const P1Output& o) const { return !(*this == o); }

 private:
  std::array<Point1, 5> ordered_;
  std::array<Point1, 2> pair_;
};

// The plane-to-line map: project the five points and the two tangency
// points of the conic through them from the sixth point. Defined on
// GenericSmooth and CollinearThrough6 (the latter merges the collinear
// pair's images); NotInDomain otherwise. May extend the field by the
// tangency discriminant. Exactly S5-equivariant in labels 1..5 and exactly
// invariant under geometric_swap.
P1Output phi67(const PlaneConfig& cfg);

// The on-conic variant: all six points on one rank-3 conic project from the
// sixth to five points plus the class of the tangent line at the sixth,
// every weight 2. Never leaves the base field. NotOnConic otherwise.
P1Config phi67_on_conic(const PlaneConfig& cfg);

// Replace each swapped point by the second intersection of its line to the
// sixth point with the conic through the first five. Tangency points stay
// put. Requires GenericSmooth (NotGeneric); the output is GenericSmooth
// again, the action is an exact involution per label, and compositions
// multiply by symmetric difference of the swap sets.
PlaneConfig geometric_swap(const PlaneConfig& cfg, const SwapSet& s);

// True iff a projectivity matches a to b label-by-label. Decided by the
// first 4-point frame of a in lexicographic label order; NoFrame when
// either configuration has no four points in general position. Fields must
// agree (FieldMismatch).
bool moduli_equal_plane(const PlaneConfig& a, const PlaneConfig& b);

// All 32 swap images deduplicated by moduli_equal_plane, keeping the
// first-seen representative in swap-set bit order. The class count divides
// 16 and equals 16 exactly when no swapped point is a tangency point.
// Requires GenericSmooth (NotGeneric).
std::vector<PlaneConfig> fiber_orbit(const PlaneConfig& cfg);

// Moduli comparison of two line images: Moebius equivalence, label by label
// on the five ordered points and up to exchange of the pair. Embeds into a
// common field when exactly one side picked up the quadratic extension.
bool moduli_equal(const P1Output& a, const P1Output& b);

// Inverse construction in the normal form where the conic is y^2 = xz and
// the sixth point [0,1,0]: a Moebius map sends the pair to {infinity, 0}
// and the first ordered point off the pair to 1, then each normalized
// affine value lambda lifts to [1, sqrt(lambda), lambda]. A repeated value
// lifts to the two opposite roots. Over the rationals every lambda must be
// a perfect square (one-layer extension budget is reserved for phi67);
// over a prime field the first non-square picks the quadratic extension and
// the rest resolve inside it; over an extension field all roots must exist
// in place. UnliftableOverField on square obstructions.
PlaneConfig lift(const P1Output& out);

// Moves a configuration whose only degeneracy is one pair collinear with
// the sixth point onto a conic: the involution based at the other three
// labels sends the offending line to a rank-3 conic through all six output
// points. WrongStratum unless classify says CollinearThrough6.
PlaneConfig collinear_to_conic(const PlaneConfig& cfg);

// Limit analysis for the doubly degenerate case: pair {i,j} collinear with
// label 6 while one of i, j also sits on a line through two of the base
// labels. The based involution then collides that label with the remaining
// base label ("the opposite vertex"), leaving five point classes on the
// image conic whose projection has merged stratum (4,2,2,2,2).
struct DegenerateLimitReport {
  std::array<int, 2> line_pair{0, 0};  // labels collinear with 6
  int doubled_label = 0;               // member of the pair on a base line
  int opposite_label = 0;              // base label it collides with
  int distinct_classes = 0;            // distinct points among the six images
  bool doubled_class_is_opposite_vertex = false;
  bool classes_on_conic = false;       // all classes on the rank-3 image conic
  std::vector<int> merged;             // projection stratum, sorted descending
};

// WrongDegeneracy unless the configuration has exactly the two collinear
// triples described above.
DegenerateLimitReport degenerate_limit_check_I(const PlaneConfig& cfg);

}  // namespace p67

#endif  // P67_BRIDGE_HPP
