#ifndef P67_DM_HPP
#define P67_DM_HPP

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "p67/errors.hpp"
#include "p67/projective.hpp"

namespace p67 {

// Ordered list of positive integer weights attached to points on the line.
// Ordering matters (weights are positional); merged stratum vectors are the
// sorted-descending exception and say so where they appear.
class WeightVector {
 public:
  explicit WeightVector(std::vector<int> weights);
  // accepts both "2^5,1^2" and "2,2,2,2,2,1,1"
  static WeightVector parse(const std::string& text);

  const std::vector<int>& weights() const { return weights_; }
  int operator[](std::size_t i) const { return weights_[i]; }
  std::size_t size() const { return weights_.size(); }
  int total() const { return total_; }
  WeightVector sorted_descending() const;

  bool operator==(const WeightVector& o) const { return weights_ == o.weights_; }
  bool operator!=(const WeightVector& o) const { return !(*this == o); }
  bool operator<(const WeightVector& o) const { return weights_ < o.weights_; }
  // consecutive equal weights compress to "v^k", e.g. "5,2,1^5"
  std::string to_string() const;

 private:
  std::vector<int> weights_;
  int total_;
};

// Weighted points on the line; coincidences allowed, same field throughout.
class P1Config {
 public:
  P1Config(std::vector<Point1> points, WeightVector weights);
  const std::vector<Point1>& points() const { return points_; }
  const WeightVector& weights() const { return weights_; }
  std::size_t size() const { return points_.size(); }
  const FieldDescriptor& field() const { return points_[0].field(); }

 private:
  std::vector<Point1> points_;
  WeightVector weights_;
};

enum class Stability { Stable, StrictlySemistable, Unstable };
std::string to_string(Stability s);

// Coincidence partition: blocks are the maximal index sets at one point,
// ordered by smallest member; merged holds the block weight sums sorted
// descending.
struct Stratum {
  std::vector<std::vector<int>> partition;
  std::vector<int> merged;
};

// Stable iff every coincidence class carries less than half the total
// weight; equality anywhere (and nothing above) is strictly semistable.
Stability stability(const P1Config& cfg);

Stratum collision_stratum(const P1Config& cfg);

// All merged weight vectors reachable by collapsing the indices of mu into
// exactly m nonempty stable classes, as a duplicate-free ascending list of
// descending-sorted vectors.
std::vector<WeightVector> descendants(const WeightVector& mu, int m);

// Complex dimension of the moduli ball: n - 3 for n weighted points.
int ball_dimension(const WeightVector& mu);

// Product of symmetric groups acting within index blocks; the only allowed
// blocks are sets of equal-weight indices.
class SymmetryGroup {
 public:
  static SymmetryGroup trivial(std::size_t n);
  // one block per distinct weight value
  static SymmetryGroup for_weights(const WeightVector& mu);
  // explicit blocks (disjoint, in range); weight compatibility is checked
  // where the group meets a configuration
  static SymmetryGroup of_blocks(std::size_t n, std::vector<std::vector<int>> blocks);

  std::size_t n() const { return n_; }
  const std::vector<std::vector<int>>& blocks() const { return blocks_; }
  // visits every sigma in the product group; stops early when fn returns
  // true and reports whether that happened
  bool for_each_permutation(const std::function<bool(const std::vector<int>&)>& fn) const;

 private:
  SymmetryGroup(std::size_t n, std::vector<std::vector<int>> blocks);
  std::size_t n_;
  std::vector<std::vector<int>> blocks_;
};

// True iff some sigma in the group and some Moebius map g send a to b
// label-by-label: g(a_i) = b_{sigma(i)}. Needs three distinct points each
// (TooFewDistinctPoints) and equal weight vectors (WeightMismatch).
bool moduli_equal(const P1Config& a, const P1Config& b, const SymmetryGroup& sigma);

// Canonical byte string of the (Moebius x group)-orbit: the minimum over
// sigma of the canonically normalized coordinate serialization. Equal moduli
// points always fingerprint equally; moduli_equal stays the authority.
std::string fingerprint(const P1Config& cfg, const SymmetryGroup& sigma);

}  // namespace p67

#endif  // P67_DM_HPP
