#ifndef P67_CREMONA_HPP
#define P67_CREMONA_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "p67/forms.hpp"
#include "p67/projective.hpp"

namespace p67 {

// The standard quadratic involution [x,y,z] -> [yz,xz,xy]. Undefined exactly
// at the three coordinate vertices (IndeterminatePoint); points with one
// vanishing coordinate land on the opposite vertex.
Point2 std_cremona(const Point2& p);

// Image form of a curve: substitute [yz,xz,xy] and strip the monomial
// content carried by the contracted edges. A single-monomial form (a union
// of coordinate lines) keeps its full substituted image, e.g. x -> yz.
// ZeroForm on the zero form.
TernaryForm std_cremona_form_image(const TernaryForm& f);

// Six labeled plane points; label i lives at index i-1. Raw arrays carry no
// distinctness promises, so degenerations stay representable.
using LabeledSix = std::array<Point2, 6>;

// Quadratic involution based at three of the six points, conjugated into the
// standard one by the frame (base1, base2, base3, lowest labeled non-base
// point off all three base lines) -> coordinate frame. Base labels keep
// their points; the other three transform. Output points may collide (that
// is meaningful degeneration data); inputs must be pairwise distinct.
LabeledSix based_cremona(const LabeledSix& pts, std::array<int, 3> base_labels);

// The conjugating projectivity used by based_cremona (base frame to the
// coordinate frame), exposed so callers can transport curves through the
// same involution. Shares based_cremona's validation and errors.
Map3 based_frame_map(const LabeledSix& pts, std::array<int, 3> base_labels);

// Subset of the labels {1..5}; the sixth label is never a swap member.
class SwapSet {
 public:
  SwapSet() : bits_(0) {}
  static SwapSet of(std::initializer_list<int> labels);
  static SwapSet full();  // {1,2,3,4,5}
  // comma separated labels, e.g. "1,3,5"; empty string is the empty set
  static SwapSet parse(const std::string& text);

  bool contains(int label) const { return (bits_ >> (label - 1)) & 1u; }
  void add(int label);
  int size() const;
  std::uint8_t bits() const { return bits_; }
  SwapSet complemented() const;
  SwapSet symmetric_difference(const SwapSet& o) const;
  std::vector<int> members() const;
  bool operator==(const SwapSet& o) const { return bits_ == o.bits_; }
  std::string to_string() const;

 private:
  std::uint8_t bits_;
};

// Composition of based involutions, applied rightmost first, printed as
// "psi(3,4,6)*psi(1,2,6)". The empty word prints as "id".
class CremonaWord {
 public:
  CremonaWord() = default;
  explicit CremonaWord(std::vector<std::array<int, 3>> tokens);
  static CremonaWord parse(const std::string& text);

  const std::vector<std::array<int, 3>>& tokens() const { return tokens_; }
  bool empty() const { return tokens_.empty(); }
  std::string to_string() const;
  bool operator==(const CremonaWord& o) const { return tokens_ == o.tokens_; }

 private:
  std::vector<std::array<int, 3>> tokens_;
};

// A shortest word in the generators psi(i,j,6) whose composite, on moduli,
// switches exactly the points of s (equivalently its complement: the full
// five point swap is a projectivity) with their secant partners and leaves
// every label in place. A single generator does not do this: it swaps the
// pair {i,j} but also transposes the labels i and j, so words are solved by
// breadth first search in the order 1920 group those two effects generate.
// Always solvable; deterministic, with generators tried in lexicographic
// pair order.
CremonaWord swap_word(const SwapSet& s);

// Fold a word over a labeled configuration, rightmost token first. Errors
// from individual steps are re-raised with the token position prefixed.
LabeledSix apply_word(const LabeledSix& pts, const CremonaWord& w);

}  // namespace p67

#endif  // P67_CREMONA_HPP
