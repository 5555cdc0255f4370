#include "p67/cremona.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <queue>

namespace p67 {

Point2 std_cremona(const Point2& p) {
  int zeros = 0;
  for (int i = 0; i < 3; ++i)
    if (p[i].is_zero()) ++zeros;
  if (zeros >= 2) throw IndeterminatePoint("coordinate vertex " + p.canonical_key());
  return Point2(p[1] * p[2], p[0] * p[2], p[0] * p[1]);
}

TernaryForm std_cremona_form_image(const TernaryForm& f) {
  if (f.is_zero()) throw ZeroForm("image of the zero form");
  TernaryForm sub = f.cremona_substituted();
  // a lone monomial is a union of edges; its substituted image is already
  // the geometric image and stripping it would leave a constant
  if (sub.terms().size() == 1) return sub;
  return sub.without_monomial_content();
}

Map3 based_frame_map(const LabeledSix& pts, std::array<int, 3> base_labels) {
  std::sort(base_labels.begin(), base_labels.end());
  if (base_labels[0] < 1 || base_labels[2] > 6 || base_labels[0] == base_labels[1] ||
      base_labels[1] == base_labels[2])
    throw Error("InvalidArgument", "base labels must be three distinct labels in 1..6");
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (pts[i] == pts[j])
        throw DuplicatePoint("labels " + std::to_string(i + 1) + " and " +
                             std::to_string(j + 1) + " coincide");

  const Point2& b1 = pts[base_labels[0] - 1];
  const Point2& b2 = pts[base_labels[1] - 1];
  const Point2& b3 = pts[base_labels[2] - 1];
  if (collinear(b1, b2, b3)) throw CollinearBase("base points are collinear");

  auto in_base = [&](int label) {
    return label == base_labels[0] || label == base_labels[1] || label == base_labels[2];
  };
  // lowest labeled non-base point avoiding all three base lines
  int fourth = 0;
  for (int label = 1; label <= 6 && fourth == 0; ++label) {
    if (in_base(label)) continue;
    const Point2& p = pts[label - 1];
    if (!collinear(p, b1, b2) && !collinear(p, b1, b3) && !collinear(p, b2, b3)) fourth = label;
  }
  if (fourth == 0)
    throw DegenerateFourthPoint("every non-base point lies on a base line");

  const FieldDescriptor& f = pts[0].field();
  Scalar z = Scalar::zero(f), o = Scalar::one(f);
  return Map3::from_frames(
      {b1, b2, b3, pts[fourth - 1]},
      {Point2(o, z, z), Point2(z, o, z), Point2(z, z, o), Point2(o, o, o)});
}

LabeledSix based_cremona(const LabeledSix& pts, std::array<int, 3> base_labels) {
  std::sort(base_labels.begin(), base_labels.end());
  Map3 g = based_frame_map(pts, base_labels);
  Map3 ginv = g.inverse();

  auto in_base = [&](int label) {
    return label == base_labels[0] || label == base_labels[1] || label == base_labels[2];
  };
  LabeledSix out = pts;
  for (int label = 1; label <= 6; ++label) {
    if (in_base(label)) continue;  // base markings ride along the blowup
    out[label - 1] = ginv.apply(std_cremona(g.apply(pts[label - 1])));
  }
  return out;
}

// ---- swap sets ----

SwapSet SwapSet::of(std::initializer_list<int> labels) {
  SwapSet s;
  for (int l : labels) s.add(l);
  return s;
}

SwapSet SwapSet::full() { return of({1, 2, 3, 4, 5}); }

SwapSet SwapSet::parse(const std::string& text) {
  SwapSet s;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) return s;
  for (;;) {
    skip_ws();
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("expected a label at offset " + std::to_string(i));
    int label = text[i] - '0';
    ++i;
    if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
      throw ParseError("labels are single digits 1..5");
    if (label < 1 || label > 5) throw ParseError("swap labels live in 1..5");
    if (s.contains(label)) throw ParseError("repeated label " + std::to_string(label));
    s.add(label);
    skip_ws();
    if (i == text.size()) return s;
    if (text[i] != ',') throw ParseError("expected ',' at offset " + std::to_string(i));
    ++i;
  }
}

void SwapSet::add(int label) {
  if (label < 1 || label > 5)
    throw Error("InvalidArgument", "swap labels live in 1..5");
  bits_ |= static_cast<std::uint8_t>(1u << (label - 1));
}

int SwapSet::size() const { return std::popcount(static_cast<unsigned>(bits_)); }

SwapSet SwapSet::complemented() const {
  SwapSet s;
  s.bits_ = static_cast<std::uint8_t>(~bits_ & 0x1f);
  return s;
}

SwapSet SwapSet::symmetric_difference(const SwapSet& o) const {
  SwapSet s;
  s.bits_ = bits_ ^ o.bits_;
  return s;
}

std::vector<int> SwapSet::members() const {
  std::vector<int> m;
  for (int l = 1; l <= 5; ++l)
    if (contains(l)) m.push_back(l);
  return m;
}

std::string SwapSet::to_string() const {
  std::string s = "{";
  for (int l : members()) {
    if (s.size() > 1) s += ",";
    s += std::to_string(l);
  }
  return s + "}";
}

// ---- words ----

CremonaWord::CremonaWord(std::vector<std::array<int, 3>> tokens) : tokens_(std::move(tokens)) {
  for (auto& t : tokens_) {
    std::sort(t.begin(), t.end());
    if (t[0] < 1 || t[2] > 6 || t[0] == t[1] || t[1] == t[2])
      throw Error("InvalidArgument", "word token needs three distinct labels in 1..6");
  }
}

std::string CremonaWord::to_string() const {
  if (tokens_.empty()) return "id";
  std::string s;
  for (const auto& t : tokens_) {
    if (!s.empty()) s += "*";
    s += "psi(" + std::to_string(t[0]) + "," + std::to_string(t[1]) + "," +
         std::to_string(t[2]) + ")";
  }
  return s;
}

CremonaWord CremonaWord::parse(const std::string& text) {
  auto skip_ws = [&](std::size_t& i) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  std::size_t i = 0;
  skip_ws(i);
  if (text.compare(i, 2, "id") == 0) {
    i += 2;
    skip_ws(i);
    if (i != text.size()) throw ParseError("trailing characters after 'id'");
    return CremonaWord();
  }
  std::vector<std::array<int, 3>> tokens;
  for (;;) {
    skip_ws(i);
    if (text.compare(i, 4, "psi(") != 0)
      throw ParseError("expected 'psi(' at offset " + std::to_string(i));
    i += 4;
    std::array<int, 3> t{};
    for (int k = 0; k < 3; ++k) {
      skip_ws(i);
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == start) throw ParseError("expected a label at offset " + std::to_string(i));
      t[k] = std::stoi(text.substr(start, i - start));
      skip_ws(i);
      char expect = k < 2 ? ',' : ')';
      if (i >= text.size() || text[i] != expect)
        throw ParseError(std::string("expected '") + expect + "' at offset " +
                         std::to_string(i));
      ++i;
    }
    if (t[0] < 1 || t[0] > 6 || t[1] < 1 || t[1] > 6 || t[2] < 1 || t[2] > 6 ||
        t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw ParseError("token labels must be three distinct values in 1..6");
    std::sort(t.begin(), t.end());
    tokens.push_back(t);
    skip_ws(i);
    if (i == text.size()) break;
    if (text[i] != '*') throw ParseError("expected '*' at offset " + std::to_string(i));
    ++i;
  }
  return CremonaWord(std::move(tokens));
}

namespace {

// On moduli, psi(a,b,6) transposes the two on conic base labels a,b and
// swaps the pair {a,b} along secants through the sixth point (equivalently
// the complementary triple: the full five point swap is a projectivity).
// Words therefore compose inside S5 x (F2^5 / <11111>), a group of order
// 1920, and a swap set is realized exactly by the words whose permutation
// part cancels. Breadth first search from the identity, expanding the ten
// generators in lexicographic pair order, yields deterministic shortest
// words for all sixteen swap classes.
struct SwapWordTable {
  // canonical class representative: the even weight member of {u, ~u}
  static std::uint8_t cls(std::uint8_t u) {
    return std::popcount(u) % 2 == 0 ? u : static_cast<std::uint8_t>(~u & 0x1f);
  }

  std::vector<std::array<std::uint8_t, 5>> perms;  // all of S5, lex order
  std::array<int, 3840> parent_state;              // state = rank * 32 + bits
  std::array<std::int8_t, 3840> parent_token;

  int rank_of(const std::array<std::uint8_t, 5>& p) const {
    // lexicographic rank via the Lehmer code
    int r = 0;
    static constexpr int fact[5] = {24, 6, 2, 1, 1};
    for (int i = 0; i < 4; ++i) {
      int smaller = 0;
      for (int j = i + 1; j < 5; ++j) smaller += p[j] < p[i];
      r += smaller * fact[i];
    }
    return r;
  }

  SwapWordTable() {
    std::array<std::uint8_t, 5> p{0, 1, 2, 3, 4};
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));

    std::array<std::array<int, 2>, 10> pairs;
    int n = 0;
    for (int i = 1; i <= 5; ++i)
      for (int j = i + 1; j <= 5; ++j) pairs[n++] = {i, j};

    parent_state.fill(-1);
    parent_token.fill(-1);
    std::queue<int> bfs;
    int start = rank_of({0, 1, 2, 3, 4}) * 32 + 0;
    parent_state[start] = start;
    bfs.push(start);
    while (!bfs.empty()) {
      int cur = bfs.front();
      bfs.pop();
      const auto& sigma = perms[cur / 32];
      std::uint8_t u = static_cast<std::uint8_t>(cur % 32);
      std::array<std::uint8_t, 5> inv{};
      for (int i = 0; i < 5; ++i) inv[sigma[i]] = static_cast<std::uint8_t>(i);
      for (int g = 0; g < 10; ++g) {
        auto [a, b] = pairs[g];
        // append the generator after the current prefix:
        // sigma' = tau(a,b) o sigma, u' = u xor sigma^-1({a,b})
        std::array<std::uint8_t, 5> next = sigma;
        std::swap(next[inv[a - 1]], next[inv[b - 1]]);
        std::uint8_t bits = cls(static_cast<std::uint8_t>(
            u ^ (1u << inv[a - 1]) ^ (1u << inv[b - 1])));
        int to = rank_of(next) * 32 + bits;
        if (parent_state[to] >= 0) continue;
        parent_state[to] = cur;
        parent_token[to] = static_cast<std::int8_t>(g);
        bfs.push(to);
      }
    }
  }
};

}  // namespace

CremonaWord swap_word(const SwapSet& s) {
  static const SwapWordTable table;
  static const std::array<std::array<int, 2>, 10> pairs = [] {
    std::array<std::array<int, 2>, 10> p;
    int n = 0;
    for (int i = 1; i <= 5; ++i)
      for (int j = i + 1; j <= 5; ++j) p[n++] = {i, j};
    return p;
  }();
  int start = table.rank_of({0, 1, 2, 3, 4}) * 32 + 0;
  int state = start + SwapWordTable::cls(s.bits());
  if (table.parent_state[state] < 0)
    throw Error("Unreachable", "every swap set is realizable");
  // walk back to the identity; tokens come out last applied first, which is
  // exactly the stored composition order
  std::vector<std::array<int, 3>> tokens;
  while (state != start) {
    int g = table.parent_token[state];
    tokens.push_back({pairs[g][0], pairs[g][1], 6});
    state = table.parent_state[state];
  }
  return CremonaWord(std::move(tokens));
}

LabeledSix apply_word(const LabeledSix& pts, const CremonaWord& w) {
  LabeledSix cur = pts;
  const auto& tokens = w.tokens();
  for (std::size_t k = tokens.size(); k-- > 0;) {
    try {
      cur = based_cremona(cur, tokens[k]);
    } catch (const Error& e) {
      std::string ctx = "token " + std::to_string(k) + " psi(" +
                        std::to_string(tokens[k][0]) + "," + std::to_string(tokens[k][1]) +
                        "," + std::to_string(tokens[k][2]) + "): ";
      if (e.kind() == "CollinearBase") throw CollinearBase(ctx + e.what());
      if (e.kind() == "DegenerateFourthPoint") throw DegenerateFourthPoint(ctx + e.what());
      if (e.kind() == "DuplicatePoint") throw DuplicatePoint(ctx + e.what());
      if (e.kind() == "IndeterminatePoint") throw IndeterminatePoint(ctx + e.what());
      throw;
    }
  }
  return cur;
}

}  // namespace p67
