#include "p67/dm.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>

namespace p67 {

WeightVector::WeightVector(std::vector<int> weights) : weights_(std::move(weights)), total_(0) {
  if (weights_.empty()) throw Error("InvalidArgument", "weight vector must be nonempty");
  for (int w : weights_) {
    if (w < 1) throw Error("InvalidArgument", "weights are positive integers");
    total_ += w;
  }
}

WeightVector WeightVector::parse(const std::string& text) {
  std::vector<int> ws;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto read_int = [&]() -> int {
    skip_ws();
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) throw ParseError("expected an integer at offset " + std::to_string(i));
    if (i - start > 6) throw ParseError("weight out of range");
    return std::stoi(text.substr(start, i - start));
  };
  for (;;) {
    int value = read_int();
    if (value < 1) throw ParseError("weights are positive");
    int count = 1;
    skip_ws();
    if (i < text.size() && text[i] == '^') {
      ++i;
      count = read_int();
      if (count < 1) throw ParseError("repeat count must be positive");
      if (count > 10000) throw ParseError("repeat count out of range");
    }
    for (int k = 0; k < count; ++k) ws.push_back(value);
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != ',') throw ParseError("expected ',' at offset " + std::to_string(i));
    ++i;
  }
  return WeightVector(std::move(ws));
}

WeightVector WeightVector::sorted_descending() const {
  std::vector<int> ws = weights_;
  std::sort(ws.begin(), ws.end(), std::greater<int>());
  return WeightVector(std::move(ws));
}

std::string WeightVector::to_string() const {
  std::string out;
  std::size_t i = 0;
  while (i < weights_.size()) {
    std::size_t j = i;
    while (j < weights_.size() && weights_[j] == weights_[i]) ++j;
    if (!out.empty()) out += ",";
    out += std::to_string(weights_[i]);
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

P1Config::P1Config(std::vector<Point1> points, WeightVector weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.size() != weights_.size())
    throw WeightMismatch("point count " + std::to_string(points_.size()) +
                         " versus weight count " + std::to_string(weights_.size()));
  for (const Point1& p : points_)
    if (!(p.field() == points_[0].field()))
      throw FieldMismatch("configuration points live in one field");
}

std::string to_string(Stability s) {
  switch (s) {
    case Stability::Stable:
      return "Stable";
    case Stability::StrictlySemistable:
      return "StrictlySemistable";
    default:
      return "Unstable";
  }
}

namespace {

// blocks of equal points, ordered by smallest member
std::vector<std::vector<int>> coincidence_blocks(const P1Config& cfg) {
  const auto& pts = cfg.points();
  std::vector<std::vector<int>> blocks;
  std::vector<bool> used(pts.size(), false);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (used[i]) continue;
    std::vector<int> block = {static_cast<int>(i)};
    used[i] = true;
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (!used[j] && pts[j] == pts[i]) {
        block.push_back(static_cast<int>(j));
        used[j] = true;
      }
    blocks.push_back(std::move(block));
  }
  return blocks;
}

}  // namespace

Stability stability(const P1Config& cfg) {
  int total = cfg.weights().total();
  bool semistable_hit = false;
  for (const auto& block : coincidence_blocks(cfg)) {
    int w = 0;
    for (int i : block) w += cfg.weights()[static_cast<std::size_t>(i)];
    if (2 * w > total) return Stability::Unstable;
    if (2 * w == total) semistable_hit = true;
  }
  return semistable_hit ? Stability::StrictlySemistable : Stability::Stable;
}

Stratum collision_stratum(const P1Config& cfg) {
  Stratum s;
  s.partition = coincidence_blocks(cfg);
  for (const auto& block : s.partition) {
    int w = 0;
    for (int i : block) w += cfg.weights()[static_cast<std::size_t>(i)];
    s.merged.push_back(w);
  }
  std::sort(s.merged.begin(), s.merged.end(), std::greater<int>());
  return s;
}

std::vector<WeightVector> descendants(const WeightVector& mu, int m) {
  if (m < 3) throw Error("InvalidArgument", "descendant spaces need at least three points");
  int n = static_cast<int>(mu.size());
  int total = mu.total();
  std::set<WeightVector> out;
  if (m > n) return {};
  // restricted-growth enumeration of set partitions into exactly m blocks;
  // block sums only grow, so a half-total block prunes its whole branch
  std::vector<int> sums;
  sums.reserve(static_cast<std::size_t>(m));
  std::function<void(int)> place = [&](int i) {
    int used = static_cast<int>(sums.size());
    if (i == n) {
      if (used != m) return;
      std::vector<int> merged = sums;
      std::sort(merged.begin(), merged.end(), std::greater<int>());
      out.insert(WeightVector(std::move(merged)));
      return;
    }
    if (used + (n - i) < m) return;
    int w = mu[static_cast<std::size_t>(i)];
    for (int b = 0; b < used; ++b) {
      if (2 * (sums[static_cast<std::size_t>(b)] + w) >= total) continue;
      sums[static_cast<std::size_t>(b)] += w;
      place(i + 1);
      sums[static_cast<std::size_t>(b)] -= w;
    }
    if (used < m && 2 * w < total) {
      sums.push_back(w);
      place(i + 1);
      sums.pop_back();
    }
  };
  place(0);
  return std::vector<WeightVector>(out.begin(), out.end());
}

int ball_dimension(const WeightVector& mu) {
  if (mu.size() < 3) throw Error("InvalidArgument", "moduli need at least three points");
  return static_cast<int>(mu.size()) - 3;
}

SymmetryGroup::SymmetryGroup(std::size_t n, std::vector<std::vector<int>> blocks)
    : n_(n), blocks_(std::move(blocks)) {}

SymmetryGroup SymmetryGroup::trivial(std::size_t n) { return SymmetryGroup(n, {}); }

SymmetryGroup SymmetryGroup::of_blocks(std::size_t n, std::vector<std::vector<int>> blocks) {
  std::vector<bool> seen(n, false);
  std::vector<std::vector<int>> kept;
  for (auto& block : blocks) {
    std::sort(block.begin(), block.end());
    for (int i : block) {
      if (i < 0 || static_cast<std::size_t>(i) >= n)
        throw Error("InvalidArgument", "block index out of range");
      if (seen[static_cast<std::size_t>(i)])
        throw Error("InvalidArgument", "blocks must be disjoint");
      seen[static_cast<std::size_t>(i)] = true;
    }
    if (block.size() > 1) kept.push_back(std::move(block));
  }
  return SymmetryGroup(n, std::move(kept));
}

SymmetryGroup SymmetryGroup::for_weights(const WeightVector& mu) {
  std::vector<std::vector<int>> blocks;
  std::vector<bool> used(mu.size(), false);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    if (used[i]) continue;
    std::vector<int> block = {static_cast<int>(i)};
    used[i] = true;
    for (std::size_t j = i + 1; j < mu.size(); ++j)
      if (!used[j] && mu[j] == mu[i]) {
        block.push_back(static_cast<int>(j));
        used[j] = true;
      }
    if (block.size() > 1) blocks.push_back(std::move(block));
  }
  return SymmetryGroup(mu.size(), std::move(blocks));
}

bool SymmetryGroup::for_each_permutation(
    const std::function<bool(const std::vector<int>&)>& fn) const {
  std::vector<int> sigma(n_);
  for (std::size_t i = 0; i < n_; ++i) sigma[i] = static_cast<int>(i);
  // odometer over per-block permutations
  std::vector<std::vector<int>> arrangements = blocks_;
  std::function<bool(std::size_t)> walk = [&](std::size_t b) -> bool {
    if (b == arrangements.size()) return fn(sigma);
    std::vector<int>& arr = arrangements[b];
    std::sort(arr.begin(), arr.end());
    do {
      for (std::size_t k = 0; k < arr.size(); ++k)
        sigma[static_cast<std::size_t>(blocks_[b][k])] = arr[k];
      if (walk(b + 1)) return true;
    } while (std::next_permutation(arr.begin(), arr.end()));
    return false;
  };
  return walk(0);
}

namespace {

// greedy first trio of pairwise distinct points
std::array<std::size_t, 3> first_distinct_trio(const std::vector<Point1>& pts) {
  std::size_t i1 = 0;
  for (std::size_t i2 = i1 + 1; i2 < pts.size(); ++i2) {
    if (pts[i2] == pts[i1]) continue;
    for (std::size_t i3 = i2 + 1; i3 < pts.size(); ++i3)
      if (pts[i3] != pts[i1] && pts[i3] != pts[i2]) return {i1, i2, i3};
    break;
  }
  throw TooFewDistinctPoints("need three distinct points on the line");
}

void check_group_fits(const P1Config& cfg, const SymmetryGroup& sigma) {
  if (sigma.n() != cfg.size())
    throw Error("InvalidArgument", "symmetry group size does not match configuration");
  for (const auto& block : sigma.blocks())
    for (int i : block)
      if (cfg.weights()[static_cast<std::size_t>(i)] !=
          cfg.weights()[static_cast<std::size_t>(block[0])])
        throw WeightMismatch("symmetry blocks may only mix equal weights");
}

}  // namespace

bool moduli_equal(const P1Config& a, const P1Config& b, const SymmetryGroup& sigma) {
  if (a.weights() != b.weights()) throw WeightMismatch("configurations carry different weights");
  if (!(a.field() == b.field()))
    throw FieldMismatch("moduli comparison needs a common field");
  check_group_fits(a, sigma);
  auto trio = first_distinct_trio(a.points());
  first_distinct_trio(b.points());
  const auto& ap = a.points();
  const auto& bp = b.points();
  return sigma.for_each_permutation([&](const std::vector<int>& s) {
    std::array<Point1, 3> src = {ap[trio[0]], ap[trio[1]], ap[trio[2]]};
    std::array<Point1, 3> dst = {bp[static_cast<std::size_t>(s[trio[0]])],
                                 bp[static_cast<std::size_t>(s[trio[1]])],
                                 bp[static_cast<std::size_t>(s[trio[2]])]};
    if (dst[0] == dst[1] || dst[0] == dst[2] || dst[1] == dst[2]) return false;
    Map2 g = Map2::from_triples(src, dst);
    for (std::size_t i = 0; i < ap.size(); ++i)
      if (g.apply(ap[i]) != bp[static_cast<std::size_t>(s[i])]) return false;
    return true;
  });
}

std::string fingerprint(const P1Config& cfg, const SymmetryGroup& sigma) {
  check_group_fits(cfg, sigma);
  first_distinct_trio(cfg.points());
  const auto& pts = cfg.points();
  const FieldDescriptor& f = cfg.field();
  Point1 zero(Scalar::one(f), Scalar::zero(f));
  Point1 one(Scalar::one(f), Scalar::one(f));
  Point1 inf(Scalar::zero(f), Scalar::one(f));
  std::string best;
  sigma.for_each_permutation([&](const std::vector<int>& s) {
    std::vector<Point1> perm;
    perm.reserve(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
      perm.push_back(pts[static_cast<std::size_t>(s[i])]);
    auto trio = first_distinct_trio(perm);
    Map2 g = Map2::from_triples({perm[trio[0]], perm[trio[1]], perm[trio[2]]},
                                {zero, one, inf});
    std::string key = "w:" + cfg.weights().to_string();
    for (const Point1& p : perm) key += "|" + g.apply(p).canonical_key();
    if (best.empty() || key < best) best = key;
    return false;
  });
  return best;
}

}  // namespace p67
