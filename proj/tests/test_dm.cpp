#include "p67/dm.hpp"

#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "p67/rng.hpp"

using namespace p67;

namespace {

const FieldDescriptor Q = FieldDescriptor::rationals();

Point1 p1of(const FieldDescriptor& f, long a, long b) {
  return Point1(Scalar::of_int(f, a), Scalar::of_int(f, b));
}

// affine value v as [1, v]; infinity as [0, 1]
Point1 av(const FieldDescriptor& f, long v) { return p1of(f, 1, v); }
Point1 inf(const FieldDescriptor& f) { return p1of(f, 0, 1); }

WeightVector wv(std::initializer_list<int> ws) { return WeightVector(std::vector<int>(ws)); }

P1Config six_twos(const FieldDescriptor& f, std::array<long, 6> vals) {
  std::vector<Point1> pts;
  for (long v : vals) pts.push_back(av(f, v));
  return P1Config(std::move(pts), wv({2, 2, 2, 2, 2, 2}));
}

// integer partitions of total into m parts, each bounded, descending
void partitions_into(int total, int m, int bound, std::vector<int>& acc,
                     std::set<std::vector<int>>& out) {
  if (m == 0) {
    if (total == 0) out.insert(acc);
    return;
  }
  int hi = std::min(bound, total - (m - 1));
  for (int part = hi; part >= 1; --part) {
    acc.push_back(part);
    partitions_into(total - part, m - 1, part, acc, out);
    acc.pop_back();
  }
}

Map2 random_moebius(SplitMix64& g, const FieldDescriptor& f) {
  for (;;) {
    long a = g.range(-100, 100), b = g.range(-100, 100), c = g.range(-100, 100);
    if (a == b || b == c || a == c) continue;
    return Map2::from_triples({av(f, 0), av(f, 1), inf(f)}, {av(f, a), av(f, b), av(f, c)});
  }
}

}  // namespace

TEST_CASE("weight vector parsing and printing") {
  WeightVector compact = WeightVector::parse("2^5,1^2");
  WeightVector spelled = WeightVector::parse("2,2,2,2,2,1,1");
  CHECK(compact == spelled);
  CHECK(compact == wv({2, 2, 2, 2, 2, 1, 1}));
  CHECK(compact.total() == 12);
  CHECK(compact.size() == 7);
  CHECK(compact.to_string() == "2^5,1^2");
  CHECK(WeightVector::parse("5,2,1^5").to_string() == "5,2,1^5");
  CHECK(WeightVector::parse(" 3 ^ 2 , 4 ") == wv({3, 3, 4}));
  CHECK(wv({1, 2, 2, 1}).to_string() == "1,2^2,1");
  CHECK(wv({3, 1, 2}).sorted_descending() == wv({3, 2, 1}));
  CHECK(wv({1, 12}).total() == 13);

  CHECK_THROWS_AS(WeightVector::parse(""), ParseError);
  CHECK_THROWS_AS(WeightVector::parse("0"), ParseError);
  CHECK_THROWS_AS(WeightVector::parse("2^0"), ParseError);
  CHECK_THROWS_AS(WeightVector::parse("2^"), ParseError);
  CHECK_THROWS_AS(WeightVector::parse("2,,1"), ParseError);
  CHECK_THROWS_AS(WeightVector::parse("x"), ParseError);
  CHECK_THROWS_AS(WeightVector::parse("2,"), ParseError);
  CHECK_THROWS_AS(WeightVector(std::vector<int>{}), Error);
  CHECK_THROWS_AS(wv({2, 0}), Error);
}

TEST_CASE("configuration construction guards") {
  std::vector<Point1> pts = {av(Q, 0), av(Q, 1)};
  CHECK_THROWS_AS(P1Config(pts, wv({1, 1, 1})), WeightMismatch);
  FieldDescriptor f = FieldDescriptor::prime(101);
  std::vector<Point1> mixed = {av(Q, 0), av(f, 1)};
  CHECK_THROWS_AS(P1Config(mixed, wv({1, 1})), FieldMismatch);
}

TEST_CASE("stability thresholds for six double points") {
  CHECK(stability(six_twos(Q, {0, 1, 2, 3, 4, 5})) == Stability::Stable);
  CHECK(stability(six_twos(Q, {0, 0, 2, 3, 4, 5})) == Stability::Stable);
  CHECK(stability(six_twos(Q, {0, 0, 0, 3, 4, 5})) == Stability::StrictlySemistable);
  CHECK(stability(six_twos(Q, {0, 0, 0, 0, 4, 5})) == Stability::Unstable);
  CHECK(to_string(Stability::Stable) == "Stable");
  CHECK(to_string(Stability::StrictlySemistable) == "StrictlySemistable");
  CHECK(to_string(Stability::Unstable) == "Unstable");
}

TEST_CASE("stability is a moduli invariant") {
  FieldDescriptor f = FieldDescriptor::prime(10007);
  SplitMix64 g(31);
  for (int trial = 0; trial < 30; ++trial) {
    std::array<long, 6> vals;
    for (auto& v : vals) v = g.range(0, 5);
    P1Config cfg = six_twos(f, vals);
    Stability s = stability(cfg);

    Map2 m = random_moebius(g, f);
    std::vector<Point1> moved;
    for (const Point1& p : cfg.points()) moved.push_back(m.apply(p));
    CHECK(stability(P1Config(moved, cfg.weights())) == s);

    std::array<long, 6> shuffled = vals;
    for (int i = 5; i > 0; --i)
      std::swap(shuffled[static_cast<std::size_t>(i)],
                shuffled[static_cast<std::size_t>(g.range(0, i))]);
    CHECK(stability(six_twos(f, shuffled)) == s);
  }
}

TEST_CASE("collision strata of seven weighted points") {
  WeightVector mu = WeightVector::parse("2^5,1^2");
  std::vector<Point1> pts = {av(Q, 0), av(Q, 1), av(Q, 2), av(Q, 3),
                             av(Q, 4), av(Q, 5), av(Q, 6)};
  Stratum all_distinct = collision_stratum(P1Config(pts, mu));
  CHECK(all_distinct.partition.size() == 7);
  CHECK(all_distinct.merged == std::vector<int>{2, 2, 2, 2, 2, 1, 1});

  // first weight-1 point dropped onto the first double point
  pts[5] = pts[0];
  Stratum one_merge = collision_stratum(P1Config(pts, mu));
  CHECK(one_merge.merged == std::vector<int>{3, 2, 2, 2, 2, 1});
  CHECK(one_merge.partition[0] == std::vector<int>{0, 5});

  // and the second one onto the second
  pts[6] = pts[1];
  Stratum two_merges = collision_stratum(P1Config(pts, mu));
  CHECK(two_merges.merged == std::vector<int>{3, 3, 2, 2, 2});
}

TEST_CASE("descendants of twelve unit weights") {
  std::vector<WeightVector> desc = descendants(WeightVector::parse("1^12"), 7);
  CHECK(desc.size() == 6);

  std::set<std::vector<int>> got;
  for (const auto& d : desc) got.insert(d.weights());
  CHECK(got.count({2, 2, 2, 2, 2, 1, 1}) == 1);
  CHECK(got.count({3, 2, 2, 2, 1, 1, 1}) == 1);
  CHECK(got.count({5, 2, 1, 1, 1, 1, 1}) == 1);
  CHECK(got.count({4, 3, 1, 1, 1, 1, 1}) == 1);
  CHECK(got.count({4, 2, 2, 1, 1, 1, 1}) == 1);
  CHECK(got.count({3, 3, 2, 1, 1, 1, 1}) == 1);

  // independent oracle: with unit weights every class pattern is a plain
  // integer partition, stability capping parts strictly below half of 12
  std::set<std::vector<int>> expected;
  std::vector<int> acc;
  partitions_into(12, 7, 5, acc, expected);
  CHECK(got == expected);
}

TEST_CASE("descendants in small cases") {
  CHECK(descendants(WeightVector::parse("1^12"), 12) ==
        std::vector<WeightVector>{WeightVector::parse("1^12")});
  CHECK(descendants(wv({1, 1, 1, 1}), 3).empty());
  CHECK(descendants(wv({1, 1, 1, 1}), 4) == std::vector<WeightVector>{wv({1, 1, 1, 1})});
  CHECK(descendants(WeightVector::parse("2^6"), 5) ==
        std::vector<WeightVector>{wv({4, 2, 2, 2, 2})});
  CHECK(descendants(WeightVector::parse("2^6"), 4) == std::vector<WeightVector>{wv({4, 4, 2, 2})});
  CHECK(descendants(WeightVector::parse("2^6"), 6) ==
        std::vector<WeightVector>{WeightVector::parse("2^6")});
  CHECK(descendants(wv({1, 1, 1}), 5).empty());
  CHECK_THROWS_AS(descendants(wv({1, 1, 1}), 2), Error);
}

TEST_CASE("ball dimensions") {
  CHECK(ball_dimension(WeightVector::parse("2^5,1^2")) == 4);
  CHECK(ball_dimension(WeightVector::parse("2^6")) == 3);
  CHECK(ball_dimension(WeightVector::parse("1^12")) == 9);
  CHECK_THROWS_AS(ball_dimension(wv({6, 6})), Error);
}

TEST_CASE("symmetry groups from weights") {
  SymmetryGroup s = SymmetryGroup::for_weights(WeightVector::parse("2^5,1^2"));
  CHECK(s.n() == 7);
  CHECK(s.blocks().size() == 2);
  int count = 0;
  s.for_each_permutation([&](const std::vector<int>&) {
    ++count;
    return false;
  });
  CHECK(count == 240);

  SymmetryGroup t = SymmetryGroup::trivial(4);
  count = 0;
  t.for_each_permutation([&](const std::vector<int>& sigma) {
    ++count;
    for (int i = 0; i < 4; ++i) CHECK(sigma[static_cast<std::size_t>(i)] == i);
    return false;
  });
  CHECK(count == 1);

  // non-contiguous equal weights end up in one block
  SymmetryGroup u = SymmetryGroup::for_weights(wv({2, 1, 2}));
  CHECK(u.blocks() == std::vector<std::vector<int>>{{0, 2}});
}

TEST_CASE("moduli equality on the line") {
  WeightVector mu = wv({1, 1, 1, 1});
  SymmetryGroup triv = SymmetryGroup::trivial(4);
  P1Config a({av(Q, 0), av(Q, 1), inf(Q), av(Q, 5)}, mu);
  P1Config shifted({av(Q, 1), av(Q, 2), inf(Q), av(Q, 6)}, mu);
  P1Config other({av(Q, 0), av(Q, 1), inf(Q), av(Q, 6)}, mu);
  CHECK(moduli_equal(a, shifted, triv));
  CHECK(!moduli_equal(a, other, triv));

  // a transposition of two labels is only visible to a group containing it
  WeightVector mu5 = wv({1, 2, 3, 4, 4});
  P1Config c({av(Q, 0), av(Q, 1), inf(Q), av(Q, 2), av(Q, 3)}, mu5);
  P1Config d({av(Q, 0), av(Q, 1), inf(Q), av(Q, 3), av(Q, 2)}, mu5);
  CHECK(!moduli_equal(c, d, SymmetryGroup::trivial(5)));
  CHECK(moduli_equal(c, d, SymmetryGroup::for_weights(mu5)));

  CHECK_THROWS_AS(moduli_equal(a, P1Config({av(Q, 0), av(Q, 1), inf(Q), av(Q, 5)}, wv({1, 1, 1, 2})),
                               triv),
                  WeightMismatch);
  P1Config thin({av(Q, 0), av(Q, 0), av(Q, 0), av(Q, 1)}, mu);
  CHECK_THROWS_AS(moduli_equal(thin, a, triv), TooFewDistinctPoints);
}

TEST_CASE("moduli equality is an equivalence on random configurations") {
  FieldDescriptor f = FieldDescriptor::prime(10007);
  WeightVector mu = wv({2, 2, 2, 1, 1});
  SymmetryGroup sym = SymmetryGroup::for_weights(mu);
  SplitMix64 g(32);

  auto random_cfg = [&] {
    std::vector<Point1> pts;
    while (pts.size() < 5) {
      Point1 p = av(f, g.range(0, 10006));
      bool fresh = true;
      for (const Point1& q : pts) fresh &= !(q == p);
      if (fresh) pts.push_back(p);
    }
    return P1Config(std::move(pts), mu);
  };

  for (int trial = 0; trial < 15; ++trial) {
    P1Config x = random_cfg();
    CHECK(moduli_equal(x, x, sym));

    // push x through a random Moebius map and a random in-group relabeling
    Map2 m = random_moebius(g, f);
    std::vector<int> sigma = {0, 1, 2, 3, 4};
    std::swap(sigma[0], sigma[static_cast<std::size_t>(g.range(0, 2))]);
    if (g.range(0, 1) == 1) std::swap(sigma[3], sigma[4]);
    std::vector<Point1> moved(5, x.points()[0]);
    for (std::size_t i = 0; i < 5; ++i)
      moved[static_cast<std::size_t>(sigma[i])] = m.apply(x.points()[i]);
    P1Config y(moved, mu);
    CHECK(moduli_equal(x, y, sym));
    CHECK(moduli_equal(y, x, sym));

    P1Config z = random_cfg();
    CHECK(moduli_equal(x, z, sym) == moduli_equal(z, x, sym));
  }
}

TEST_CASE("fingerprints respect moduli classes") {
  FieldDescriptor f = FieldDescriptor::prime(10007);
  WeightVector mu = wv({2, 2, 2, 1, 1});
  SymmetryGroup sym = SymmetryGroup::for_weights(mu);
  SplitMix64 g(33);

  auto random_cfg = [&] {
    std::vector<Point1> pts;
    while (pts.size() < 5) {
      Point1 p = av(f, g.range(0, 40));
      bool fresh = true;
      for (const Point1& q : pts) fresh &= !(q == p);
      if (fresh) pts.push_back(p);
    }
    return P1Config(std::move(pts), mu);
  };

  P1Config base = random_cfg();
  CHECK(fingerprint(base, sym) == fingerprint(base, sym));

  int equal_pairs = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    P1Config x = random_cfg();
    P1Config y = random_cfg();
    if (g.range(0, 1) == 1) {
      // make the pair moduli-equal on purpose
      Map2 m = random_moebius(g, f);
      std::vector<Point1> moved;
      for (const Point1& p : x.points()) moved.push_back(m.apply(p));
      y = P1Config(moved, mu);
    }
    bool same_moduli = moduli_equal(x, y, sym);
    if (same_moduli) {
      ++equal_pairs;
      CHECK(fingerprint(x, sym) == fingerprint(y, sym));
    }
  }
  CHECK(equal_pairs > 300);

  // distinct moduli separate (canonical form, not just a hash)
  P1Config c1({av(Q, 0), av(Q, 1), inf(Q), av(Q, 5)}, wv({1, 1, 1, 1}));
  P1Config c2({av(Q, 0), av(Q, 1), inf(Q), av(Q, 6)}, wv({1, 1, 1, 1}));
  SymmetryGroup triv = SymmetryGroup::trivial(4);
  CHECK(fingerprint(c1, triv) != fingerprint(c2, triv));
  P1Config shifted({av(Q, 1), av(Q, 2), inf(Q), av(Q, 6)}, wv({1, 1, 1, 1}));
  CHECK(fingerprint(c1, triv) == fingerprint(shifted, triv));

  P1Config thin({av(Q, 0), av(Q, 0), av(Q, 0), av(Q, 1)}, wv({1, 1, 1, 1}));
  CHECK_THROWS_AS(fingerprint(thin, triv), TooFewDistinctPoints);
}
