#include "p67/forms.hpp"

#include "doctest.h"
#include "p67/rng.hpp"

using namespace p67;

namespace {

const FieldDescriptor Q = FieldDescriptor::rationals();

Scalar qi(long n) { return Scalar::of_int(Q, n); }

Point2 qpt(long x, long y, long z) {
  return Point2(qi(x), qi(y), qi(z));
}

TernaryForm form_of(const FieldDescriptor& f, std::initializer_list<std::array<long, 4>> terms) {
  TernaryForm out(f);
  for (const auto& t : terms)
    out.add_term(Scalar::of_int(f, t[0]), static_cast<int>(t[1]), static_cast<int>(t[2]),
                 static_cast<int>(t[3]));
  return out;
}

}  // namespace

TEST_CASE("form arithmetic and evaluation") {
  TernaryForm x = TernaryForm::monomial(qi(1), 1, 0, 0);
  TernaryForm y = TernaryForm::monomial(qi(1), 0, 1, 0);
  TernaryForm z = TernaryForm::monomial(qi(1), 0, 0, 1);

  TernaryForm l = TernaryForm::linear(qi(2), qi(-3), qi(5));
  CHECK(l == x * form_of(Q, {{2, 0, 0, 0}}) + y * form_of(Q, {{-3, 0, 0, 0}}) +
               z * form_of(Q, {{5, 0, 0, 0}}));
  CHECK(l.degree() == 1);
  CHECK(l.evaluate(qpt(1, 1, 1)) == qi(4));
  CHECK(l.evaluate(qpt(4, 1, -1)) == qi(0));

  TernaryForm p = (x + y) * (x - y);
  CHECK(p == form_of(Q, {{1, 2, 0, 0}, {-1, 0, 2, 0}}));
  CHECK(p.degree() == 2);

  // cancellation erases the term entirely
  TernaryForm cancel = p - p;
  CHECK(cancel.is_zero());
  CHECK(cancel.degree() == -1);

  // evaluation happens on the canonical representative, so only points
  // that are already canonical give predictable absolute values
  TernaryForm mixed = form_of(Q, {{1, 2, 0, 0}}) + form_of(Q, {{1, 0, 1, 1}});
  CHECK(mixed.degree() == 2);
  CHECK(mixed.evaluate(qpt(1, 2, 3)) == qi(7));
}

TEST_CASE("forms reject cross-field terms") {
  FieldDescriptor f = FieldDescriptor::prime(101);
  TernaryForm over_q(Q);
  over_q.add_term(qi(1), 1, 0, 0);
  CHECK_THROWS_AS(over_q.add_term(Scalar::of_int(f, 1), 0, 1, 0), FieldMismatch);
  TernaryForm over_f(f);
  over_f.add_term(Scalar::of_int(f, 1), 0, 1, 0);
  CHECK_THROWS_AS(over_q + over_f, FieldMismatch);
}

TEST_CASE("conic and form round trip") {
  // y^2 - xz both ways
  Scalar zero = Scalar::zero(Q);
  Conic c = Conic::from_coefficients({zero, qi(1), zero, zero, qi(-1), zero});
  TernaryForm f = TernaryForm::of_conic(c);
  CHECK(f.proportional_to(form_of(Q, {{1, 0, 2, 0}, {-1, 1, 0, 1}})));
  CHECK(f.to_conic() == c);

  // a full conic with every coefficient in play
  TernaryForm g = form_of(Q, {{1, 2, 0, 0}, {2, 0, 2, 0}, {3, 0, 0, 2},
                              {4, 1, 1, 0}, {5, 1, 0, 1}, {6, 0, 1, 1}});
  Conic gc = g.to_conic();
  CHECK(TernaryForm::of_conic(gc).proportional_to(g));

  SplitMix64 rng(21);
  for (int trial = 0; trial < 25; ++trial) {
    Point2 p = qpt(rng.range(-9, 9), rng.range(-9, 9), rng.range(1, 9));
    CHECK(g.evaluate(p).is_zero() == gc.contains(p));
  }

  CHECK_THROWS_AS(TernaryForm::linear(qi(1), qi(0), qi(0)).to_conic(), Error);
  CHECK_THROWS_AS(form_of(Q, {{1, 2, 0, 0}, {1, 1, 0, 0}}).to_conic(), Error);
  CHECK_THROWS_AS(TernaryForm(Q).to_conic(), Error);
}

TEST_CASE("proportionality") {
  TernaryForm f = form_of(Q, {{2, 1, 1, 0}, {-4, 0, 0, 2}});
  CHECK(f.proportional_to(form_of(Q, {{-1, 1, 1, 0}, {2, 0, 0, 2}})));
  CHECK(f.proportional_to(f));
  CHECK(!f.proportional_to(form_of(Q, {{2, 1, 1, 0}, {4, 0, 0, 2}})));
  CHECK(!f.proportional_to(form_of(Q, {{2, 1, 1, 0}})));
  CHECK(!f.proportional_to(TernaryForm(Q)));
  CHECK(!TernaryForm(Q).proportional_to(f));
}

TEST_CASE("monomial content stripping") {
  TernaryForm f = form_of(Q, {{3, 2, 1, 1}, {-5, 1, 3, 1}, {7, 1, 1, 2}});
  CHECK(f.without_monomial_content() ==
        form_of(Q, {{3, 1, 0, 0}, {-5, 0, 2, 0}, {7, 0, 0, 1}}));
  // already primitive forms come back unchanged
  TernaryForm g = form_of(Q, {{1, 1, 0, 0}, {1, 0, 1, 0}});
  CHECK(g.without_monomial_content() == g);
  // a single monomial strips to a constant
  CHECK(form_of(Q, {{6, 2, 3, 1}}).without_monomial_content() ==
        form_of(Q, {{6, 0, 0, 0}}));
  CHECK_THROWS_AS(TernaryForm(Q).without_monomial_content(), ZeroForm);
}

TEST_CASE("cremona substitution on raw forms") {
  // x <- yz, y <- xz, z <- xy term by term
  TernaryForm f = form_of(Q, {{1, 1, 0, 0}, {2, 0, 1, 0}, {3, 0, 0, 1}});
  CHECK(f.cremona_substituted() ==
        form_of(Q, {{1, 0, 1, 1}, {2, 1, 0, 1}, {3, 1, 1, 0}}));
  TernaryForm q = form_of(Q, {{1, 0, 2, 0}, {-1, 1, 0, 1}});
  CHECK(q.cremona_substituted() == form_of(Q, {{1, 2, 0, 2}, {-1, 1, 2, 1}}));
  // substitution is multiplicative
  SplitMix64 rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    TernaryForm a = TernaryForm::linear(qi(rng.range(-5, 5)), qi(rng.range(-5, 5)),
                                        qi(rng.range(1, 5)));
    TernaryForm b = TernaryForm::linear(qi(rng.range(-5, 5)), qi(rng.range(-5, 5)),
                                        qi(rng.range(1, 5)));
    CHECK((a * b).cremona_substituted() ==
          a.cremona_substituted() * b.cremona_substituted());
  }
}

TEST_CASE("form text rendering") {
  TernaryForm f = form_of(Q, {{1, 0, 2, 0}, {-1, 1, 0, 1}});
  std::string s = f.to_string();
  CHECK(s.find("y^2") != std::string::npos);
  CHECK(s.find("x") != std::string::npos);
  CHECK(TernaryForm(Q).to_string() == "0");
}
