// Acceptance gate: one pass/fail line per criterion, nonzero exit on any
// failure. argv[1] is the path to the command-line binary (used by the
// determinism criterion); without it that criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "p67/bridge.hpp"
#include "p67/cremona.hpp"
#include "p67/dm.hpp"
#include "p67/errors.hpp"
#include "p67/forms.hpp"
#include "p67/projective.hpp"
#include "p67/suites.hpp"

using namespace p67;

namespace {

int failures = 0;

void criterion(const char* name, double limit_seconds,
               const std::function<std::string()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  std::string problem;
  try {
    problem = body();
  } catch (const std::exception& e) {
    problem = std::string("exception: ") + e.what();
  }
  double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (problem.empty() && limit_seconds > 0 && elapsed > limit_seconds) {
    std::ostringstream s;
    s << "took " << elapsed << "s, limit " << limit_seconds << "s";
    problem = s.str();
  }
  if (problem.empty()) {
    std::printf("[PASS] %-24s (%.2fs)\n", name, elapsed);
  } else {
    std::printf("[FAIL] %-24s (%.2fs) %s\n", name, elapsed, problem.c_str());
    ++failures;
  }
  std::fflush(stdout);
}

const FieldDescriptor Q = FieldDescriptor::rationals();

Point2 qpt(long a, long b, long c) {
  return Point2(Scalar::of_int(Q, a), Scalar::of_int(Q, b), Scalar::of_int(Q, c));
}

std::string run_report(Report r) {
  if (r.failed == 0) return "";
  std::ostringstream s;
  s << r.failed << " of " << (r.passed + r.failed) << " assertions failed (first: "
    << r.failures[0].assertion << ", trial " << r.failures[0].trial << ")";
  return s.str();
}

std::string read_all(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";

  criterion("descendant-count", 1.0, [] {
    std::vector<WeightVector> d = descendants(WeightVector::parse("1^12"), 7);
    if (d.size() != 6) return "expected 6 descendants, got " + std::to_string(d.size());
    auto has = [&](const char* text) {
      WeightVector t = WeightVector::parse(text).sorted_descending();
      for (const WeightVector& w : d)
        if (w.sorted_descending() == t) return true;
      return false;
    };
    if (!has("2^5,1^2")) return std::string("missing 2^5,1^2");
    if (!has("3,2^3,1^3")) return std::string("missing 3,2^3,1^3");
    return std::string();
  });

  criterion("boundary-census", 1.0, [] {
    const BoundaryCensus& c = boundary_divisors();
    if (c.divisors.size() != 36)
      return "expected 36 divisors, got " + std::to_string(c.divisors.size());
    int counts[4] = {0, 0, 0, 0};
    for (const DivisorLabel& d : c.divisors) ++counts[static_cast<int>(d.family)];
    if (counts[0] != 1 || counts[1] != 10 || counts[2] != 10 || counts[3] != 15)
      return std::string("family split is not 1/10/10/15");
    auto orbits_of = [&](DivisorLabel::Family fam) {
      std::vector<int> seen;
      for (std::size_t i = 0; i < 36; ++i)
        if (c.divisors[i].family == fam &&
            std::find(seen.begin(), seen.end(), c.orbit_of[i]) == seen.end())
          seen.push_back(c.orbit_of[i]);
      return seen.size();
    };
    if (orbits_of(DivisorLabel::Family::B) != 1) return std::string("B is not one orbit");
    if (orbits_of(DivisorLabel::Family::C) != 1) return std::string("C is not one orbit");
    return std::string();
  });

  criterion("cremona-identities", 1.0, [] {
    Scalar one = Scalar::one(Q);
    TernaryForm line = TernaryForm::linear(one, one, one);
    TernaryForm sym = TernaryForm::monomial(one, 1, 1, 0) +
                      TernaryForm::monomial(one, 1, 0, 1) + TernaryForm::monomial(one, 0, 1, 1);
    if (!(std_cremona_form_image(line) == sym))
      return std::string("x+y+z does not map to yz+xz+xy");
    TernaryForm ver =
        TernaryForm::monomial(one, 0, 2, 0) - TernaryForm::monomial(one, 1, 0, 1);
    TernaryForm img = std_cremona_form_image(ver);
    if (!(img == ver || img == TernaryForm(Q) - ver))
      return std::string("y^2-xz does not map to itself up to sign");
    return std::string();
  });

  criterion("tangency-normal-form", 1.0, [] {
    Scalar z = Scalar::zero(Q), o = Scalar::one(Q);
    Conic c = Conic::from_coefficients({z, o, z, z, Scalar::of_int(Q, -1), z});
    auto [p, q] = tangent_points(c, Point2(z, o, z));
    Point2 e1(o, z, z), e3(z, z, o);
    if (!((p == e1 && q == e3) || (p == e3 && q == e1)))
      return "got " + p.canonical_key() + " and " + q.canonical_key();
    return std::string();
  });

  criterion("fiber-suite", 30.0, [] {
    TrialPlan plan;
    plan.suite = "fiber";
    plan.trials = 200;
    return run_report(run_suite(plan));
  });

  criterion("swap-word-suite", 60.0, [] {
    TrialPlan plan;
    plan.suite = "swap-word";
    plan.trials = 20;  // every trial covers all 32 swap sets
    return run_report(run_suite(plan));
  });

  criterion("equivariance-suite", 10.0, [] {
    TrialPlan plan;
    plan.suite = "phi-equivariance";
    plan.trials = 200;
    return run_report(run_suite(plan));
  });

  criterion("identification-suite", 30.0, [] {
    TrialPlan plan;
    plan.suite = "identification";
    plan.trials = 100;  // every trial checks one image and one equivalent pair
    return run_report(run_suite(plan));
  });

  criterion("stability-thresholds", 1.0, [] {
    Scalar zero = Scalar::zero(Q), one = Scalar::one(Q);
    std::vector<Point1> pts;
    for (long k = 0; k < 5; ++k) pts.emplace_back(one, Scalar::of_int(Q, k));
    pts.emplace_back(zero, one);
    WeightVector w2(std::vector<int>(6, 2));
    if (stability(P1Config(pts, w2)) != Stability::Stable)
      return std::string("six distinct points are not Stable");
    std::vector<Point1> pair = pts;
    pair[1] = pair[0];
    if (stability(P1Config(pair, w2)) != Stability::Stable)
      return std::string("one collision is not Stable");
    std::vector<Point1> triple = pair;
    triple[2] = triple[0];
    if (stability(P1Config(triple, w2)) != Stability::StrictlySemistable)
      return std::string("a triple collision is not StrictlySemistable");
    return std::string();
  });

  criterion("degenerate-limit-witness", 1.0, [] {
    PlaneConfig witness(LabeledSix{qpt(1, 1, 0), qpt(1, 2, 1), qpt(1, 0, 0), qpt(0, 1, 0),
                                   qpt(0, 0, 1), qpt(2, 3, 1)});
    DegenerateLimitReport rep = degenerate_limit_check_I(witness);
    if (rep.merged != std::vector<int>{4, 2, 2, 2, 2})
      return std::string("merged stratum is not (4,2,2,2,2)");
    if (!rep.doubled_class_is_opposite_vertex)
      return std::string("doubled class misses the opposite vertex");
    if (!rep.classes_on_conic) return std::string("image classes left the conic");
    return std::string();
  });

  criterion("cli-determinism", 300.0, [&cli] {
    if (cli.empty()) return std::string("no CLI path given (argv[1])");
    std::string base = "acceptance_report_";
    for (int run = 1; run <= 2; ++run) {
      std::string cmd = "\"" + cli + "\" verify --suite all --trials 200 --seed 42 --out " +
                        base + std::to_string(run) + ".json";
      int rc = std::system(cmd.c_str());
      if (rc != 0) return "verify run " + std::to_string(run) + " exited nonzero";
    }
    std::string a = read_all(base + "1.json"), b = read_all(base + "2.json");
    if (a.empty()) return std::string("empty report");
    if (a != b) return std::string("reports differ between runs");
    return std::string();
  });

  std::printf("%d/11 criteria passed\n", 11 - failures);
  return failures;
}
