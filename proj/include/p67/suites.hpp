#ifndef P67_SUITES_HPP
#define P67_SUITES_HPP

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "p67/bridge.hpp"
#include "p67/field.hpp"

namespace p67 {

inline constexpr const char* kToolVersion = "0.1.0";

// One of the 36 boundary divisors of the compactified moduli space:
// A (all six points on a conic), B(i,j) (labels i, j collinear with 6),
// C(i,j,k) (a collinear triple inside 1..5), D(i,j) (labels i, j collide).
struct DivisorLabel {
  enum class Family { A, B, C, D };
  Family family = Family::A;
  std::vector<int> indices;  // sorted ascending; sizes 0, 2, 3, 2

  std::string to_string() const;
  bool operator==(const DivisorLabel& o) const {
    return family == o.family && indices == o.indices;
  }
  bool operator!=(const DivisorLabel& o) const { return !(*this == o); }
};

// The census in canonical order (A, then B, C, D each in lexicographic index
// order) together with the partition into orbits of the label action of S5
// (label 6 stays put). Orbit ids run 0, 1, ... in first-appearance order.
struct BoundaryCensus {
  std::vector<DivisorLabel> divisors;
  std::vector<int> orbit_of;

  int orbit_count() const;
  std::vector<int> orbit_sizes() const;
};

// Computed by closing the 36 labels under all 120 permutations, not copied
// from the expected answer. Counts: 1 + 10 + 10 + 15; five orbits.
const BoundaryCensus& boundary_divisors();

// Rejection-samples six points until classify says GenericSmooth, drawing
// coordinates from the documented splitmix64 stream seeded with `seed`.
// Rational coordinates are integers in [-10^4, 10^4]; prime-field
// coordinates are uniform residues. ExhaustedRetries after 10,000 rejected
// draws (tiny fields).
PlaneConfig random_generic_config(std::uint64_t seed, const FieldDescriptor& f);

struct TrialPlan {
  std::string suite;
  int trials = 200;
  std::uint64_t seed = 42;
  FieldDescriptor field = FieldDescriptor::prime(2147483647);
};

struct FailureRecord {
  int trial = 0;
  std::string assertion;
  nlohmann::ordered_json input;
};

// Assertion-level tally: passed + failed = assertions evaluated, and the
// failures list has exactly `failed` entries. `indeterminate` counts
// outcomes the best-effort divisor-action suite could not decide (it is -1,
// and absent from the JSON, for suites without that notion).
struct Report {
  std::string suite;
  std::uint64_t seed = 0;
  int trials = 0;
  long long passed = 0;
  long long failed = 0;
  long long indeterminate = -1;
  std::vector<FailureRecord> failures;
  std::string version = kToolVersion;
};

nlohmann::ordered_json report_json(const Report& r);

// The individual suites, in the order "all" runs them.
const std::vector<std::string>& suite_names();

// Runs plan.trials independent trials with per-trial seeds
// trial_seed(plan.seed, index); results aggregate in trial-index order, so
// reports are byte-stable for a fixed plan. UnknownSuite for bad names.
Report run_suite(const TrialPlan& plan);

}  // namespace p67

#endif  // P67_SUITES_HPP
