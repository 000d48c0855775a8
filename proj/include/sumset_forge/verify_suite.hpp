#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sumset_forge/exact.hpp"
#include "sumset_forge/field.hpp"

namespace sumset_forge {

// Seeded randomized batches of inequality instances.
enum class Suite {
  Ruzsa,
  Plunnecke,
  CorDilates,
  CorProducts,
  Lemma12,
  PlunneckeWitness,
  Pigeonhole,
  Energy,
  AffineWitness,
};

std::string_view to_string(Suite suite);
/// "all" or a comma-separated list of suite names.
std::vector<Suite> parse_suites(std::string_view text);

struct SuiteRun {
  std::vector<IneqReport> reports;
  /// Replayable descriptions of instances with a failing report.
  std::vector<std::string> failures;
  std::uint64_t instances = 0;

  bool ok() const { return failures.empty(); }
};

/// Runs `trials` instances. Instance i draws from stream_seed(seed, suite ⊕ field, i),
/// so the output does not depend on `jobs`.
SuiteRun run_suite(Suite suite, const FieldPtr& ctx, std::uint64_t trials, std::uint64_t seed,
                   unsigned jobs = 1);

/// Replays a single instance of a suite.
SuiteRun run_instance(Suite suite, const FieldPtr& ctx, std::uint64_t seed, std::uint64_t index);

}  // namespace sumset_forge
