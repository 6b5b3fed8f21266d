#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "era/rays.hpp"

namespace era {

/// One failing instance of a check, with enough inputs to replay it.
/// `actual` is always the numeric value the check observed; replaying the
/// named inputs through the checked operation reproduces it.
struct Counterexample {
  std::vector<std::pair<std::string, u64>> inputs;
  std::string expected;
  u64 actual = 0;
};

enum class CheckStatus { pass, fail, skipped };

struct CheckResult {
  std::string check_id;
  u64 instances_tested = 0;
  std::vector<Counterexample> failures;
  CheckStatus status = CheckStatus::skipped;
  std::string skip_reason;
};

/// A place where the computed matrix disagrees with the bundled reference
/// corner. Reported, never silently patched: the computed value wins.
struct Discrepancy {
  u64 paper_value = 0;
  u64 computed_value = 0;
  u64 mu = 0;
  u64 nu = 0;
};

struct VerifyConfig {
  u64 partition_limit = 1'000'000;
  u64 classification_limit = 10'000;
  u64 num_rows = 10;
  u64 element_limit = 1'000'000;
  std::vector<u64> subset_seeds = {2, 7, 13};
};

struct VerificationReport {
  u64 sieve_bound = 0;
  u64 count_bound = 0;
  u64 num_rows = 0;
  u64 element_limit = 0;
  std::vector<CheckResult> results;
  std::vector<Discrepancy> data_discrepancies;

  bool all_passed(bool strict_gap) const;
};

/// Reference corner values bundled for regression. Entries flagged
/// oracle_checked are re-derived from the indexer and differences are
/// reported as discrepancies instead of being trusted.
struct CornerEntry {
  u64 value;
  bool oracle_checked;
};
const std::array<std::vector<CornerEntry>, 4>& reference_corner();

/// Every prime <= limit descends to a non-prime seed, each (seed, depth)
/// slot is hit once, and the primes collected from all non-prime-seeded
/// rays up to limit are exactly the sieve's primes (no duplicates, no
/// orphans). Requires limit <= sieve_bound.
CheckResult verify_partition(const PrimeIndexer& idx, u64 limit);

/// For each sample seed q, the ray seeded at q is the tail of its home
/// (non-prime-seeded) ray starting at q, so its prime elements all lie in
/// the non-prime-seeded union.
CheckResult verify_subset_relations(const PrimeIndexer& idx, u64 limit,
                                    std::span<const u64> sample_seeds);

/// classify(p) says first_column exactly when descend(p) has depth 1, for
/// every prime p <= limit. Requires limit <= sieve_bound.
CheckResult verify_classification(const PrimeIndexer& idx, u64 limit);

/// All three interval identities over the stored corner, exhaustively:
///   line 1  count(p_{mu,1}, 0)            = p_{mu,0} - 1
///   line 2  count(p_{mu,v1}, p_{mu,v2})   = p_{mu,v2-1} - p_{mu,v1-1} - 1
///   line 3  count(p_{m1,v1}, p_{m2,v2})   = |p_{m1,v1-1} - p_{m2,v2-1}| - 1
/// Counts are cross-checked by a direct sieve scan wherever endpoints are
/// within sieve_bound.
CheckResult verify_interval_formulas(const PrimeIndexer& idx,
                                     const RayMatrix& matrix);

/// Per row: every adjacent gap beats p_k(ln p_k - 1), and gaps strictly
/// increase along the row. Pairs whose lower element is below 2 are
/// excluded (only row 1's leading 1 is affected). extra_rays lets the
/// caller fold in rays beyond the matrix, e.g. the prime-seeded ray at 2.
CheckResult verify_gap_growth(const RayMatrix& matrix,
                              std::span<const Ray> extra_rays = {});

/// Runs every check in fixed order and compares the computed corner
/// against reference_corner(), logging mismatches as data discrepancies.
VerificationReport run_all(const PrimeIndexer& idx, const VerifyConfig& config);

}  // namespace era
