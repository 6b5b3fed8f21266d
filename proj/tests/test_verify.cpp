#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "era/verify.hpp"
#include "oracles.hpp"

using era::CheckResult;
using era::CheckStatus;
using era::PrimeIndexer;
using era::Ray;
using era::RayMatrix;
using era::Truncation;
using era::u64;

namespace {

const PrimeIndexer& idx() {
  static const PrimeIndexer i = PrimeIndexer::build(1'000'000, 1'000'000);
  return i;
}

Ray fake_ray(u64 seed, std::vector<u64> elements) {
  Ray r;
  r.seed = seed;
  r.elements = std::move(elements);
  r.truncation = Truncation::reached_limit;
  r.truncation_bound = 1'000'000;
  return r;
}

}  // namespace

TEST_CASE("partition holds for the first few primes") {
  const CheckResult r = era::verify_partition(idx(), 10);
  CHECK(r.status == CheckStatus::pass);
  CHECK(r.instances_tested == 4);  // primes 2, 3, 5, 7
  CHECK(r.failures.empty());
}

TEST_CASE("partition holds up to one hundred thousand") {
  const CheckResult r = era::verify_partition(idx(), 100'000);
  CHECK(r.status == CheckStatus::pass);
  CHECK(r.instances_tested == oracle::prime_count(100'000));
  CHECK(r.instances_tested == 9592);
}

TEST_CASE("corner entries descend to their reference coordinates") {
  const auto matrix = era::build_matrix(idx(), 4, 20'000);
  const auto& corner = era::reference_corner();
  for (std::size_t row = 0; row < corner.size(); ++row)
    for (std::size_t nu = 0; nu < corner[row].size(); ++nu) {
      const u64 value = corner[row][nu].value;
      if (value > 20'000) continue;  // beyond this corner
      const auto coord = matrix.coord_of(value);
      REQUIRE(coord.has_value());
      CHECK(coord->mu == row + 1);
      CHECK(coord->nu == nu);
    }
}

TEST_CASE("subset relations for sampled seeds") {
  const std::vector<u64> seeds = {2, 7, 13};
  const CheckResult r = era::verify_subset_relations(idx(), 10'000, seeds);
  CHECK(r.status == CheckStatus::pass);
  CHECK(r.instances_tested == 3);

  SUBCASE("empty sample is skipped, not passed") {
    const CheckResult s = era::verify_subset_relations(idx(), 10'000, {});
    CHECK(s.status == CheckStatus::skipped);
  }
  SUBCASE("seed above the limit is a parameter error") {
    const std::vector<u64> bad = {20'001};
    CHECK_THROWS_AS(era::verify_subset_relations(idx(), 20'000, bad),
                    era::Error);
  }
}

TEST_CASE("classification agrees with descent depth") {
  const CheckResult r = era::verify_classification(idx(), 10'000);
  CHECK(r.status == CheckStatus::pass);
  CHECK(r.instances_tested == 1229);
  CHECK(r.instances_tested == oracle::prime_count(10'000));
}

TEST_CASE("interval identities hold exhaustively on the corner") {
  const auto matrix = era::build_matrix(idx(), 4, 20'000);
  const CheckResult r = era::verify_interval_formulas(idx(), matrix);
  CHECK(r.status == CheckStatus::pass);

  // Instance bookkeeping: one per row (line 1), one per within-row pair
  // (line 2), one per cross-row pair (line 3).
  u64 expected = 0;
  std::vector<u64> prime_counts;
  for (const Ray& row : matrix.rows()) {
    const u64 n = row.elements.size() - 1;
    prime_counts.push_back(n);
    if (n >= 1) expected += 1;
    expected += n * (n - 1) / 2;
  }
  for (std::size_t a = 0; a < prime_counts.size(); ++a)
    for (std::size_t b = a + 1; b < prime_counts.size(); ++b)
      expected += prime_counts[a] * prime_counts[b];
  CHECK(r.instances_tested == expected);
  CHECK(expected == 280);
}

TEST_CASE("a corrupted corner is caught with a replayable counterexample") {
  // 19 is prime, so the matrix builds, but 19 != p_7 = 17.
  const RayMatrix bad({fake_ray(1, {1, 2, 3, 5, 11}),
                       fake_ray(4, {4, 7, 19})},
                      20'000);
  const CheckResult r = era::verify_interval_formulas(idx(), bad);
  CHECK(r.status == CheckStatus::fail);
  REQUIRE(!r.failures.empty());
  for (const era::Counterexample& ce : r.failures) {
    u64 a = 0, b = 0;
    for (const auto& [name, value] : ce.inputs) {
      if (name == "a") a = value;
      if (name == "b") b = value;
    }
    // Replaying the inputs through the checked operation reproduces the
    // recorded actual value.
    CHECK(idx().prime_count_interval(a, b) == ce.actual);
    CHECK(std::to_string(ce.actual) != ce.expected);
  }
}

TEST_CASE("same-row calls of the cross-row form match the within-row form") {
  const auto matrix = era::build_matrix(idx(), 10, 1'000'000);
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<std::size_t> pick_row(0, 9);
  int done = 0;
  while (done < 100) {
    const Ray& row = matrix.rows()[pick_row(rng)];
    const std::size_t n = row.elements.size();
    if (n < 3) continue;
    std::uniform_int_distribution<std::size_t> pick_col(1, n - 1);
    std::size_t v1 = pick_col(rng), v2 = pick_col(rng);
    if (v1 == v2) continue;
    if (v1 > v2) std::swap(v1, v2);
    const u64 within = row.elements[v2 - 1] - row.elements[v1 - 1] - 1;
    const u64 cross_form = row.elements[v2 - 1] > row.elements[v1 - 1]
                               ? row.elements[v2 - 1] - row.elements[v1 - 1] - 1
                               : row.elements[v1 - 1] - row.elements[v2 - 1] - 1;
    CHECK(idx().prime_count_interval(row.elements[v1], row.elements[v2]) ==
          within);
    CHECK(within == cross_form);
    ++done;
  }
}

TEST_CASE("gap growth passes on the corner and the ray at 2") {
  const auto matrix = era::build_matrix(idx(), 4, 20'000);
  const std::vector<Ray> extras = {era::extend_ray(idx(), 2, 20'000)};
  const CheckResult r = era::verify_gap_growth(matrix, extras);
  CHECK(r.status == CheckStatus::pass);
  CHECK(r.failures.empty());
  CHECK(r.instances_tested > 0);
}

TEST_CASE("row three differences increase strictly") {
  const auto matrix = era::build_matrix(idx(), 3, 10'000);
  const auto& e = matrix.rows()[2].elements;  // 6 13 41 179 1063 8527
  std::vector<u64> diffs;
  for (std::size_t k = 0; k + 1 < e.size(); ++k)
    diffs.push_back(e[k + 1] - e[k]);
  CHECK(diffs == std::vector<u64>{7, 28, 138, 884, 7464});
  for (std::size_t k = 0; k + 1 < diffs.size(); ++k)
    CHECK(diffs[k] < diffs[k + 1]);
}

TEST_CASE("gap failures are reported with replayable values") {
  // Gaps 2, 2, 4: the first pair also undershoots 9(ln 9 - 1).
  const RayMatrix bad({fake_ray(9, {9, 11, 13, 17})}, 100);
  const CheckResult r = era::verify_gap_growth(bad);
  CHECK(r.status == CheckStatus::fail);
  REQUIRE(r.failures.size() >= 2);
  for (const era::Counterexample& ce : r.failures) {
    u64 p_k = 0, p_k1 = 0;
    for (const auto& [name, value] : ce.inputs) {
      if (name == "p_k") p_k = value;
      if (name == "p_k1") p_k1 = value;
    }
    if (p_k1) CHECK(p_k1 - p_k == ce.actual);  // threshold-type failure
  }
}

TEST_CASE("run_all aggregates five checks in fixed order") {
  era::VerifyConfig cfg;
  cfg.partition_limit = 100'000;
  cfg.classification_limit = 10'000;
  cfg.num_rows = 4;
  cfg.element_limit = 100'000;
  const auto report = era::run_all(idx(), cfg);

  REQUIRE(report.results.size() == 5);
  CHECK(report.results[0].check_id == "partition");
  CHECK(report.results[1].check_id == "subset-relations");
  CHECK(report.results[2].check_id == "classification");
  CHECK(report.results[3].check_id == "interval-formulas");
  CHECK(report.results[4].check_id == "gap-growth");
  for (const CheckResult& r : report.results)
    CHECK(r.status == CheckStatus::pass);
  CHECK(report.all_passed(true));

  // The corner stores 52711 at (1, 9) where the reference table printed
  // 52771; exactly that one mismatch must be reported.
  REQUIRE(report.data_discrepancies.size() == 1);
  const auto& d = report.data_discrepancies[0];
  CHECK(d.paper_value == 52771);
  CHECK(d.computed_value == 52711);
  CHECK(d.mu == 1);
  CHECK(d.nu == 9);
}

TEST_CASE("short corners cannot reach the flagged entry") {
  era::VerifyConfig cfg;
  cfg.partition_limit = 1000;
  cfg.classification_limit = 1000;
  cfg.num_rows = 4;
  cfg.element_limit = 20'000;
  const auto report = era::run_all(idx(), cfg);
  CHECK(report.data_discrepancies.empty());
  CHECK(report.results[0].instances_tested == oracle::prime_count(1000));
}

TEST_CASE("gap failures gate the report only in strict mode") {
  era::VerificationReport report;
  era::CheckResult gap;
  gap.check_id = "gap-growth";
  gap.status = CheckStatus::fail;
  report.results.push_back(gap);
  CHECK(report.all_passed(false));
  CHECK_FALSE(report.all_passed(true));

  era::CheckResult partition;
  partition.check_id = "partition";
  partition.status = CheckStatus::fail;
  report.results.push_back(partition);
  CHECK_FALSE(report.all_passed(false));
}

TEST_CASE("the bundled reference corner has the expected shape") {
  const auto& corner = era::reference_corner();
  REQUIRE(corner.size() == 4);
  CHECK(corner[0].front().value == 1);
  CHECK(corner[0].back().value == 52771);
  CHECK(corner[0].back().oracle_checked);
  CHECK(corner[1].back().value == 15299);
  CHECK(corner[1].back().oracle_checked);
  CHECK(corner[2].back().value == 8527);
  CHECK_FALSE(corner[2].back().oracle_checked);
  CHECK(corner[3].back().value == 19577);
}
