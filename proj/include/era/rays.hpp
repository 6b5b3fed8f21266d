#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "era/primecore.hpp"

namespace era {

/// Why a ray stopped growing. Rays are infinite; stored prefixes always
/// record the reason for truncation so downstream checks can distinguish
/// "identity fails" from "data ran out".
enum class Truncation {
  reached_limit,         // next element computed but above the element limit
  count_bound_exceeded,  // next element not computable within count_bound
};

/// One ray: the orbit of seed under repeated nth-prime indexing,
/// elements[k+1] = p_(elements[k]). Every element past the seed is prime
/// and the sequence is strictly increasing.
struct Ray {
  u64 seed = 0;
  std::vector<u64> elements;
  Truncation truncation = Truncation::reached_limit;
  u64 truncation_bound = 0;
};

/// Position of a value in the ray matrix: mu is the 1-based row (rank of
/// the seed among non-primes 1, 4, 6, 8, 9, ...), nu the column with the
/// seed at nu = 0. nu >= 1 entries are prime, nu = 0 entries are not.
struct MatrixCoord {
  u64 mu = 0;
  u64 nu = 0;

  friend bool operator==(const MatrixCoord&, const MatrixCoord&) = default;
};

/// The finite upper-left corner of the ray matrix: one row per non-prime
/// seed, every row truncated at element_limit. Immutable once built.
class RayMatrix {
public:
  RayMatrix(std::vector<Ray> rows, u64 element_limit);

  const std::vector<Ray>& rows() const noexcept { return rows_; }
  const std::vector<u64>& row_seeds() const noexcept { return row_seeds_; }
  u64 element_limit() const noexcept { return element_limit_; }

  /// Coordinates of n if it is stored in the corner.
  std::optional<MatrixCoord> coord_of(u64 n) const;

private:
  std::vector<Ray> rows_;
  std::vector<u64> row_seeds_;
  u64 element_limit_ = 0;
  std::unordered_map<u64, MatrixCoord> index_;
};

/// Outcome of repeatedly applying pi to a number until it stops being
/// prime: the terminating non-prime (the ray seed) and the number of
/// applications (the column of n in its ray).
struct Descent {
  u64 seed = 0;
  u64 depth = 0;

  friend bool operator==(const Descent&, const Descent&) = default;
};

enum class ColumnClass {
  first_column,  // pi(p) is not prime: p heads a ray's prime tail
  deep_column,   // pi(p) is prime: p sits deeper in its ray
};

/// Maximal prefix of the ray seeded at seed with all elements <= limit.
/// Prime seeds are accepted; canonical matrix rows use non-prime seeds.
/// seed = 0 or seed > limit is a parameter error.
Ray extend_ray(const PrimeIndexer& idx, u64 seed, u64 limit);

/// Requires 1 <= n <= count_bound. descend(n) = (n, 0) iff n is not prime.
Descent descend(const PrimeIndexer& idx, u64 n);

/// Requires p prime. Agrees with descend: first_column iff depth(p) = 1.
ColumnClass classify(const PrimeIndexer& idx, u64 p);

/// The mu-th non-prime (1, 4, 6, 8, 9, 10, 12, ...), 1-based.
/// Range error when the result would exceed sieve_bound.
u64 nth_nonprime(const PrimeIndexer& idx, u64 mu);

/// Rays over the first num_rows non-prime seeds, truncated at
/// element_limit.
RayMatrix build_matrix(const PrimeIndexer& idx, u64 num_rows, u64 element_limit);

}  // namespace era
