#include "era/rays.hpp"

#include <string>

namespace era {

Ray extend_ray(const PrimeIndexer& idx, u64 seed, u64 limit) {
  if (seed == 0) throw Error(Errc::parameter, "extend_ray: seed must be >= 1");
  if (limit > idx.count_bound())
    throw Error(Errc::range, "extend_ray: limit above count_bound");
  if (seed > limit)
    throw Error(Errc::parameter, "extend_ray: seed " + std::to_string(seed) +
                                     " exceeds limit " + std::to_string(limit));
  Ray ray;
  ray.seed = seed;
  ray.elements.push_back(seed);
  u64 current = seed;
  for (;;) {
    const auto next = idx.try_nth_prime(current);
    if (!next) {
      ray.truncation = Truncation::count_bound_exceeded;
      ray.truncation_bound = idx.count_bound();
      break;
    }
    if (*next > limit) {
      ray.truncation = Truncation::reached_limit;
      ray.truncation_bound = limit;
      break;
    }
    ray.elements.push_back(*next);
    current = *next;
  }
  return ray;
}

Descent descend(const PrimeIndexer& idx, u64 n) {
  if (n == 0) throw Error(Errc::range, "descend: n must be >= 1");
  if (n > idx.count_bound())
    throw Error(Errc::range, "descend: n above count_bound");
  u64 current = n;
  u64 depth = 0;
  while (idx.is_prime(current)) {
    current = idx.prime_count(current);
    ++depth;
  }
  return {current, depth};
}

ColumnClass classify(const PrimeIndexer& idx, u64 p) {
  if (!idx.is_prime(p))
    throw Error(Errc::parameter,
                "classify: " + std::to_string(p) + " is not prime");
  return idx.is_prime(idx.prime_count(p)) ? ColumnClass::deep_column
                                          : ColumnClass::first_column;
}

u64 nth_nonprime(const PrimeIndexer& idx, u64 mu) {
  if (mu == 0) throw Error(Errc::parameter, "nth_nonprime: mu must be >= 1");
  // Non-primes up to m number m - pi(m); the count steps by one exactly at
  // non-prime m, so the smallest m reaching mu is itself non-prime.
  const u64 bound = idx.sieve_bound();
  if (bound - idx.prime_count(bound) < mu)
    throw Error(Errc::range, "nth_nonprime: result above sieve_bound");
  u64 lo = 1, hi = bound;
  while (lo < hi) {
    const u64 mid = lo + (hi - lo) / 2;
    if (mid - idx.prime_count(mid) >= mu)
      hi = mid;
    else
      lo = mid + 1;
  }
  return lo;
}

RayMatrix build_matrix(const PrimeIndexer& idx, u64 num_rows, u64 element_limit) {
  if (num_rows == 0)
    throw Error(Errc::parameter, "build_matrix: num_rows must be >= 1");
  if (element_limit > idx.count_bound())
    throw Error(Errc::range, "build_matrix: element_limit above count_bound");
  std::vector<Ray> rows;
  rows.reserve(num_rows);
  for (u64 mu = 1; mu <= num_rows; ++mu)
    rows.push_back(extend_ray(idx, nth_nonprime(idx, mu), element_limit));
  return RayMatrix(std::move(rows), element_limit);
}

RayMatrix::RayMatrix(std::vector<Ray> rows, u64 element_limit)
    : rows_(std::move(rows)), element_limit_(element_limit) {
  row_seeds_.reserve(rows_.size());
  std::size_t total = 0;
  for (const Ray& row : rows_) total += row.elements.size();
  index_.reserve(total);
  for (u64 mu = 1; mu <= rows_.size(); ++mu) {
    const Ray& row = rows_[mu - 1];
    row_seeds_.push_back(row.seed);
    for (u64 nu = 0; nu < row.elements.size(); ++nu) {
      const auto [_, inserted] =
          index_.emplace(row.elements[nu], MatrixCoord{mu, nu});
      if (!inserted)
        throw Error(Errc::parameter,
                    "RayMatrix: duplicate entry " +
                        std::to_string(row.elements[nu]) +
                        " (rows are not disjoint)");
    }
  }
}

std::optional<MatrixCoord> RayMatrix::coord_of(u64 n) const {
  const auto it = index_.find(n);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

}  // namespace era
