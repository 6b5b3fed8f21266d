#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "era/error.hpp"

namespace era {

using u64 = std::uint64_t;

/// Integer square root, exact for all 64-bit inputs.
u64 isqrt(u64 n);

/// Primality and prime-index engine.
///
/// Three layers answer queries at increasing scale:
///   - a dense odd-packed bit sieve with rank blocks, up to sieve_bound;
///   - sublinear counting (Lucy/Meissel family, O(x^3/4) time, O(sqrt x)
///     memory) for prime_count between sieve_bound and count_bound;
///   - deterministic Miller-Rabin for point primality above the sieve.
///
/// nth_prime inverts prime_count: an explicit bracket from the standard
/// p_n bounds, one sublinear count at the bracket floor, then a segmented
/// sieve walk to the exact prime. Results are exact, never estimates.
///
/// Instances are immutable after construction and safe for concurrent
/// readers. Construction is deterministic: identical bounds give
/// bit-identical tables.
class PrimeIndexer {
public:
  // Refusal thresholds for plainly oversized requests. The dense sieve
  // costs sieve_bound/16 bytes; counting above ~4e12 stops being a
  // desk-scale operation.
  static constexpr u64 max_sieve_bound = 32'000'000'000ULL;
  static constexpr u64 max_count_bound = 4'000'000'000'000ULL;

  /// Requires 2 <= sieve_bound <= count_bound.
  static PrimeIndexer build(u64 sieve_bound, u64 count_bound);

  /// Rebuild from externally supplied sieve words (the cache loader).
  /// Words must use the sieve_words() layout; content is trusted, padding
  /// bits are cleared here.
  static PrimeIndexer from_sieve_words(u64 sieve_bound, u64 count_bound,
                                       std::vector<u64> words);

  u64 sieve_bound() const noexcept { return sieve_bound_; }
  u64 count_bound() const noexcept { return count_bound_; }

  /// True iff n is prime. n = 0 or n > count_bound is a range error.
  bool is_prime(u64 n) const;

  /// pi(x): number of primes <= x. Requires x <= count_bound.
  u64 prime_count(u64 x) const;

  /// p_n, the n-th prime (n >= 1). Throws result_out_of_bound when p_n
  /// would exceed count_bound; that is the normal truncation signal.
  u64 nth_prime(u64 n) const;

  /// Like nth_prime but reports the beyond-count_bound case as nullopt.
  std::optional<u64> try_nth_prime(u64 n) const;

  /// Number of primes strictly between a and b; symmetric in argument
  /// order, both endpoints excluded. Requires max(a,b) <= count_bound.
  u64 prime_count_interval(u64 a, u64 b) const;

  /// Same open-interval count, obtained by scanning the raw sieve words
  /// instead of the rank blocks. Independent cross-check path; requires
  /// max(lo,hi) <= sieve_bound.
  u64 count_interval_by_scan(u64 a, u64 b) const;

  /// pi(sieve_bound), precomputed.
  u64 sieve_prime_count() const noexcept { return sieve_prime_count_; }

  /// Odd-packed primality bits: word w, bit b  <->  integer 2*(64w+b)+3.
  /// Set bit means prime. Trailing padding bits are zero.
  const std::vector<u64>& sieve_words() const noexcept { return words_; }
  u64 sieve_bit_count() const noexcept { return n_bits_; }

  /// Calls fn(p) for every prime p in [lo, hi], ascending.
  /// Requires hi <= sieve_bound.
  template <class Fn>
  void for_each_prime(u64 lo, u64 hi, Fn&& fn) const;

private:
  PrimeIndexer() = default;

  void finish_tables();  // rank blocks, base primes, pi(sieve_bound)
  u64 rank_bits_below(u64 n_bits) const;
  u64 lucy_pi(u64 x) const;
  u64 nth_prime_in_sieve(u64 n) const;
  std::optional<u64> nth_prime_above_sieve(u64 n) const;

  u64 sieve_bound_ = 0;
  u64 count_bound_ = 0;
  u64 n_bits_ = 0;
  u64 sieve_prime_count_ = 0;
  std::vector<u64> words_;
  std::vector<u64> block_rank_;   // cumulative set bits per 8-word block
  std::vector<u64> base_primes_;  // primes <= isqrt(count_bound)
};

/// Deterministic Miller-Rabin, exact for every 64-bit n.
bool miller_rabin_is_prime(u64 n);

template <class Fn>
void PrimeIndexer::for_each_prime(u64 lo, u64 hi, Fn&& fn) const {
  if (hi > sieve_bound_)
    throw Error(Errc::range, "for_each_prime: bound above sieve_bound");
  if (lo > hi) return;
  if (lo <= 2 && 2 <= hi) fn(u64{2});
  if (hi < 3) return;
  u64 first = std::max<u64>(lo, 3);
  if ((first & 1) == 0) ++first;
  u64 last = hi;
  if ((last & 1) == 0) --last;
  if (first > last) return;
  const u64 b0 = (first - 3) / 2;
  const u64 b1 = (last - 3) / 2;
  u64 w = b0 >> 6;
  const u64 w_end = b1 >> 6;
  u64 word = words_[w] & ~((u64{1} << (b0 & 63)) - 1);
  for (;;) {
    if (w == w_end) {
      const u64 top = b1 & 63;
      if (top != 63) word &= (u64{1} << (top + 1)) - 1;
    }
    while (word) {
      const u64 bit = (w << 6) + static_cast<u64>(__builtin_ctzll(word));
      fn(2 * bit + 3);
      word &= word - 1;
    }
    if (w == w_end) break;
    word = words_[++w];
  }
}

}  // namespace era
