#include "era/primecore.hpp"

#include <cassert>
#include <cmath>
#include <string>

namespace era {

namespace {

using u128 = unsigned __int128;

constexpr u64 kWordBits = 64;
constexpr u64 kBlockWords = 8;
constexpr u64 kBlockBits = kWordBits * kBlockWords;

u64 bit_count_for(u64 sieve_bound) {
  return sieve_bound >= 3 ? (sieve_bound - 1) / 2 : 0;
}

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Simple byte sieve for small bounds (base primes, sieving primes).
std::vector<u64> small_primes_upto(u64 limit) {
  std::vector<u64> primes;
  if (limit < 2) return primes;
  std::vector<std::uint8_t> mark(limit + 1, 1);
  mark[0] = 0;
  mark[1] = 0;
  for (u64 i = 2; i * i <= limit; ++i)
    if (mark[i])
      for (u64 j = i * i; j <= limit; j += i) mark[j] = 0;
  for (u64 i = 2; i <= limit; ++i)
    if (mark[i]) primes.push_back(i);
  return primes;
}

}  // namespace

u64 isqrt(u64 n) {
  if (n == 0) return 0;
  u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && u128(r) * r > n) --r;
  while (u128(r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool miller_rabin_is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Sinclair base set: exact for every n < 2^64.
  for (u64 a : {2ULL, 325ULL, 9375ULL, 28178ULL, 450775ULL, 9780504ULL,
                1795265022ULL}) {
    const u64 base = a % n;
    if (base == 0) continue;
    u64 x = powmod(base, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeIndexer PrimeIndexer::build(u64 sieve_bound, u64 count_bound) {
  if (sieve_bound < 2)
    throw Error(Errc::parameter, "sieve_bound must be at least 2");
  if (count_bound < sieve_bound)
    throw Error(Errc::parameter, "count_bound must be >= sieve_bound");
  if (sieve_bound > max_sieve_bound)
    throw Error(Errc::resource, "sieve_bound " + std::to_string(sieve_bound) +
                                    " exceeds the dense-sieve allocation cap");
  if (count_bound > max_count_bound)
    throw Error(Errc::resource, "count_bound " + std::to_string(count_bound) +
                                    " exceeds the counting cap");

  PrimeIndexer idx;
  idx.sieve_bound_ = sieve_bound;
  idx.count_bound_ = count_bound;
  idx.n_bits_ = bit_count_for(sieve_bound);

  try {
    idx.words_.assign((idx.n_bits_ + kWordBits - 1) / kWordBits, ~u64{0});
  } catch (const std::bad_alloc&) {
    throw Error(Errc::resource, "dense sieve allocation failed");
  }

  if (!idx.words_.empty()) {
    // Clear padding bits beyond n_bits_.
    if (idx.n_bits_ % kWordBits)
      idx.words_.back() &= (u64{1} << (idx.n_bits_ % kWordBits)) - 1;

    // Cross off odd composites segment by segment; segments sized to stay
    // cache resident. Bit index i holds 2i+3, so odd multiples of p are
    // p bits apart.
    const auto sieving = small_primes_upto(isqrt(sieve_bound));
    constexpr u64 seg_bits = u64{1} << 20;
    for (u64 seg_lo = 0; seg_lo < idx.n_bits_; seg_lo += seg_bits) {
      const u64 seg_hi = std::min(seg_lo + seg_bits, idx.n_bits_);
      const u64 lo_val = 2 * seg_lo + 3;
      const u64 hi_val = 2 * (seg_hi - 1) + 3;
      for (u64 p : sieving) {
        if (p == 2) continue;
        if (p * p > hi_val) break;
        u64 start = p * p;
        if (start < lo_val) {
          u64 q = (lo_val + p - 1) / p;
          if ((q & 1) == 0) ++q;
          start = q * p;
        }
        for (u64 bit = (start - 3) / 2; bit < seg_hi; bit += p)
          idx.words_[bit >> 6] &= ~(u64{1} << (bit & 63));
      }
    }
  }

  idx.finish_tables();
  return idx;
}

PrimeIndexer PrimeIndexer::from_sieve_words(u64 sieve_bound, u64 count_bound,
                                            std::vector<u64> words) {
  if (sieve_bound < 2)
    throw Error(Errc::parameter, "sieve_bound must be at least 2");
  if (count_bound < sieve_bound)
    throw Error(Errc::parameter, "count_bound must be >= sieve_bound");
  if (count_bound > max_count_bound)
    throw Error(Errc::resource, "count_bound exceeds the counting cap");

  PrimeIndexer idx;
  idx.sieve_bound_ = sieve_bound;
  idx.count_bound_ = count_bound;
  idx.n_bits_ = bit_count_for(sieve_bound);
  const u64 want_words = (idx.n_bits_ + kWordBits - 1) / kWordBits;
  if (words.size() != want_words)
    throw Error(Errc::parameter, "sieve word count does not match sieve_bound");
  idx.words_ = std::move(words);
  if (!idx.words_.empty() && idx.n_bits_ % kWordBits)
    idx.words_.back() &= (u64{1} << (idx.n_bits_ % kWordBits)) - 1;
  idx.finish_tables();
  return idx;
}

void PrimeIndexer::finish_tables() {
  const u64 n_blocks = (words_.size() + kBlockWords - 1) / kBlockWords;
  block_rank_.assign(n_blocks + 1, 0);
  for (u64 b = 0; b < n_blocks; ++b) {
    u64 sum = 0;
    const u64 w_end = std::min<u64>((b + 1) * kBlockWords, words_.size());
    for (u64 w = b * kBlockWords; w < w_end; ++w)
      sum += static_cast<u64>(__builtin_popcountll(words_[w]));
    block_rank_[b + 1] = block_rank_[b] + sum;
  }
  sieve_prime_count_ = (sieve_bound_ >= 2 ? 1 : 0) + block_rank_[n_blocks];
  base_primes_ = small_primes_upto(isqrt(count_bound_));
}

u64 PrimeIndexer::rank_bits_below(u64 n_bits) const {
  n_bits = std::min(n_bits, n_bits_);
  const u64 block = n_bits / kBlockBits;
  u64 count = block_rank_[block];
  u64 w = block * kBlockWords;
  u64 remaining = n_bits % kBlockBits;
  while (remaining >= kWordBits) {
    count += static_cast<u64>(__builtin_popcountll(words_[w++]));
    remaining -= kWordBits;
  }
  if (remaining)
    count += static_cast<u64>(
        __builtin_popcountll(words_[w] & ((u64{1} << remaining) - 1)));
  return count;
}

bool PrimeIndexer::is_prime(u64 n) const {
  if (n == 0) throw Error(Errc::range, "is_prime: n must be at least 1");
  if (n > count_bound_)
    throw Error(Errc::range, "is_prime: n above count_bound");
  if (n < 2) return false;
  if (n == 2) return true;
  if ((n & 1) == 0) return false;
  if (n <= sieve_bound_) {
    const u64 bit = (n - 3) / 2;
    return (words_[bit >> 6] >> (bit & 63)) & 1;
  }
  return miller_rabin_is_prime(n);
}

u64 PrimeIndexer::prime_count(u64 x) const {
  if (x > count_bound_)
    throw Error(Errc::range, "prime_count: x above count_bound");
  if (x < 2) return 0;
  if (x <= sieve_bound_)
    return 1 + (x >= 3 ? rank_bits_below((x - 3) / 2 + 1) : 0);
  return lucy_pi(x);
}

// Lucy/Meissel-style sieve over the distinct values of x/k. small[v]
// and large[k] start as (count of 2..v) and end as pi(v) for v <= r and
// pi(x/k) respectively.
u64 PrimeIndexer::lucy_pi(u64 x) const {
  const u64 r = isqrt(x);
  std::vector<u64> small(r + 1), large(r + 1);
  for (u64 v = 1; v <= r; ++v) small[v] = v - 1;
  for (u64 k = 1; k <= r; ++k) large[k] = x / k - 1;
  for (u64 p = 2; p <= r; ++p) {
    if (small[p] == small[p - 1]) continue;  // p composite
    const u64 below_p = small[p - 1];
    const u64 p2 = p * p;
    const u64 k_max = std::min(r, x / p2);
    for (u64 k = 1; k <= k_max; ++k) {
      const u64 kp = k * p;
      const u64 inner = kp <= r ? large[kp] : small[x / kp];
      large[k] -= inner - below_p;
    }
    for (u64 v = r; v >= p2; --v) small[v] -= small[v / p] - below_p;
  }
  return large[1];
}

u64 PrimeIndexer::nth_prime_in_sieve(u64 n) const {
  if (n == 1) return 2;
  const u64 target = n - 1;  // ordinal among odd primes
  // First cumulative count >= target; the bit lives in the block before it.
  const auto it =
      std::lower_bound(block_rank_.begin(), block_rank_.end(), target);
  const u64 block = static_cast<u64>(it - block_rank_.begin()) - 1;
  u64 remaining = target - block_rank_[block];
  for (u64 w = block * kBlockWords;; ++w) {
    const u64 pop = static_cast<u64>(__builtin_popcountll(words_[w]));
    if (remaining > pop) {
      remaining -= pop;
      continue;
    }
    u64 word = words_[w];
    while (--remaining) word &= word - 1;
    const u64 bit = (w << 6) + static_cast<u64>(__builtin_ctzll(word));
    return 2 * bit + 3;
  }
}

std::optional<u64> PrimeIndexer::nth_prime_above_sieve(u64 n) const {
  // Hardcoded below n = 6; explicit bounds otherwise:
  //   n(ln n + ln ln n - 1) <= p_n <= n(ln n + ln ln n).
  static constexpr u64 first_primes[] = {2, 3, 5, 7, 11};
  if (n <= 5) {
    const u64 p = first_primes[n - 1];
    if (p > count_bound_) return std::nullopt;
    return p;
  }
  const long double ln_n = std::log(static_cast<long double>(n));
  const long double ln_ln_n = std::log(ln_n);
  const long double lo_est = n * (ln_n + ln_ln_n - 1.0L);
  const long double hi_est = n * (ln_n + ln_ln_n);
  if (lo_est > static_cast<long double>(count_bound_)) return std::nullopt;
  u64 lo = static_cast<u64>(lo_est);
  u64 hi;
  if (hi_est >= static_cast<long double>(count_bound_)) {
    // The bracket straddles count_bound: settle it with one exact count.
    if (prime_count(count_bound_) < n) return std::nullopt;
    hi = count_bound_;
  } else {
    hi = static_cast<u64>(hi_est) + 1;
  }

  // The bracket is checked, not assumed: pull lo down until pi(lo) < n.
  u64 counted = prime_count(lo);
  while (counted >= n) {
    lo = std::max<u64>(2, lo - lo / 10 - 1);
    counted = prime_count(lo);
  }

  // Walk a segmented sieve from lo+1, counting primes until the n-th.
  constexpr u64 seg_values = u64{1} << 22;
  std::vector<u64> seg((seg_values / 2 + kWordBits - 1) / kWordBits);
  u64 remaining = n - counted;
  u64 cursor = lo + 1;
  for (;;) {
    if (cursor > hi) {
      if (hi >= count_bound_) return std::nullopt;
      hi = std::min(count_bound_, hi + hi / 50 + 1);  // never expected
    }
    const u64 seg_lo = cursor | 1;  // first odd candidate
    if (seg_lo > hi) {
      cursor = hi + 1;
      continue;
    }
    const u64 seg_hi = std::min(hi, seg_lo + seg_values - 1);
    const u64 bits = (seg_hi - seg_lo) / 2 + 1;  // odd values in [seg_lo, seg_hi]
    const u64 used_words = (bits + kWordBits - 1) / kWordBits;
    std::fill(seg.begin(), seg.begin() + used_words, ~u64{0});
    if (bits % kWordBits)
      seg[used_words - 1] &= (u64{1} << (bits % kWordBits)) - 1;
    for (u64 p : base_primes_) {
      if (p == 2) continue;
      if (u128(p) * p > seg_hi) break;
      u64 start = p * p;
      if (start < seg_lo) {
        u64 q = (seg_lo + p - 1) / p;
        if ((q & 1) == 0) ++q;
        start = q * p;
      }
      for (u64 v = start; v <= seg_hi; v += 2 * p)
        seg[(v - seg_lo) / 2 >> 6] &= ~(u64{1} << ((v - seg_lo) / 2 & 63));
    }
    for (u64 w = 0; w < used_words; ++w) {
      u64 word = seg[w];
      const u64 pop = static_cast<u64>(__builtin_popcountll(word));
      if (pop < remaining) {
        remaining -= pop;
        continue;
      }
      while (--remaining) word &= word - 1;
      const u64 bit = (w << 6) + static_cast<u64>(__builtin_ctzll(word));
      const u64 p = seg_lo + 2 * bit;
      assert(p > lo && p <= hi);
      return p;
    }
    cursor = seg_hi + 1;
  }
}

std::optional<u64> PrimeIndexer::try_nth_prime(u64 n) const {
  if (n == 0) throw Error(Errc::parameter, "nth_prime: n must be at least 1");
  if (n <= sieve_prime_count_) return nth_prime_in_sieve(n);
  return nth_prime_above_sieve(n);
}

u64 PrimeIndexer::nth_prime(u64 n) const {
  const auto p = try_nth_prime(n);
  if (!p)
    throw Error(Errc::result_out_of_bound,
                "nth_prime: p_" + std::to_string(n) + " exceeds count_bound " +
                    std::to_string(count_bound_));
  return *p;
}

u64 PrimeIndexer::prime_count_interval(u64 a, u64 b) const {
  const u64 lo = std::min(a, b);
  const u64 hi = std::max(a, b);
  if (hi > count_bound_)
    throw Error(Errc::range, "prime_count_interval: endpoint above count_bound");
  if (hi < 3 || hi - lo < 2) return 0;
  return prime_count(hi) - prime_count(lo) - (is_prime(hi) ? 1 : 0);
}

u64 PrimeIndexer::count_interval_by_scan(u64 a, u64 b) const {
  const u64 lo = std::min(a, b);
  const u64 hi = std::max(a, b);
  if (hi > sieve_bound_)
    throw Error(Errc::range, "count_interval_by_scan: endpoint above sieve_bound");
  if (hi < 3 || hi - lo < 2) return 0;
  u64 count = (lo < 2 && 2 < hi) ? 1 : 0;
  // Odd candidates strictly inside (lo, hi).
  u64 first = std::max<u64>(lo + 1, 3);
  if ((first & 1) == 0) ++first;
  u64 last = hi - 1;
  if ((last & 1) == 0) --last;
  if (last < first) return count;
  const u64 b0 = (first - 3) / 2;
  const u64 b1 = (last - 3) / 2;
  for (u64 w = b0 >> 6; w <= b1 >> 6; ++w) {
    u64 word = words_[w];
    if (w == b0 >> 6) word &= ~((u64{1} << (b0 & 63)) - 1);
    if (w == b1 >> 6 && (b1 & 63) != 63) word &= (u64{1} << ((b1 & 63) + 1)) - 1;
    count += static_cast<u64>(__builtin_popcountll(word));
  }
  return count;
}

}  // namespace era
