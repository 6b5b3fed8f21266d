#pragma once

#include <optional>
#include <string>
#include <vector>

#include "era/primecore.hpp"

namespace era {

/// Sieve cache file layout, version 1:
///   bytes 0..3   magic "ERA1"
///   byte  4      format version, 0x01
///   bytes 5..12  sieve_bound, unsigned 64-bit little-endian
///   bytes 13..   odd-only primality bitset: bit i <-> integer 2i+3,
///                least-significant bit first, zero-padded to full bytes.
/// The payload length is determined by sieve_bound; anything else is a
/// size mismatch and the file is rejected.
struct SieveCache {
  u64 sieve_bound = 0;
  std::vector<u64> words;  // same layout as PrimeIndexer::sieve_words()
};

/// Writes the indexer's sieve to path. Throws Errc::io on failure.
void write_sieve_cache(const std::string& path, const PrimeIndexer& idx);

/// Reads and validates a cache file. Returns nullopt when the file is
/// missing, unreadable, or malformed; *reason (if non-null) says why.
/// Never throws for bad content: rejection is the contract.
std::optional<SieveCache> read_sieve_cache(const std::string& path,
                                           std::string* reason);

}  // namespace era
