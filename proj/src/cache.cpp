#include "era/cache.hpp"

#include <cstring>
#include <fstream>

namespace era {

namespace {

constexpr char kMagic[4] = {'E', 'R', 'A', '1'};
constexpr unsigned char kVersion = 1;
constexpr u64 kHeaderBytes = 13;

u64 payload_bytes_for(u64 sieve_bound) {
  const u64 bits = sieve_bound >= 3 ? (sieve_bound - 1) / 2 : 0;
  return (bits + 7) / 8;
}

void set_reason(std::string* reason, const char* what) {
  if (reason) *reason = what;
}

}  // namespace

void write_sieve_cache(const std::string& path, const PrimeIndexer& idx) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io, "cannot open " + path + " for writing");

  unsigned char header[kHeaderBytes];
  std::memcpy(header, kMagic, 4);
  header[4] = kVersion;
  const u64 bound = idx.sieve_bound();
  for (int i = 0; i < 8; ++i)
    header[5 + i] = static_cast<unsigned char>((bound >> (8 * i)) & 0xff);
  out.write(reinterpret_cast<const char*>(header), kHeaderBytes);

  // Little-endian bytes of each word, truncated to the payload size.
  u64 remaining = payload_bytes_for(bound);
  for (u64 word : idx.sieve_words()) {
    unsigned char buf[8];
    for (int i = 0; i < 8; ++i)
      buf[i] = static_cast<unsigned char>((word >> (8 * i)) & 0xff);
    const u64 n = remaining < 8 ? remaining : 8;
    out.write(reinterpret_cast<const char*>(buf), static_cast<std::streamsize>(n));
    remaining -= n;
    if (remaining == 0) break;
  }
  out.flush();
  if (!out) throw Error(Errc::io, "write to " + path + " failed");
}

std::optional<SieveCache> read_sieve_cache(const std::string& path,
                                           std::string* reason) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    set_reason(reason, "cannot open file");
    return std::nullopt;
  }
  in.seekg(0, std::ios::end);
  const std::streamoff file_size = in.tellg();
  in.seekg(0, std::ios::beg);
  if (file_size < static_cast<std::streamoff>(kHeaderBytes)) {
    set_reason(reason, "file shorter than header");
    return std::nullopt;
  }

  unsigned char header[kHeaderBytes];
  in.read(reinterpret_cast<char*>(header), kHeaderBytes);
  if (!in) {
    set_reason(reason, "header read failed");
    return std::nullopt;
  }
  if (std::memcmp(header, kMagic, 4) != 0) {
    set_reason(reason, "bad magic");
    return std::nullopt;
  }
  if (header[4] != kVersion) {
    set_reason(reason, "unsupported version");
    return std::nullopt;
  }
  u64 bound = 0;
  for (int i = 0; i < 8; ++i)
    bound |= static_cast<u64>(header[5 + i]) << (8 * i);
  if (bound < 2) {
    set_reason(reason, "invalid sieve_bound");
    return std::nullopt;
  }
  const u64 expected = payload_bytes_for(bound);
  if (static_cast<u64>(file_size) != kHeaderBytes + expected) {
    set_reason(reason, "size mismatch");
    return std::nullopt;
  }

  SieveCache cache;
  cache.sieve_bound = bound;
  cache.words.assign((expected + 7) / 8, 0);
  std::vector<unsigned char> raw(expected);
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(expected));
  if (!in) {
    set_reason(reason, "payload read failed");
    return std::nullopt;
  }
  for (u64 i = 0; i < expected; ++i)
    cache.words[i / 8] |= static_cast<u64>(raw[i]) << (8 * (i % 8));
  return cache;
}

}  // namespace era
