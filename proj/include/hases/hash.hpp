#pragma once

// Domain-separated SHA-256 instances H0, H1, H2.
//
// H_k(data) = SHA-256(byte(k) || data). Every primitive evaluation bumps a
// process-wide counter for its domain so that composite operations can be
// audited for their exact hash cost. The counters are atomic, but reading or
// resetting them only gives meaningful numbers when one measurement runs at
// a time.

#include <array>
#include <cstdint>
#include <initializer_list>

#include "hases/common.hpp"

namespace hases {

enum class Domain : std::uint8_t { h0 = 0, h1 = 1, h2 = 2 };

struct Digest {
  static constexpr std::size_t size = 32;
  std::array<std::uint8_t, size> bytes{};

  ByteView view() const { return bytes; }
  auto operator<=>(const Digest&) const = default;
};

struct HashCounters {
  std::uint64_t h0 = 0;
  std::uint64_t h1 = 0;
  std::uint64_t h2 = 0;

  std::uint64_t total() const { return h0 + h1 + h2; }
  HashCounters operator-(const HashCounters& o) const {
    return {h0 - o.h0, h1 - o.h1, h2 - o.h2};
  }
  bool operator==(const HashCounters&) const = default;
};

HashCounters hash_counters();
void reset_hash_counters();

/// Measures the hash calls made between construction and `elapsed()`.
class HashScope {
 public:
  HashScope() : start_(hash_counters()) {}
  HashCounters elapsed() const { return hash_counters() - start_; }

 private:
  HashCounters start_;
};

Digest hash(Domain k, ByteView data);

/// One primitive call over the concatenation of `parts`.
Digest hash(Domain k, std::initializer_list<ByteView> parts);

/// 32 bytes from the system CSPRNG.
Digest random_key();

/// `n` consecutive applications of H_k; n == 0 returns `seed`.
Digest iter_hash(Domain k, const Digest& seed, std::uint64_t n);

}  // namespace hases
