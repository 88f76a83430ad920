#include "hases/hash.hpp"

#include <sodium.h>

#include <atomic>

namespace hases {
namespace {

std::atomic<std::uint64_t> g_calls[3];

void count(Domain k) { g_calls[static_cast<int>(k)].fetch_add(1, std::memory_order_relaxed); }

}  // namespace

HashCounters hash_counters() {
  return {g_calls[0].load(std::memory_order_relaxed), g_calls[1].load(std::memory_order_relaxed),
          g_calls[2].load(std::memory_order_relaxed)};
}

void reset_hash_counters() {
  for (auto& c : g_calls) c.store(0, std::memory_order_relaxed);
}

Digest hash(Domain k, std::initializer_list<ByteView> parts) {
  crypto_hash_sha256_state st;
  crypto_hash_sha256_init(&st);
  const auto tag = static_cast<std::uint8_t>(k);
  crypto_hash_sha256_update(&st, &tag, 1);
  for (auto p : parts)
    if (!p.empty()) crypto_hash_sha256_update(&st, p.data(), p.size());
  Digest out;
  crypto_hash_sha256_final(&st, out.bytes.data());
  count(k);
  return out;
}

Digest hash(Domain k, ByteView data) { return hash(k, {data}); }

Digest random_key() {
  if (sodium_init() < 0) throw Error("libsodium initialisation failed");
  Digest out;
  randombytes_buf(out.bytes.data(), out.bytes.size());
  return out;
}

Digest iter_hash(Domain k, const Digest& seed, std::uint64_t n) {
  Digest cur = seed;
  for (std::uint64_t i = 0; i < n; ++i) cur = hash(k, cur.view());
  return cur;
}

}  // namespace hases
