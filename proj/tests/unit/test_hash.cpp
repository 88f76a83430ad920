#include <doctest.h>
#include <sodium.h>

#include "hases/group.hpp"
#include "hases/hash.hpp"
#include "helpers.hpp"
#include "vectors.hpp"

using namespace hases;
using testing_helpers::bytes_of;

TEST_CASE("hash domains are separated") {
  auto m = bytes_of("same input");
  CHECK(hash(Domain::h0, m) != hash(Domain::h1, m));
  CHECK(hash(Domain::h1, m) != hash(Domain::h2, m));
  CHECK(hash(Domain::h0, m) != hash(Domain::h2, m));
}

TEST_CASE("H0 of the empty string is SHA-256 of a single zero byte") {
  CHECK(to_hex(hash(Domain::h0, ByteView{}).view()) == vectors::kSha256OfZeroByte);

  // Also against libsodium's one-shot API with the prefix applied by hand.
  const std::uint8_t in[] = {2, 'x', 'y'};
  Digest ref;
  crypto_hash_sha256(ref.bytes.data(), in, sizeof in);
  CHECK(hash(Domain::h2, bytes_of("xy")) == ref);
}

TEST_CASE("multi-part hashing equals hashing the concatenation") {
  auto a = bytes_of("abc");
  auto b = bytes_of("defg");
  CHECK(hash(Domain::h1, {a, b}) == hash(Domain::h1, bytes_of("abcdefg")));
}

TEST_CASE("counters track each primitive call") {
  auto m = bytes_of("count me");
  HashScope scope;
  auto d1 = hash(Domain::h1, m);
  auto d2 = hash(Domain::h1, m);
  CHECK(d1 == d2);
  hash(Domain::h2, m);
  auto used = scope.elapsed();
  CHECK(used.h0 == 0);
  CHECK(used.h1 == 2);
  CHECK(used.h2 == 1);
  CHECK(used.total() == 3);

  reset_hash_counters();
  CHECK(hash_counters().total() == 0);
}

TEST_CASE("iter_hash") {
  const Digest seed = testing_helpers::fixed_key(0x5a);

  SUBCASE("zero iterations return the seed") { CHECK(iter_hash(Domain::h1, seed, 0) == seed); }

  SUBCASE("two iterations compose") {
    CHECK(iter_hash(Domain::h1, seed, 2) ==
          hash(Domain::h1, hash(Domain::h1, seed.view()).view()));
  }

  SUBCASE("chain splitting identity") {
    for (std::uint64_t a = 0; a < 6; ++a)
      for (std::uint64_t b = 0; b < 6; ++b)
        CHECK(iter_hash(Domain::h1, seed, a + b) ==
              iter_hash(Domain::h1, iter_hash(Domain::h1, seed, a), b));
  }

  SUBCASE("costs exactly n calls") {
    HashScope scope;
    iter_hash(Domain::h1, seed, 37);
    CHECK(scope.elapsed().h1 == 37);
  }
}

TEST_CASE("hash_to_scalar") {
  const Group& tiny = tiny_group();

  SUBCASE("reduces the big-endian digest mod q") {
    CHECK(hash_to_scalar(Domain::h0, bytes_of(vectors::kTinyScalarInput), tiny).low_u64() == 7);
  }

  SUBCASE("never zero and always below q") {
    // q = 11 hits the zero-retry path on roughly one input in eleven.
    bool saw_retry = false;
    for (int i = 0; i < 2000; ++i) {
      auto in = bytes_of("x" + std::to_string(i));
      auto first = tiny.reduce(hash(Domain::h2, in).view());
      saw_retry |= first.is_zero();
      auto s = hash_to_scalar(Domain::h2, in, tiny);
      CHECK_FALSE(s.is_zero());
      CHECK(s.low_u64() < 11);
      CHECK(tiny.is_canonical(s));
    }
    CHECK(saw_retry);
  }

  SUBCASE("retry appends a one-byte counter") {
    for (int i = 0;; ++i) {
      auto in = bytes_of("x" + std::to_string(i));
      if (!tiny.reduce(hash(Domain::h1, in).view()).is_zero()) continue;
      auto expect = tiny.reduce(hash(Domain::h1, {ByteView(in), ByteView(Bytes{0})}).view());
      if (expect.is_zero()) continue;
      CHECK(hash_to_scalar(Domain::h1, in, tiny) == expect);
      break;
    }
  }

  SUBCASE("production scalars are canonical") {
    const Group& g = production_group();
    for (int i = 0; i < 200; ++i) {
      auto s = hash_to_scalar(Domain::h0, bytes_of("p" + std::to_string(i)), g);
      CHECK(g.is_canonical(s));
      CHECK_FALSE(s.is_zero());
    }
  }

  SUBCASE("domains give different scalars") {
    const Group& g = production_group();
    auto in = bytes_of("domain check");
    CHECK(hash_to_scalar(Domain::h0, in, g) != hash_to_scalar(Domain::h1, in, g));
  }
}
