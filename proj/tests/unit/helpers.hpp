#pragma once

#include <random>
#include <string>
#include <vector>

#include "hases/common.hpp"
#include "hases/hash.hpp"

namespace testing_helpers {

inline hases::Bytes bytes_of(std::string_view s) {
  return hases::Bytes(s.begin(), s.end());
}

inline hases::Bytes random_bytes(std::mt19937_64& rng, std::size_t n) {
  hases::Bytes out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng());
  return out;
}

inline std::vector<hases::Bytes> random_batch(std::mt19937_64& rng, std::size_t L) {
  std::vector<hases::Bytes> out;
  for (std::size_t i = 0; i < L; ++i) out.push_back(random_bytes(rng, 1 + rng() % 48));
  return out;
}

inline hases::Digest fixed_key(std::uint8_t fill) {
  hases::Digest d;
  d.bytes.fill(fill);
  return d;
}

inline std::vector<hases::SignerId> ids(std::initializer_list<std::string_view> names) {
  std::vector<hases::SignerId> out;
  for (auto n : names) out.push_back(hases::SignerId::from_text(n));
  return out;
}

}  // namespace testing_helpers
