#include "hases/common.hpp"

#include <sodium.h>

#include <algorithm>
#include <cctype>

namespace hases {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::accept:
      return "accept";
    case Verdict::reject:
      return "reject";
    case Verdict::mismatch:
      return "mismatch";
  }
  return "?";
}

SignerId SignerId::from_text(std::string_view text) {
  if (text.empty() || text.size() > 16)
    throw InvalidParams("signer id must be 1..16 bytes: '" + std::string(text) + "'");
  SignerId id;
  std::copy(text.begin(), text.end(), id.bytes.begin());
  return id;
}

SignerId SignerId::from_hex(std::string_view hex) {
  auto raw = hases::from_hex(hex);
  if (raw.size() != 16) throw InvalidParams("hex signer id must be 32 digits");
  SignerId id;
  std::copy(raw.begin(), raw.end(), id.bytes.begin());
  return id;
}

SignerId SignerId::parse(std::string_view s) {
  if (s.size() == 32 && std::all_of(s.begin(), s.end(), [](char c) {
        return std::isxdigit(static_cast<unsigned char>(c)) != 0;
      }))
    return from_hex(s);
  return from_text(s);
}

std::string SignerId::hex() const { return to_hex(bytes); }

std::string to_hex(ByteView data) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(digits[b >> 4]);
    out.push_back(digits[b & 0xf]);
  }
  return out;
}

Bytes from_hex(std::string_view hex) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (hex.size() % 2 != 0) throw FormatError("odd-length hex string");
  Bytes out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = nibble(hex[2 * i]);
    int lo = nibble(hex[2 * i + 1]);
    if (hi < 0 || lo < 0) throw FormatError("invalid hex digit");
    out[i] = static_cast<std::uint8_t>(hi << 4 | lo);
  }
  return out;
}

void secure_zero(std::span<std::uint8_t> data) {
  if (!data.empty()) sodium_memzero(data.data(), data.size());
}

std::uint8_t ByteReader::u8() { return raw(1)[0]; }

std::uint32_t ByteReader::u32() {
  auto b = raw(4);
  return std::uint32_t{b[0]} << 24 | std::uint32_t{b[1]} << 16 | std::uint32_t{b[2]} << 8 |
         std::uint32_t{b[3]};
}

std::uint64_t ByteReader::u64() {
  auto b = raw(8);
  std::uint64_t v = 0;
  for (auto x : b) v = v << 8 | x;
  return v;
}

ByteView ByteReader::raw(std::size_t n) {
  if (n > remaining()) throw FormatError("truncated input");
  auto out = in_.subspan(pos_, n);
  pos_ += n;
  return out;
}

SignerId ByteReader::id() {
  SignerId id;
  id.bytes = fixed<16>();
  return id;
}

void ByteReader::expect_end() const {
  if (!empty()) throw FormatError("trailing bytes after payload");
}

}  // namespace hases
