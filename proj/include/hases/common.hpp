#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hases {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed serialized input (wrong tag, truncated, non-canonical value).
class FormatError : public Error {
 public:
  using Error::Error;
};

class InvalidParams : public Error {
 public:
  using Error::Error;
};

class DuplicateId : public Error {
 public:
  using Error::Error;
};

class UnknownId : public Error {
 public:
  using Error::Error;
};

/// Requested epoch lies outside [1, J].
class EpochRange : public Error {
 public:
  using Error::Error;
};

/// Signer state has used up all J epochs.
class EpochExhausted : public Error {
 public:
  using Error::Error;
};

/// Outcome of a verification. `mismatch` means the inputs do not belong
/// together (id/epoch/length disagree) and no cryptographic check ran.
enum class Verdict : std::uint8_t { accept, reject, mismatch };

constexpr bool accepted(Verdict v) { return v == Verdict::accept; }
const char* to_string(Verdict v);

/// 16-byte signer identity. Text ids shorter than 16 bytes are zero-padded.
struct SignerId {
  std::array<std::uint8_t, 16> bytes{};

  static SignerId from_text(std::string_view text);
  static SignerId from_hex(std::string_view hex);
  /// Accepts 32 hex digits, otherwise treats the input as text.
  static SignerId parse(std::string_view s);
  std::string hex() const;

  auto operator<=>(const SignerId&) const = default;
};

std::string to_hex(ByteView data);
Bytes from_hex(std::string_view hex);

/// Best-effort wipe of secret material.
void secure_zero(std::span<std::uint8_t> data);

inline std::array<std::uint8_t, 8> be64(std::uint64_t v) {
  std::array<std::uint8_t, 8> out{};
  for (int i = 7; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
  return out;
}

inline std::array<std::uint8_t, 4> be32(std::uint32_t v) {
  return {static_cast<std::uint8_t>(v >> 24), static_cast<std::uint8_t>(v >> 16),
          static_cast<std::uint8_t>(v >> 8), static_cast<std::uint8_t>(v)};
}

/// Append-only big-endian encoder.
class ByteWriter {
 public:
  ByteWriter& u8(std::uint8_t v) {
    out_.push_back(v);
    return *this;
  }
  ByteWriter& u32(std::uint32_t v) { return raw(be32(v)); }
  ByteWriter& u64(std::uint64_t v) { return raw(be64(v)); }
  ByteWriter& raw(ByteView v) {
    out_.insert(out_.end(), v.begin(), v.end());
    return *this;
  }
  ByteWriter& id(const SignerId& id) { return raw(id.bytes); }

  Bytes take() { return std::move(out_); }
  std::size_t size() const { return out_.size(); }

 private:
  Bytes out_;
};

/// Bounds-checked big-endian decoder; throws FormatError on underrun.
class ByteReader {
 public:
  explicit ByteReader(ByteView in) : in_(in) {}

  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  ByteView raw(std::size_t n);
  SignerId id();
  template <std::size_t N>
  std::array<std::uint8_t, N> fixed() {
    std::array<std::uint8_t, N> out{};
    auto src = raw(N);
    std::copy(src.begin(), src.end(), out.begin());
    return out;
  }

  std::size_t remaining() const { return in_.size() - pos_; }
  bool empty() const { return remaining() == 0; }
  /// Throws unless every byte was consumed.
  void expect_end() const;

 private:
  ByteView in_;
  std::size_t pos_ = 0;
};

}  // namespace hases
