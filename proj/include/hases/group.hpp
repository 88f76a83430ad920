#pragma once

// Prime-order cyclic groups for the aggregate scheme.
//
// Written multiplicatively: exp(g, s) = g^s, mul(a, b) = a*b. Two backends
// share the interface:
//   - tiny: the order-11 subgroup of Z_23^* generated by 2. Insecure; every
//     discrete log is recoverable by enumeration, which the tests rely on.
//   - ristretto255: the prime-order group built on Curve25519 (libsodium).
//
// Scalars travel as 32-byte big-endian integers in [0, q). Elements travel in
// the backend's canonical 32-byte encoding (tiny pads the residue to 32
// bytes big-endian; the ristretto identity is 32 zero bytes).

#include <array>
#include <cstdint>
#include <initializer_list>

#include "hases/common.hpp"
#include "hases/hash.hpp"

namespace hases {

enum class Backend : std::uint8_t { tiny = 0x01, ristretto255 = 0x02 };

Backend parse_backend(std::string_view name);
const char* to_string(Backend b);

struct Scalar {
  std::array<std::uint8_t, 32> bytes{};

  static Scalar from_u64(std::uint64_t v);
  bool is_zero() const;
  /// Low 64 bits; meaningful for tiny-group values.
  std::uint64_t low_u64() const;
  auto operator<=>(const Scalar&) const = default;
};

struct Element {
  std::array<std::uint8_t, 32> bytes{};
  auto operator<=>(const Element&) const = default;
};

struct GroupParams {
  Backend backend = Backend::tiny;
  std::array<std::uint8_t, 32> p{};  // field / ambient modulus, big-endian
  std::array<std::uint8_t, 32> q{};  // subgroup order, big-endian
  Element alpha;                     // generator of the order-q subgroup
};

class Group {
 public:
  virtual ~Group() = default;

  virtual const GroupParams& params() const = 0;
  Backend backend() const { return params().backend; }
  const Element& generator() const { return params().alpha; }
  virtual unsigned order_bits() const = 0;

  /// Big-endian integer (at most 32 bytes) reduced mod q.
  virtual Scalar reduce(ByteView big_endian) const = 0;
  /// True iff the scalar's integer value is below q.
  virtual bool is_canonical(const Scalar& s) const = 0;
  virtual Scalar add(const Scalar& a, const Scalar& b) const = 0;
  virtual Scalar sub(const Scalar& a, const Scalar& b) const = 0;
  virtual Scalar mul(const Scalar& a, const Scalar& b) const = 0;

  virtual Element identity() const = 0;
  virtual bool is_member(const Element& e) const = 0;
  virtual Element mul(const Element& a, const Element& b) const = 0;
  virtual Element exp(const Element& base, const Scalar& s) const = 0;
  virtual Element exp_base(const Scalar& s) const { return exp(generator(), s); }
};

const Group& tiny_group();
const Group& production_group();
const Group& group_for(Backend b);

GroupParams small_test_params();
GroupParams production_params();

/// H_k over `parts`, read as a big-endian integer and reduced mod q. A zero
/// result is retried with a one-byte counter (0, 1, ...) appended to the
/// input until the value is nonzero. Always lands in [1, q-1].
Scalar hash_to_scalar(Domain k, std::initializer_list<ByteView> parts, const Group& g);
inline Scalar hash_to_scalar(Domain k, ByteView data, const Group& g) {
  return hash_to_scalar(k, {data}, g);
}

}  // namespace hases
