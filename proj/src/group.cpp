#include "hases/group.hpp"

#include <sodium.h>

#include <algorithm>
#include <vector>

namespace hases {
namespace {

void init_sodium() {
  static const bool ok = sodium_init() >= 0;
  if (!ok) throw Error("libsodium initialisation failed");
}

std::uint64_t be_to_u64(const std::array<std::uint8_t, 32>& b) {
  std::uint64_t v = 0;
  for (std::size_t i = 24; i < 32; ++i) v = v << 8 | b[i];
  return v;
}

std::array<std::uint8_t, 32> u64_to_be(std::uint64_t v) {
  std::array<std::uint8_t, 32> out{};
  for (int i = 31; i >= 24; --i) {
    out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(v & 0xff);
    v >>= 8;
  }
  return out;
}

bool high_bytes_zero(const std::array<std::uint8_t, 32>& b) {
  return std::all_of(b.begin(), b.begin() + 24, [](auto x) { return x == 0; });
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

// Schnorr subgroup of Z_p^* with word-sized p. Only the p=23 instance ships.
class TinyGroup final : public Group {
 public:
  TinyGroup(std::uint64_t p, std::uint64_t q, std::uint64_t alpha) : p_(p), q_(q) {
    params_.backend = Backend::tiny;
    params_.p = u64_to_be(p);
    params_.q = u64_to_be(q);
    params_.alpha.bytes = u64_to_be(alpha);
  }

  const GroupParams& params() const override { return params_; }
  unsigned order_bits() const override {
    unsigned bits = 0;
    for (auto v = q_; v; v >>= 1) ++bits;
    return bits;
  }

  Scalar reduce(ByteView be) const override {
    if (be.size() > 32) throw InvalidParams("scalar input wider than 32 bytes");
    std::uint64_t acc = 0;
    for (auto b : be) acc = (acc * 256 + b) % q_;
    return Scalar::from_u64(acc);
  }
  bool is_canonical(const Scalar& s) const override {
    return high_bytes_zero(s.bytes) && s.low_u64() < q_;
  }
  Scalar add(const Scalar& a, const Scalar& b) const override {
    return Scalar::from_u64((val(a) + val(b)) % q_);
  }
  Scalar sub(const Scalar& a, const Scalar& b) const override {
    return Scalar::from_u64((val(a) + q_ - val(b)) % q_);
  }
  Scalar mul(const Scalar& a, const Scalar& b) const override {
    return Scalar::from_u64(mulmod(val(a), val(b), q_));
  }

  Element identity() const override { return elem(1); }
  bool is_member(const Element& e) const override {
    if (!high_bytes_zero(e.bytes)) return false;
    auto v = be_to_u64(e.bytes);
    return v >= 1 && v < p_ && powmod(v, q_, p_) == 1;
  }
  Element mul(const Element& a, const Element& b) const override {
    return elem(mulmod(be_to_u64(a.bytes), be_to_u64(b.bytes), p_));
  }
  Element exp(const Element& base, const Scalar& s) const override {
    return elem(powmod(be_to_u64(base.bytes), val(s), p_));
  }

 private:
  std::uint64_t val(const Scalar& s) const { return reduce(s.bytes).low_u64(); }
  static Element elem(std::uint64_t v) { return Element{u64_to_be(v)}; }

  std::uint64_t p_, q_;
  GroupParams params_;
};

// libsodium scalars are little-endian; our wire format is big-endian.
std::array<std::uint8_t, 32> flip(const std::array<std::uint8_t, 32>& in) {
  std::array<std::uint8_t, 32> out;
  std::reverse_copy(in.begin(), in.end(), out.begin());
  return out;
}

class RistrettoGroup final : public Group {
 public:
  RistrettoGroup() {
    init_sodium();
    params_.backend = Backend::ristretto255;
    // p = 2^255 - 19
    params_.p.fill(0xff);
    params_.p[0] = 0x7f;
    params_.p[31] = 0xed;
    // q = 2^252 + 27742317777372353535851937790883648493
    static constexpr std::uint8_t order[32] = {
        0x10, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00, 0x00,
        0x00, 0x00, 0x00, 0x00, 0x00, 0x14, 0xde, 0xf9, 0xde, 0xa2, 0xf7,
        0x9c, 0xd6, 0x58, 0x12, 0x63, 0x1a, 0x5c, 0xf5, 0xd3, 0xed};
    std::copy(std::begin(order), std::end(order), params_.q.begin());
    Scalar one = Scalar::from_u64(1);
    auto le = flip(one.bytes);
    crypto_scalarmult_ristretto255_base(params_.alpha.bytes.data(), le.data());
  }

  const GroupParams& params() const override { return params_; }
  unsigned order_bits() const override { return 253; }

  Scalar reduce(ByteView be) const override {
    if (be.size() > 32) throw InvalidParams("scalar input wider than 32 bytes");
    std::array<std::uint8_t, crypto_core_ristretto255_NONREDUCEDSCALARBYTES> wide{};
    for (std::size_t i = 0; i < be.size(); ++i) wide[i] = be[be.size() - 1 - i];
    std::array<std::uint8_t, 32> le{};
    crypto_core_ristretto255_scalar_reduce(le.data(), wide.data());
    return Scalar{flip(le)};
  }
  bool is_canonical(const Scalar& s) const override {
    return std::lexicographical_compare(s.bytes.begin(), s.bytes.end(), params_.q.begin(),
                                        params_.q.end());
  }
  Scalar add(const Scalar& a, const Scalar& b) const override {
    return binary(a, b, crypto_core_ristretto255_scalar_add);
  }
  Scalar sub(const Scalar& a, const Scalar& b) const override {
    return binary(a, b, crypto_core_ristretto255_scalar_sub);
  }
  Scalar mul(const Scalar& a, const Scalar& b) const override {
    return binary(a, b, crypto_core_ristretto255_scalar_mul);
  }

  Element identity() const override { return Element{}; }
  bool is_member(const Element& e) const override {
    return e == identity() || crypto_core_ristretto255_is_valid_point(e.bytes.data()) == 1;
  }
  Element mul(const Element& a, const Element& b) const override {
    if (a == identity()) return b;
    if (b == identity()) return a;
    Element out;
    if (crypto_core_ristretto255_add(out.bytes.data(), a.bytes.data(), b.bytes.data()) != 0)
      throw InvalidParams("not a ristretto255 element");
    return out;
  }
  Element exp(const Element& base, const Scalar& s) const override {
    if (base == identity() || s.is_zero()) return identity();
    auto le = flip(reduce(s.bytes).bytes);
    Element out;
    // Fails only when the product is the identity (or the base is invalid).
    if (crypto_scalarmult_ristretto255(out.bytes.data(), le.data(), base.bytes.data()) != 0) {
      if (!is_member(base)) throw InvalidParams("not a ristretto255 element");
      return identity();
    }
    return out;
  }
  Element exp_base(const Scalar& s) const override {
    if (s.is_zero()) return identity();
    auto le = flip(reduce(s.bytes).bytes);
    Element out;
    if (crypto_scalarmult_ristretto255_base(out.bytes.data(), le.data()) != 0) return identity();
    return out;
  }

 private:
  using ScalarOp = void (*)(unsigned char*, const unsigned char*, const unsigned char*);

  Scalar binary(const Scalar& a, const Scalar& b, ScalarOp op) const {
    auto la = flip(a.bytes);
    auto lb = flip(b.bytes);
    std::array<std::uint8_t, 32> out{};
    op(out.data(), la.data(), lb.data());
    return Scalar{flip(out)};
  }

  GroupParams params_;
};

}  // namespace

Backend parse_backend(std::string_view name) {
  if (name == "tiny") return Backend::tiny;
  if (name == "production" || name == "ristretto255") return Backend::ristretto255;
  throw InvalidParams("unknown group backend '" + std::string(name) + "'");
}

const char* to_string(Backend b) {
  return b == Backend::tiny ? "tiny" : "ristretto255";
}

Scalar Scalar::from_u64(std::uint64_t v) { return Scalar{u64_to_be(v)}; }

bool Scalar::is_zero() const {
  return std::all_of(bytes.begin(), bytes.end(), [](auto b) { return b == 0; });
}

std::uint64_t Scalar::low_u64() const { return be_to_u64(bytes); }

const Group& tiny_group() {
  static const TinyGroup g(23, 11, 2);
  return g;
}

const Group& production_group() {
  static const RistrettoGroup g;
  return g;
}

const Group& group_for(Backend b) {
  switch (b) {
    case Backend::tiny:
      return tiny_group();
    case Backend::ristretto255:
      return production_group();
  }
  throw InvalidParams("unknown group backend tag");
}

GroupParams small_test_params() { return tiny_group().params(); }
GroupParams production_params() { return production_group().params(); }

Scalar hash_to_scalar(Domain k, std::initializer_list<ByteView> parts, const Group& g) {
  Scalar s = g.reduce(hash(k, parts).view());
  if (!s.is_zero()) return s;
  Bytes joined;
  for (auto p : parts) joined.insert(joined.end(), p.begin(), p.end());
  for (unsigned retry = 0; retry <= 0xff; ++retry) {
    const std::uint8_t ctr = static_cast<std::uint8_t>(retry);
    s = g.reduce(hash(k, {ByteView(joined), ByteView(&ctr, 1)}).view());
    if (!s.is_zero()) return s;
  }
  throw Error("hash_to_scalar: retry counter exhausted");
}

}  // namespace hases
