#pragma once

// Single-signer aggregate Schnorr-style signatures.
//
// A batch of L messages signed in epoch j gives one scalar s_agg plus the
// 32-byte seed x_j. All nonces come from hashing the secret y with j, so the
// signer never touches the group; the CCO rederives the same nonces from
// msk and publishes R = alpha^(sum r_l). Verification checks
//     R == Y^(sum e_l) * alpha^(s_agg).

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hases/common.hpp"
#include "hases/group.hpp"
#include "hases/hash.hpp"

namespace hases {

inline constexpr std::uint8_t kLaSignatureTag = 0x02;
inline constexpr std::uint8_t kLaCommitmentTag = 0x12;

struct LaParams {
  Backend backend = Backend::ristretto255;
  std::uint64_t J = 1024;  // batches per signer
  std::uint32_t L = 8;     // messages per batch

  const Group& group() const { return group_for(backend); }
  void validate() const;
  bool operator==(const LaParams&) const = default;
};

struct LaAggSignature {
  SignerId id;
  std::uint64_t epoch = 0;
  Scalar s_agg;
  Digest x_seed;

  /// tag 0x02 || id || be64(epoch) || s_agg || x_seed
  Bytes serialize() const;
  /// Rejects scalars that are not below the group order.
  static LaAggSignature parse(ByteView in, const Group& g);
  static constexpr std::size_t payload_size() { return 64; }
  bool operator==(const LaAggSignature&) const = default;
};

struct LaCommitment {
  SignerId id;
  std::uint64_t epoch = 0;
  std::uint32_t L = 0;
  Element R;

  /// tag 0x12 || id || be64(epoch) || be32(L) || R
  Bytes serialize() const;
  static LaCommitment parse(ByteView in, const Group& g);
  bool operator==(const LaCommitment&) const = default;
};

struct LaPublicKey {
  SignerId id;
  Element Y;
};

/// Intermediate values of one batch signature. Both the signer and the CCO
/// walk the same derivation; tests use it to check the algebra per message.
struct LaTranscript {
  Digest x_seed;
  Digest r_seed;
  std::vector<Scalar> r;
  std::vector<Scalar> e;
  std::vector<Scalar> s;
};

LaTranscript la_transcript(const Scalar& y, std::uint64_t epoch, std::span<const Bytes> batch,
                           const Group& g);

/// y = H0(msk || id) reduced into [1, q-1].
Scalar la_secret_key(const Digest& msk, const SignerId& id, const Group& g);

class LaSigner {
 public:
  LaSigner(SignerId id, const Scalar& y, std::uint64_t epoch, LaParams params);
  ~LaSigner();
  LaSigner(const LaSigner&) = default;
  LaSigner& operator=(const LaSigner&) = default;
  LaSigner(LaSigner&&) noexcept = default;
  LaSigner& operator=(LaSigner&&) noexcept = default;

  const SignerId& id() const { return id_; }
  std::uint64_t epoch() const { return epoch_; }
  const LaParams& params() const { return params_; }
  const Scalar& secret() const { return y_; }
  bool exhausted() const { return epoch_ > params_.J; }
  LaPublicKey public_key() const;

  /// Signs exactly L messages under the current epoch and advances it.
  LaAggSignature sign(std::span<const Bytes> batch);

 private:
  SignerId id_;
  Scalar y_;
  std::uint64_t epoch_;
  LaParams params_;
};

struct LaKeys {
  Digest msk;
  LaParams params;
  std::vector<LaSigner> signers;
  std::vector<LaPublicKey> publics;
};

LaKeys la_keygen(std::span<const SignerId> ids, const LaParams& params,
                 std::optional<Digest> msk = std::nullopt);

/// Sum of the parts mod q.
Scalar la_agg(std::span<const Scalar> parts, const Group& g);

/// R = alpha^(sum_l r_l) for the batch of L messages signed in `epoch`.
/// Throws EpochRange outside [1, J].
LaCommitment la_com_construct(const Digest& msk, const SignerId& id, std::uint64_t epoch,
                              std::uint32_t L, const LaParams& params);

Verdict la_aver(const Element& Y, const LaCommitment& commitment, std::span<const Bytes> batch,
                const LaAggSignature& sig, const Group& g);

}  // namespace hases
