#pragma once

// Forward-secure hash-based signatures with oracle-supplied commitments.
//
// Each epoch j has a secret sk_j on the signer's hash chain sk_{j+1} =
// H1(sk_j), rooted at sk_1 = H0(msk || id). One epoch signs one message with
// a HORS-style reveal of k out of t secret values; the t-entry commitment
// for the epoch is rebuilt on demand by the CCO from msk plus J1-1 stored
// chain anchors, so it never has to come from the signer.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hases/common.hpp"
#include "hases/hash.hpp"

namespace hases {

inline constexpr std::uint8_t kPqSignatureTag = 0x01;
inline constexpr std::uint8_t kPqCommitmentTag = 0x11;

struct PqParams {
  std::uint32_t k = 16;    // indices revealed per signature
  std::uint32_t t = 1024;  // commitment entries; power of two
  std::uint64_t J1 = 1;    // anchor segments held by the CCO
  std::uint64_t J2 = std::uint64_t{1} << 20;

  /// t=1024, k=16, J = J1*J2 (default 2^20 epochs).
  static PqParams standard(std::uint64_t J1 = 1, std::uint64_t J2 = std::uint64_t{1} << 20);
  /// t=8, k=4, J = J1*J2 (default 16 epochs); small enough for exhaustive tests.
  static PqParams toy(std::uint64_t J1 = 1, std::uint64_t J2 = 16);

  std::uint64_t epochs() const { return J1 * J2; }
  unsigned index_bits() const;
  void validate() const;
  bool operator==(const PqParams&) const = default;
};

struct PqSignature {
  SignerId id;
  std::uint64_t epoch = 0;
  std::vector<Digest> s;

  /// tag 0x01 || id || be64(epoch) || s_1 .. s_k
  Bytes serialize() const;
  static PqSignature parse(ByteView in);
  std::size_t payload_size() const { return s.size() * Digest::size; }
  bool operator==(const PqSignature&) const = default;
};

struct PqCommitment {
  SignerId id;
  std::uint64_t epoch = 0;
  std::vector<Digest> v;  // v[x] commits to the secret for HORS index x

  /// tag 0x11 || id || be64(epoch) || v_0 .. v_{t-1}
  Bytes serialize() const;
  static PqCommitment parse(ByteView in);
  bool operator==(const PqCommitment&) const = default;
};

/// Signer-side evolving key. Single writer: callers serialise sign/update.
class PqSigner {
 public:
  PqSigner(SignerId id, const Digest& key, std::uint64_t epoch, PqParams params);
  PqSigner(const PqSigner&) = default;
  PqSigner& operator=(const PqSigner&) = default;
  PqSigner(PqSigner&&) noexcept = default;
  PqSigner& operator=(PqSigner&&) noexcept = default;
  ~PqSigner();

  const SignerId& id() const { return id_; }
  std::uint64_t epoch() const { return epoch_; }
  const PqParams& params() const { return params_; }
  const Digest& key() const { return key_; }
  bool exhausted() const { return epoch_ > params_.epochs(); }

  /// Signs under the current epoch, then evolves the key. The returned
  /// signature carries the epoch it was made in.
  PqSignature sign(ByteView message);
  /// sk <- H1(sk), old key wiped, epoch + 1.
  void update();

 private:
  SignerId id_;
  Digest key_;
  std::uint64_t epoch_;
  PqParams params_;
};

/// CCO-side secrets: master key plus, per signer, the anchors
/// sk_{j1*J2+1} for j1 = 1 .. J1-1.
struct PqKeyMaterial {
  Digest msk;
  PqParams params;
  std::map<SignerId, std::vector<Digest>> anchors;

  bool knows(const SignerId& id) const { return anchors.contains(id); }
  Digest initial_key(const SignerId& id) const;
  /// Re-splits J = J1' * J2' and rebuilds every anchor table by walking
  /// each chain from sk_1. Throws InvalidParams if J1' does not divide J.
  void set_storage_policy(std::uint64_t J1);
  std::size_t anchor_bytes() const;
};

struct PqKeys {
  PqKeyMaterial cco;
  std::vector<PqSigner> signers;
};

/// Derives sk_1 for every id and the CCO anchor tables. `msk` is drawn from
/// the CSPRNG unless supplied. Throws DuplicateId / InvalidParams.
PqKeys pq_keygen(std::span<const SignerId> ids, const PqParams& params,
                 std::optional<Digest> msk = std::nullopt);

std::vector<Digest> pq_anchors(const Digest& initial_key, const PqParams& params);

/// H0(message) cut into k big-endian windows of log2(t) bits, taken from
/// the most significant end.
std::vector<std::uint32_t> message_to_indices(ByteView message, const PqParams& params);

/// Commitment for (id, epoch), chain-walking at most J2-1 steps from the
/// nearest anchor. Throws UnknownId / EpochRange.
PqCommitment pq_com_construct(const PqKeyMaterial& store, const SignerId& id, std::uint64_t epoch);

/// Commitment straight from an epoch key; shared by the CCO and the tests.
PqCommitment pq_commitment_from_key(const SignerId& id, std::uint64_t epoch, const Digest& key,
                                    const PqParams& params);

Verdict pq_verify(const PqCommitment& commitment, ByteView message, const PqSignature& sig,
                  const PqParams& params);

}  // namespace hases
