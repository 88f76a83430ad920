#pragma once

// Hybrid signatures by strong nesting: the aggregate scheme signs the
// batch's nested digests, and the forward-secure hash-based scheme signs
// s_agg || n_L. A hybrid signature verifies only if both layers do.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hases/la.hpp"
#include "hases/pq.hpp"

namespace hases {

inline constexpr std::uint8_t kHySignatureTag = 0x03;
inline constexpr std::uint8_t kHyCommitmentTag = 0x13;

/// n_1 = H0(m_1), n_l = H0(m_l || H0(n_{l-1})).
struct NestedDigest {
  std::vector<Digest> n;
  const Digest& last() const { return n.back(); }
  /// The digests as a batch for the aggregate layer.
  std::vector<Bytes> as_batch() const;
};

NestedDigest nest(std::span<const Bytes> batch);

/// 32-byte big-endian s_agg followed by n_L.
Bytes hy_inner_message(const Scalar& s_agg, const Digest& n_last);

struct HyParams {
  LaParams la;
  PqParams pq;

  /// Both layers must cover the same number of epochs.
  void validate() const;
  std::uint64_t epochs() const { return pq.epochs(); }
  bool operator==(const HyParams&) const = default;
};

struct HySignature {
  LaAggSignature la;
  PqSignature pq;

  /// tag 0x03 || id || be64(epoch) || s_agg || x_seed || s_1 .. s_k
  Bytes serialize() const;
  static HySignature parse(ByteView in, const Group& g);
  std::size_t payload_size() const {
    return LaAggSignature::payload_size() + pq.payload_size();
  }
  bool operator==(const HySignature&) const = default;
};

struct HyCommitment {
  LaCommitment la;
  PqCommitment pq;

  /// tag 0x13 || serialized LA commitment || serialized PQ commitment
  Bytes serialize() const;
  static HyCommitment parse(ByteView in, const Group& g);
  bool operator==(const HyCommitment&) const = default;
};

/// Both component signers, advanced in lockstep.
class HySigner {
 public:
  HySigner(LaSigner la, PqSigner pq);

  const SignerId& id() const { return la_.id(); }
  std::uint64_t epoch() const { return la_.epoch(); }
  bool exhausted() const { return la_.exhausted() || pq_.exhausted(); }
  const LaSigner& la() const { return la_; }
  const PqSigner& pq() const { return pq_; }
  HyParams params() const { return {la_.params(), pq_.params()}; }

  HySignature sign(std::span<const Bytes> batch);

 private:
  LaSigner la_;
  PqSigner pq_;
};

struct HyKeys {
  HyParams params;
  LaKeys la;
  PqKeys pq;
  std::vector<HySigner> signers;
};

HyKeys hy_keygen(std::span<const SignerId> ids, const HyParams& params,
                 std::optional<Digest> la_msk = std::nullopt,
                 std::optional<Digest> pq_msk = std::nullopt);

HyCommitment hy_com_construct(const Digest& la_msk, const LaParams& la_params,
                              const PqKeyMaterial& pq_store, const SignerId& id,
                              std::uint64_t epoch, std::uint32_t L);

Verdict hy_verify(const Element& Y, const HyCommitment& commitment, std::span<const Bytes> batch,
                  const HySignature& sig, const HyParams& params);

}  // namespace hases
