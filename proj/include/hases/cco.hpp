#pragma once

// Commitment Construct Oracle: holds master secrets and chain anchors for
// every provisioned signer and answers per-epoch commitment requests.
//
// Wire messages (the frame body after the 4-byte length prefix):
//   request  = type(1) || body
//   response = (0x80 | type)(1) || status(1) || payload
//
//   0x01 PQ       id(16) || be64(j)                          -> PqCommitment
//   0x02 LA       id(16) || be64(j) || be32(L)               -> LaCommitment
//   0x03 HY       id(16) || be64(j) || be32(L)               -> HyCommitment
//   0x04 EXPORT   scheme(1) || id || be64(from) || be64(to) || be32(L)
//                                                            -> export file
//   0x05 PROVISION  provisioning bundle                      -> (empty)
//   0x06 POLICY     be64(J1)                                 -> (empty)
//
// The oracle never verifies anything and never returns key material. Its
// responses are not authenticated; deploy it where verifiers can trust the
// channel.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <vector>

#include "hases/hy.hpp"
#include "hases/la.hpp"
#include "hases/pq.hpp"

namespace hases {

enum class Scheme : std::uint8_t { pq = 0x01, la = 0x02, hy = 0x03 };

Scheme parse_scheme(std::string_view name);
const char* to_string(Scheme s);

enum class MessageType : std::uint8_t {
  pq_request = 0x01,
  la_request = 0x02,
  hy_request = 0x03,
  batch_export = 0x04,
  provision = 0x05,
  storage_policy = 0x06,
};

inline constexpr std::uint8_t kResponseBit = 0x80;

enum class Status : std::uint8_t {
  ok = 0x00,
  unknown_id = 0x01,
  epoch_range = 0x02,
  malformed = 0x03,
  rejected = 0x04,  // provisioning or policy change refused
};

const char* to_string(Status s);

/// Raised by clients when the oracle answers with a non-OK status.
class CcoError : public Error {
 public:
  CcoError(Status status, const std::string& what) : Error(what), status_(status) {}
  Status status() const { return status_; }

 private:
  Status status_;
};

inline constexpr std::size_t kMaxExportEntries = 1024;
inline constexpr std::uint32_t kMaxBatchSize = 1u << 16;

/// The aggregate scheme's CCO-side secret.
struct LaCcoSecret {
  Digest msk;
  LaParams params;
};

/// Everything keygen hands to the oracle, in three separable parts:
///   registry  public: scheme, ids, parameters
///   secrets   master keys (32 bytes per scheme)
///   anchors   per signer, J1-1 chain anchors (hash-layer schemes only)
struct ProvisioningBundle {
  Scheme scheme = Scheme::pq;
  std::vector<SignerId> ids;
  std::optional<PqKeyMaterial> pq;
  std::optional<LaCcoSecret> la;

  static ProvisioningBundle from(const PqKeys& keys);
  static ProvisioningBundle from(const LaKeys& keys);
  static ProvisioningBundle from(const HyKeys& keys);

  Bytes registry() const;
  Bytes secrets() const;
  Bytes anchor_table() const;
  static ProvisioningBundle from_parts(ByteView registry, ByteView secrets, ByteView anchors);

  /// be32(|registry|) || registry || be32(|secrets|) || secrets || anchors
  Bytes serialize() const;
  static ProvisioningBundle parse(ByteView in);

  void validate() const;
};

/// Offline export: be64(count) || count equally sized serialized commitments.
Bytes encode_export(const std::vector<Bytes>& commitments);
std::vector<Bytes> decode_export(ByteView in);

struct StoreStats {
  std::size_t signers = 0;
  std::size_t anchor_bytes = 0;
  std::size_t secret_bytes = 0;
};

class CcoStore {
 public:
  /// Throws DuplicateId if any id is already registered, InvalidParams if
  /// the bundle is inconsistent. All-or-nothing.
  void provision(const ProvisioningBundle& bundle);

  /// Re-splits every hash-layer ceremony to J1 anchors. Throws
  /// InvalidParams (and changes nothing) unless J1 divides every J.
  void set_storage_policy(std::uint64_t J1);

  PqCommitment pq_commitment(const SignerId& id, std::uint64_t epoch) const;
  LaCommitment la_commitment(const SignerId& id, std::uint64_t epoch, std::uint32_t L) const;
  HyCommitment hy_commitment(const SignerId& id, std::uint64_t epoch, std::uint32_t L) const;

  /// Serialized commitments for epochs [from, to].
  std::vector<Bytes> batch_export(Scheme scheme, const SignerId& id, std::uint64_t from,
                                  std::uint64_t to, std::uint32_t L) const;

  /// Decodes one request frame body and returns the response frame body.
  /// Never throws for bad input; failures map onto status codes.
  Bytes handle_request(ByteView request);

  StoreStats stats() const;
  bool knows(const SignerId& id) const;

 private:
  struct Ceremony {
    Scheme scheme;
    std::optional<PqKeyMaterial> pq;
    std::optional<LaCcoSecret> la;
  };

  const Ceremony& lookup(const SignerId& id, Scheme need) const;
  Bytes commitment_bytes(Scheme scheme, const SignerId& id, std::uint64_t epoch,
                         std::uint32_t L) const;

  mutable std::shared_mutex mu_;
  std::vector<std::shared_ptr<Ceremony>> ceremonies_;
  std::map<SignerId, std::shared_ptr<Ceremony>> registry_;
};

}  // namespace hases
