#pragma once

// On-disk artifacts: signer key files, public info files, signature lists.
//
// Signer file  = tag || body
//   0x01 PQ  id || be64(j) || sk || be32(k) || be32(t) || be64(J1) || be64(J2)
//   0x02 LA  id || be64(j) || y || u8(backend) || be64(J) || be32(L)
//   0x03 HY  LA body || PQ body
// Public file  = tag || body
//   0x21 PQ  id || be32(k) || be32(t) || be64(J1) || be64(J2)
//   0x22 LA  id || u8(backend) || be64(J) || be32(L) || Y
//   0x23 HY  LA body || be32(k) || be32(t) || be64(J1) || be64(J2)

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hases/cco.hpp"
#include "hases/hy.hpp"

namespace hases {

using SignerKey = std::variant<PqSigner, LaSigner, HySigner>;

Bytes encode_signer(const SignerKey& key);
SignerKey decode_signer(ByteView in);
Scheme scheme_of(const SignerKey& key);
const SignerId& id_of(const SignerKey& key);

struct PublicInfo {
  Scheme scheme = Scheme::pq;
  SignerId id;
  std::optional<PqParams> pq;
  std::optional<LaParams> la;
  Element Y;  // unused for PQ

  static PublicInfo of(const SignerKey& key);
  Bytes serialize() const;
  static PublicInfo parse(ByteView in);
  HyParams hy_params() const { return {*la, *pq}; }
};

/// be64(count) || (be32(len) || bytes)*
Bytes encode_list(const std::vector<Bytes>& items);
std::vector<Bytes> decode_list(ByteView in);

Bytes read_file(const std::string& path);
/// Writes to a sibling temp file and renames over `path`.
void write_file(const std::string& path, ByteView data);

}  // namespace hases
