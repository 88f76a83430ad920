#include "hases/cco.hpp"

#include <mutex>
#include <set>

namespace hases {
namespace {

constexpr std::uint8_t kRegistryVersion = 1;

bool has_pq(Scheme s) { return s == Scheme::pq || s == Scheme::hy; }
bool has_la(Scheme s) { return s == Scheme::la || s == Scheme::hy; }

Bytes response(MessageType type, Status status, ByteView payload = {}) {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(type) | kResponseBit).u8(static_cast<std::uint8_t>(status));
  w.raw(payload);
  return w.take();
}

}  // namespace

Scheme parse_scheme(std::string_view name) {
  if (name == "pq") return Scheme::pq;
  if (name == "la") return Scheme::la;
  if (name == "hy") return Scheme::hy;
  throw InvalidParams("unknown scheme '" + std::string(name) + "' (expected pq, la or hy)");
}

const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::pq:
      return "pq";
    case Scheme::la:
      return "la";
    case Scheme::hy:
      return "hy";
  }
  return "?";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::ok:
      return "OK";
    case Status::unknown_id:
      return "UNKNOWN_ID";
    case Status::epoch_range:
      return "EPOCH_RANGE";
    case Status::malformed:
      return "MALFORMED";
    case Status::rejected:
      return "REJECTED";
  }
  return "?";
}

ProvisioningBundle ProvisioningBundle::from(const PqKeys& keys) {
  ProvisioningBundle b;
  b.scheme = Scheme::pq;
  for (const auto& s : keys.signers) b.ids.push_back(s.id());
  b.pq = keys.cco;
  return b;
}

ProvisioningBundle ProvisioningBundle::from(const LaKeys& keys) {
  ProvisioningBundle b;
  b.scheme = Scheme::la;
  for (const auto& s : keys.signers) b.ids.push_back(s.id());
  b.la = LaCcoSecret{keys.msk, keys.params};
  return b;
}

ProvisioningBundle ProvisioningBundle::from(const HyKeys& keys) {
  ProvisioningBundle b;
  b.scheme = Scheme::hy;
  for (const auto& s : keys.signers) b.ids.push_back(s.id());
  b.pq = keys.pq.cco;
  b.la = LaCcoSecret{keys.la.msk, keys.la.params};
  return b;
}

void ProvisioningBundle::validate() const {
  if (ids.empty()) throw InvalidParams("bundle has no signers");
  std::set<SignerId> seen(ids.begin(), ids.end());
  if (seen.size() != ids.size()) throw DuplicateId("bundle repeats a signer id");
  if (has_pq(scheme) != pq.has_value() || has_la(scheme) != la.has_value())
    throw InvalidParams("bundle contents do not match its scheme");
  if (pq) {
    pq->params.validate();
    if (pq->anchors.size() != ids.size()) throw InvalidParams("anchor tables do not match ids");
    for (const auto& id : ids) {
      auto it = pq->anchors.find(id);
      if (it == pq->anchors.end() || it->second.size() != pq->params.J1 - 1)
        throw InvalidParams("anchor table for " + id.hex() + " has the wrong size");
    }
  }
  if (la) la->params.validate();
  if (scheme == Scheme::hy) HyParams{la->params, pq->params}.validate();
}

Bytes ProvisioningBundle::registry() const {
  ByteWriter w;
  w.u8(kRegistryVersion).u8(static_cast<std::uint8_t>(scheme));
  w.u32(static_cast<std::uint32_t>(ids.size()));
  for (const auto& id : ids) w.id(id);
  if (pq) w.u32(pq->params.k).u32(pq->params.t).u64(pq->params.J1).u64(pq->params.J2);
  if (la) w.u8(static_cast<std::uint8_t>(la->params.backend)).u64(la->params.J).u32(la->params.L);
  return w.take();
}

Bytes ProvisioningBundle::secrets() const {
  ByteWriter w;
  if (la) w.raw(la->msk.view());
  if (pq) w.raw(pq->msk.view());
  return w.take();
}

Bytes ProvisioningBundle::anchor_table() const {
  ByteWriter w;
  if (pq)
    for (const auto& id : ids)
      for (const auto& d : pq->anchors.at(id)) w.raw(d.view());
  return w.take();
}

ProvisioningBundle ProvisioningBundle::from_parts(ByteView registry, ByteView secrets,
                                                  ByteView anchors) {
  ByteReader r(registry);
  if (r.u8() != kRegistryVersion) throw FormatError("unsupported registry version");
  ProvisioningBundle b;
  const auto tag = r.u8();
  if (tag < 1 || tag > 3) throw FormatError("unknown scheme tag in registry");
  b.scheme = static_cast<Scheme>(tag);
  const auto n = r.u32();
  if (n == 0 || n > r.remaining() / 16) throw FormatError("bad signer count in registry");
  for (std::uint32_t i = 0; i < n; ++i) b.ids.push_back(r.id());

  ByteReader sec(secrets);
  std::optional<PqParams> pq_params;
  if (has_pq(b.scheme)) {
    PqParams p;
    p.k = r.u32();
    p.t = r.u32();
    p.J1 = r.u64();
    p.J2 = r.u64();
    pq_params = p;
  }
  if (has_la(b.scheme)) {
    LaCcoSecret la;
    const auto backend = r.u8();
    if (backend != static_cast<std::uint8_t>(Backend::tiny) &&
        backend != static_cast<std::uint8_t>(Backend::ristretto255))
      throw FormatError("unknown group backend tag");
    la.params.backend = static_cast<Backend>(backend);
    la.params.J = r.u64();
    la.params.L = r.u32();
    la.msk.bytes = sec.fixed<32>();
    b.la = la;
  }
  r.expect_end();
  if (pq_params) {
    try {
      pq_params->validate();
    } catch (const InvalidParams& e) {
      throw FormatError(std::string("registry: ") + e.what());
    }
    PqKeyMaterial m;
    m.params = *pq_params;
    m.msk.bytes = sec.fixed<32>();
    ByteReader a(anchors);
    for (const auto& id : b.ids) {
      auto& table = m.anchors[id];
      for (std::uint64_t i = 1; i < m.params.J1; ++i) {
        Digest d;
        d.bytes = a.fixed<32>();
        table.push_back(d);
      }
    }
    a.expect_end();
    b.pq = std::move(m);
  } else if (!anchors.empty()) {
    throw FormatError("anchors supplied for a scheme without a hash layer");
  }
  sec.expect_end();
  return b;
}

Bytes ProvisioningBundle::serialize() const {
  auto reg = registry();
  auto sec = secrets();
  ByteWriter w;
  w.u32(static_cast<std::uint32_t>(reg.size())).raw(reg);
  w.u32(static_cast<std::uint32_t>(sec.size())).raw(sec);
  w.raw(anchor_table());
  return w.take();
}

ProvisioningBundle ProvisioningBundle::parse(ByteView in) {
  ByteReader r(in);
  auto reg = r.raw(r.u32());
  auto sec = r.raw(r.u32());
  auto anchors = r.raw(r.remaining());
  return from_parts(reg, sec, anchors);
}

Bytes encode_export(const std::vector<Bytes>& commitments) {
  ByteWriter w;
  w.u64(commitments.size());
  for (const auto& c : commitments) {
    if (c.size() != commitments.front().size())
      throw InvalidParams("export entries must have equal size");
    w.raw(c);
  }
  return w.take();
}

std::vector<Bytes> decode_export(ByteView in) {
  ByteReader r(in);
  const auto count = r.u64();
  std::vector<Bytes> out;
  if (count == 0) {
    r.expect_end();
    return out;
  }
  if (count > r.remaining() || r.remaining() % count != 0)
    throw FormatError("export body does not split into equal entries");
  const auto each = r.remaining() / count;
  for (std::uint64_t i = 0; i < count; ++i) {
    auto e = r.raw(each);
    out.emplace_back(e.begin(), e.end());
  }
  return out;
}

void CcoStore::provision(const ProvisioningBundle& bundle) {
  bundle.validate();
  std::unique_lock lock(mu_);
  for (const auto& id : bundle.ids)
    if (registry_.contains(id)) throw DuplicateId("signer " + id.hex() + " already provisioned");
  auto c = std::make_shared<Ceremony>(Ceremony{bundle.scheme, bundle.pq, bundle.la});
  ceremonies_.push_back(c);
  for (const auto& id : bundle.ids) registry_[id] = c;
}

void CcoStore::set_storage_policy(std::uint64_t J1) {
  std::unique_lock lock(mu_);
  for (const auto& c : ceremonies_)
    if (c->pq && (J1 == 0 || c->pq->params.epochs() % J1 != 0))
      throw InvalidParams("J1=" + std::to_string(J1) + " does not divide J=" +
                          std::to_string(c->pq->params.epochs()));
  for (const auto& c : ceremonies_)
    if (c->pq) c->pq->set_storage_policy(J1);
}

const CcoStore::Ceremony& CcoStore::lookup(const SignerId& id, Scheme need) const {
  auto it = registry_.find(id);
  if (it == registry_.end()) throw UnknownId("unknown signer " + id.hex());
  const auto& c = *it->second;
  if ((has_pq(need) && !c.pq) || (has_la(need) && !c.la))
    throw UnknownId("signer " + id.hex() + " is not provisioned for " + to_string(need));
  return c;
}

Bytes CcoStore::commitment_bytes(Scheme scheme, const SignerId& id, std::uint64_t epoch,
                                 std::uint32_t L) const {
  const auto& c = lookup(id, scheme);
  if (has_la(scheme) && (L == 0 || L > kMaxBatchSize))
    throw InvalidParams("batch size out of range");
  switch (scheme) {
    case Scheme::pq:
      return pq_com_construct(*c.pq, id, epoch).serialize();
    case Scheme::la:
      return la_com_construct(c.la->msk, id, epoch, L, c.la->params).serialize();
    case Scheme::hy:
      return hy_com_construct(c.la->msk, c.la->params, *c.pq, id, epoch, L).serialize();
  }
  throw InvalidParams("unknown scheme");
}

PqCommitment CcoStore::pq_commitment(const SignerId& id, std::uint64_t epoch) const {
  std::shared_lock lock(mu_);
  return pq_com_construct(*lookup(id, Scheme::pq).pq, id, epoch);
}

LaCommitment CcoStore::la_commitment(const SignerId& id, std::uint64_t epoch,
                                     std::uint32_t L) const {
  std::shared_lock lock(mu_);
  const auto& c = lookup(id, Scheme::la);
  return la_com_construct(c.la->msk, id, epoch, L, c.la->params);
}

HyCommitment CcoStore::hy_commitment(const SignerId& id, std::uint64_t epoch,
                                     std::uint32_t L) const {
  std::shared_lock lock(mu_);
  const auto& c = lookup(id, Scheme::hy);
  return hy_com_construct(c.la->msk, c.la->params, *c.pq, id, epoch, L);
}

std::vector<Bytes> CcoStore::batch_export(Scheme scheme, const SignerId& id, std::uint64_t from,
                                          std::uint64_t to, std::uint32_t L) const {
  std::shared_lock lock(mu_);
  const auto& c = lookup(id, scheme);
  const std::uint64_t J = c.pq ? c.pq->params.epochs() : c.la->params.J;
  if (from < 1 || from > to || to > J)
    throw EpochRange("export range [" + std::to_string(from) + ", " + std::to_string(to) +
                     "] outside [1, " + std::to_string(J) + "]");
  if (to - from + 1 > kMaxExportEntries) throw InvalidParams("export range too long");
  std::vector<Bytes> out;
  for (std::uint64_t j = from; j <= to; ++j) out.push_back(commitment_bytes(scheme, id, j, L));
  return out;
}

StoreStats CcoStore::stats() const {
  std::shared_lock lock(mu_);
  StoreStats s;
  s.signers = registry_.size();
  for (const auto& c : ceremonies_) {
    if (c->pq) {
      s.anchor_bytes += c->pq->anchor_bytes();
      s.secret_bytes += Digest::size;
    }
    if (c->la) s.secret_bytes += Digest::size;
  }
  return s;
}

bool CcoStore::knows(const SignerId& id) const {
  std::shared_lock lock(mu_);
  return registry_.contains(id);
}

Bytes CcoStore::handle_request(ByteView request) {
  if (request.empty()) return response(MessageType::pq_request, Status::malformed);
  const auto type = static_cast<MessageType>(request[0]);
  ByteReader r(request.subspan(1));
  try {
    switch (type) {
      case MessageType::pq_request:
      case MessageType::la_request:
      case MessageType::hy_request: {
        const auto scheme = static_cast<Scheme>(request[0]);
        const auto id = r.id();
        const auto epoch = r.u64();
        const std::uint32_t L = scheme == Scheme::pq ? 0 : r.u32();
        r.expect_end();
        Bytes body;
        {
          std::shared_lock lock(mu_);
          body = commitment_bytes(scheme, id, epoch, L);
        }
        return response(type, Status::ok, body);
      }
      case MessageType::batch_export: {
        const auto tag = r.u8();
        if (tag < 1 || tag > 3) throw FormatError("unknown scheme tag");
        const auto id = r.id();
        const auto from = r.u64();
        const auto to = r.u64();
        const auto L = r.u32();
        r.expect_end();
        return response(type, Status::ok,
                        encode_export(batch_export(static_cast<Scheme>(tag), id, from, to, L)));
      }
      case MessageType::provision: {
        auto bundle = ProvisioningBundle::parse(r.raw(r.remaining()));
        try {
          provision(bundle);
        } catch (const DuplicateId&) {
          return response(type, Status::rejected);
        } catch (const InvalidParams&) {
          return response(type, Status::rejected);
        }
        return response(type, Status::ok);
      }
      case MessageType::storage_policy: {
        const auto J1 = r.u64();
        r.expect_end();
        try {
          set_storage_policy(J1);
        } catch (const InvalidParams&) {
          return response(type, Status::rejected);
        }
        return response(type, Status::ok);
      }
    }
    return response(type, Status::malformed);
  } catch (const UnknownId&) {
    return response(type, Status::unknown_id);
  } catch (const EpochRange&) {
    return response(type, Status::epoch_range);
  } catch (const Error&) {
    return response(type, Status::malformed);
  }
}

}  // namespace hases
