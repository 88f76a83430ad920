#include "hases/pq.hpp"

#include <set>

namespace hases {
namespace {

bool is_pow2(std::uint64_t v) { return v && (v & (v - 1)) == 0; }

Digest secret_for_index(const Digest& key, std::uint64_t index) {
  return hash(Domain::h1, {key.view(), be64(index)});
}

std::vector<Digest> read_digests(ByteReader& r) {
  if (r.remaining() % Digest::size != 0) throw FormatError("digest list not a multiple of 32");
  std::vector<Digest> out(r.remaining() / Digest::size);
  for (auto& d : out) d.bytes = r.fixed<Digest::size>();
  return out;
}

}  // namespace

PqParams PqParams::standard(std::uint64_t J1, std::uint64_t J2) {
  PqParams p{16, 1024, J1, J2};
  p.validate();
  return p;
}

PqParams PqParams::toy(std::uint64_t J1, std::uint64_t J2) {
  PqParams p{4, 8, J1, J2};
  p.validate();
  return p;
}

unsigned PqParams::index_bits() const {
  unsigned bits = 0;
  while ((std::uint64_t{1} << bits) < t) ++bits;
  return bits;
}

void PqParams::validate() const {
  if (t < 2 || !is_pow2(t)) throw InvalidParams("t must be a power of two >= 2");
  if (k == 0) throw InvalidParams("k must be positive");
  if (std::uint64_t{k} * index_bits() > 256) throw InvalidParams("k*log2(t) exceeds 256 bits");
  if (J1 == 0 || J2 == 0) throw InvalidParams("J1 and J2 must be positive");
  if (J2 > UINT64_MAX / J1) throw InvalidParams("J1*J2 overflows");
}

Bytes PqSignature::serialize() const {
  ByteWriter w;
  w.u8(kPqSignatureTag).id(id).u64(epoch);
  for (const auto& d : s) w.raw(d.view());
  return w.take();
}

PqSignature PqSignature::parse(ByteView in) {
  ByteReader r(in);
  if (r.u8() != kPqSignatureTag) throw FormatError("not a PQ signature");
  PqSignature sig;
  sig.id = r.id();
  sig.epoch = r.u64();
  sig.s = read_digests(r);
  if (sig.s.empty()) throw FormatError("PQ signature has no components");
  return sig;
}

Bytes PqCommitment::serialize() const {
  ByteWriter w;
  w.u8(kPqCommitmentTag).id(id).u64(epoch);
  for (const auto& d : v) w.raw(d.view());
  return w.take();
}

PqCommitment PqCommitment::parse(ByteView in) {
  ByteReader r(in);
  if (r.u8() != kPqCommitmentTag) throw FormatError("not a PQ commitment");
  PqCommitment c;
  c.id = r.id();
  c.epoch = r.u64();
  c.v = read_digests(r);
  if (c.v.empty()) throw FormatError("PQ commitment has no entries");
  return c;
}

PqSigner::PqSigner(SignerId id, const Digest& key, std::uint64_t epoch, PqParams params)
    : id_(id), key_(key), epoch_(epoch), params_(params) {
  params_.validate();
  if (epoch_ == 0) throw InvalidParams("epochs start at 1");
}

PqSigner::~PqSigner() { secure_zero(key_.bytes); }

void PqSigner::update() {
  if (exhausted()) throw EpochExhausted("PQ signer exhausted all epochs");
  Digest next = hash(Domain::h1, key_.view());
  secure_zero(key_.bytes);
  key_ = next;
  secure_zero(next.bytes);
  ++epoch_;
}

PqSignature PqSigner::sign(ByteView message) {
  if (exhausted()) throw EpochExhausted("PQ signer exhausted all epochs");
  PqSignature sig;
  sig.id = id_;
  sig.epoch = epoch_;
  sig.s.reserve(params_.k);
  for (auto x : message_to_indices(message, params_)) sig.s.push_back(secret_for_index(key_, x));
  update();
  return sig;
}

Digest PqKeyMaterial::initial_key(const SignerId& id) const {
  return hash(Domain::h0, {msk.view(), id.bytes});
}

void PqKeyMaterial::set_storage_policy(std::uint64_t J1) {
  const auto J = params.epochs();
  if (J1 == 0 || J % J1 != 0)
    throw InvalidParams("J1=" + std::to_string(J1) + " does not divide J=" + std::to_string(J));
  PqParams next = params;
  next.J1 = J1;
  next.J2 = J / J1;
  std::map<SignerId, std::vector<Digest>> rebuilt;
  for (const auto& [id, old] : anchors) rebuilt[id] = pq_anchors(initial_key(id), next);
  for (auto& [id, table] : anchors)
    for (auto& d : table) secure_zero(d.bytes);
  anchors = std::move(rebuilt);
  params = next;
}

std::size_t PqKeyMaterial::anchor_bytes() const {
  std::size_t n = 0;
  for (const auto& [id, table] : anchors) n += table.size() * Digest::size;
  return n;
}

std::vector<Digest> pq_anchors(const Digest& initial_key, const PqParams& params) {
  std::vector<Digest> out;
  out.reserve(params.J1 - 1);
  Digest cur = initial_key;
  for (std::uint64_t j1 = 1; j1 < params.J1; ++j1) {
    cur = iter_hash(Domain::h1, cur, params.J2);
    out.push_back(cur);
  }
  return out;
}

PqKeys pq_keygen(std::span<const SignerId> ids, const PqParams& params,
                 std::optional<Digest> msk) {
  params.validate();
  if (ids.empty()) throw InvalidParams("no signer ids");
  std::set<SignerId> seen;
  for (const auto& id : ids)
    if (!seen.insert(id).second) throw DuplicateId("duplicate signer id " + id.hex());

  PqKeys keys;
  keys.cco.msk = msk.value_or(random_key());
  keys.cco.params = params;
  for (const auto& id : ids) {
    Digest sk1 = keys.cco.initial_key(id);
    keys.cco.anchors[id] = pq_anchors(sk1, params);
    keys.signers.emplace_back(id, sk1, 1, params);
  }
  return keys;
}

std::vector<std::uint32_t> message_to_indices(ByteView message, const PqParams& params) {
  const Digest h = hash(Domain::h0, message);
  const unsigned width = params.index_bits();
  std::vector<std::uint32_t> out;
  out.reserve(params.k);
  unsigned bit = 0;
  for (std::uint32_t l = 0; l < params.k; ++l) {
    std::uint32_t x = 0;
    for (unsigned b = 0; b < width; ++b, ++bit)
      x = x << 1 | ((h.bytes[bit / 8] >> (7 - bit % 8)) & 1u);
    out.push_back(x);
  }
  return out;
}

PqCommitment pq_commitment_from_key(const SignerId& id, std::uint64_t epoch, const Digest& key,
                                    const PqParams& params) {
  PqCommitment c;
  c.id = id;
  c.epoch = epoch;
  c.v.reserve(params.t);
  for (std::uint32_t x = 0; x < params.t; ++x)
    c.v.push_back(hash(Domain::h2, secret_for_index(key, x).view()));
  return c;
}

PqCommitment pq_com_construct(const PqKeyMaterial& store, const SignerId& id,
                              std::uint64_t epoch) {
  auto it = store.anchors.find(id);
  if (it == store.anchors.end()) throw UnknownId("unknown signer " + id.hex());
  const auto& p = store.params;
  if (epoch < 1 || epoch > p.epochs())
    throw EpochRange("epoch " + std::to_string(epoch) + " outside [1, " +
                     std::to_string(p.epochs()) + "]");
  const std::uint64_t j1 = (epoch - 1) / p.J2;
  const std::uint64_t j2 = (epoch - 1) % p.J2;
  Digest anchor = j1 == 0 ? store.initial_key(id) : it->second.at(j1 - 1);
  Digest key = iter_hash(Domain::h1, anchor, j2);
  auto c = pq_commitment_from_key(id, epoch, key, p);
  secure_zero(anchor.bytes);
  secure_zero(key.bytes);
  return c;
}

Verdict pq_verify(const PqCommitment& commitment, ByteView message, const PqSignature& sig,
                  const PqParams& params) {
  if (commitment.id != sig.id || commitment.epoch != sig.epoch) return Verdict::mismatch;
  if (sig.s.size() != params.k || commitment.v.size() != params.t) return Verdict::mismatch;
  if (sig.epoch < 1 || sig.epoch > params.epochs()) return Verdict::reject;
  const auto idx = message_to_indices(message, params);
  bool ok = true;
  for (std::uint32_t l = 0; l < params.k; ++l)
    ok &= hash(Domain::h2, sig.s[l].view()) == commitment.v[idx[l]];
  return ok ? Verdict::accept : Verdict::reject;
}

}  // namespace hases
