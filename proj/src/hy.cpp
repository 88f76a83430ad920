#include "hases/hy.hpp"

namespace hases {

std::vector<Bytes> NestedDigest::as_batch() const {
  std::vector<Bytes> out;
  out.reserve(n.size());
  for (const auto& d : n) out.emplace_back(d.bytes.begin(), d.bytes.end());
  return out;
}

NestedDigest nest(std::span<const Bytes> batch) {
  if (batch.empty()) throw InvalidParams("cannot nest an empty batch");
  NestedDigest out;
  out.n.reserve(batch.size());
  out.n.push_back(hash(Domain::h0, batch[0]));
  for (std::size_t l = 1; l < batch.size(); ++l) {
    const Digest link = hash(Domain::h0, out.n.back().view());
    out.n.push_back(hash(Domain::h0, {batch[l], link.view()}));
  }
  return out;
}

Bytes hy_inner_message(const Scalar& s_agg, const Digest& n_last) {
  Bytes out(s_agg.bytes.begin(), s_agg.bytes.end());
  out.insert(out.end(), n_last.bytes.begin(), n_last.bytes.end());
  return out;
}

void HyParams::validate() const {
  la.validate();
  pq.validate();
  if (la.J != pq.epochs())
    throw InvalidParams("aggregate layer J=" + std::to_string(la.J) +
                        " differs from hash layer J1*J2=" + std::to_string(pq.epochs()));
}

Bytes HySignature::serialize() const {
  ByteWriter w;
  w.u8(kHySignatureTag).id(la.id).u64(la.epoch).raw(la.s_agg.bytes).raw(la.x_seed.view());
  for (const auto& d : pq.s) w.raw(d.view());
  return w.take();
}

HySignature HySignature::parse(ByteView in, const Group& g) {
  ByteReader r(in);
  if (r.u8() != kHySignatureTag) throw FormatError("not a hybrid signature");
  HySignature sig;
  sig.la.id = sig.pq.id = r.id();
  sig.la.epoch = sig.pq.epoch = r.u64();
  sig.la.s_agg.bytes = r.fixed<32>();
  sig.la.x_seed.bytes = r.fixed<32>();
  if (!g.is_canonical(sig.la.s_agg)) throw FormatError("LA scalar not reduced mod q");
  if (r.empty() || r.remaining() % Digest::size != 0)
    throw FormatError("hybrid signature has a malformed hash layer");
  sig.pq.s.resize(r.remaining() / Digest::size);
  for (auto& d : sig.pq.s) d.bytes = r.fixed<Digest::size>();
  return sig;
}

Bytes HyCommitment::serialize() const {
  ByteWriter w;
  w.u8(kHyCommitmentTag).raw(la.serialize()).raw(pq.serialize());
  return w.take();
}

HyCommitment HyCommitment::parse(ByteView in, const Group& g) {
  constexpr std::size_t la_size = 1 + 16 + 8 + 4 + 32;
  if (in.empty() || in[0] != kHyCommitmentTag) throw FormatError("not a hybrid commitment");
  if (in.size() < 1 + la_size) throw FormatError("truncated hybrid commitment");
  return {LaCommitment::parse(in.subspan(1, la_size), g),
          PqCommitment::parse(in.subspan(1 + la_size))};
}

HySigner::HySigner(LaSigner la, PqSigner pq) : la_(std::move(la)), pq_(std::move(pq)) {
  if (la_.id() != pq_.id()) throw InvalidParams("hybrid component ids differ");
  if (la_.epoch() != pq_.epoch()) throw InvalidParams("hybrid component epochs differ");
  params().validate();
}

HySignature HySigner::sign(std::span<const Bytes> batch) {
  if (la_.epoch() != pq_.epoch())
    throw Error("hybrid signer components out of lockstep");
  if (exhausted()) throw EpochExhausted("hybrid signer exhausted all epochs");
  if (batch.size() != la_.params().L)
    throw InvalidParams("batch has " + std::to_string(batch.size()) + " messages, expected " +
                        std::to_string(la_.params().L));
  const auto nested = nest(batch);
  HySignature sig;
  sig.la = la_.sign(nested.as_batch());
  sig.pq = pq_.sign(hy_inner_message(sig.la.s_agg, nested.last()));
  return sig;
}

HyKeys hy_keygen(std::span<const SignerId> ids, const HyParams& params,
                 std::optional<Digest> la_msk, std::optional<Digest> pq_msk) {
  params.validate();
  HyKeys keys;
  keys.params = params;
  keys.la = la_keygen(ids, params.la, la_msk);
  keys.pq = pq_keygen(ids, params.pq, pq_msk);
  for (std::size_t i = 0; i < ids.size(); ++i)
    keys.signers.emplace_back(keys.la.signers[i], keys.pq.signers[i]);
  return keys;
}

HyCommitment hy_com_construct(const Digest& la_msk, const LaParams& la_params,
                              const PqKeyMaterial& pq_store, const SignerId& id,
                              std::uint64_t epoch, std::uint32_t L) {
  auto pq = pq_com_construct(pq_store, id, epoch);
  return {la_com_construct(la_msk, id, epoch, L, la_params), std::move(pq)};
}

Verdict hy_verify(const Element& Y, const HyCommitment& commitment, std::span<const Bytes> batch,
                  const HySignature& sig, const HyParams& params) {
  if (sig.la.id != sig.pq.id || sig.la.epoch != sig.pq.epoch) return Verdict::mismatch;
  if (commitment.la.id != commitment.pq.id || commitment.la.epoch != commitment.pq.epoch)
    return Verdict::mismatch;
  if (batch.empty() || batch.size() != commitment.la.L) return Verdict::mismatch;
  const auto nested = nest(batch);
  const auto la = la_aver(Y, commitment.la, nested.as_batch(), sig.la, params.la.group());
  const auto pq =
      pq_verify(commitment.pq, hy_inner_message(sig.la.s_agg, nested.last()), sig.pq, params.pq);
  if (la == Verdict::mismatch || pq == Verdict::mismatch) return Verdict::mismatch;
  return accepted(la) && accepted(pq) ? Verdict::accept : Verdict::reject;
}

}  // namespace hases
