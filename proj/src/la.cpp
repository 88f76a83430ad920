#include "hases/la.hpp"

#include <set>

namespace hases {
namespace {

Digest message_blind(const Digest& x_seed, std::uint64_t l) {
  return hash(Domain::h0, {x_seed.view(), be64(l)});
}

Scalar nonce(const Digest& r_seed, std::uint64_t l, const Group& g) {
  return hash_to_scalar(Domain::h1, {r_seed.view(), be64(l)}, g);
}

Scalar challenge(ByteView message, const Digest& blind, const Group& g) {
  return hash_to_scalar(Domain::h2, {message, blind.view()}, g);
}

Scalar nonce_sum(const Scalar& y, std::uint64_t epoch, std::uint32_t L, const Group& g) {
  const Digest r_seed = hash(Domain::h1, {y.bytes, be64(epoch)});
  Scalar sum;
  for (std::uint64_t l = 1; l <= L; ++l) sum = g.add(sum, nonce(r_seed, l, g));
  return sum;
}

}  // namespace

void LaParams::validate() const {
  if (J == 0) throw InvalidParams("J must be positive");
  if (L == 0) throw InvalidParams("L must be positive");
  (void)group();
}

Bytes LaAggSignature::serialize() const {
  ByteWriter w;
  w.u8(kLaSignatureTag).id(id).u64(epoch).raw(s_agg.bytes).raw(x_seed.view());
  return w.take();
}

LaAggSignature LaAggSignature::parse(ByteView in, const Group& g) {
  ByteReader r(in);
  if (r.u8() != kLaSignatureTag) throw FormatError("not an LA signature");
  LaAggSignature sig;
  sig.id = r.id();
  sig.epoch = r.u64();
  sig.s_agg.bytes = r.fixed<32>();
  sig.x_seed.bytes = r.fixed<32>();
  r.expect_end();
  if (!g.is_canonical(sig.s_agg)) throw FormatError("LA scalar not reduced mod q");
  return sig;
}

Bytes LaCommitment::serialize() const {
  ByteWriter w;
  w.u8(kLaCommitmentTag).id(id).u64(epoch).u32(L).raw(R.bytes);
  return w.take();
}

LaCommitment LaCommitment::parse(ByteView in, const Group& g) {
  ByteReader r(in);
  if (r.u8() != kLaCommitmentTag) throw FormatError("not an LA commitment");
  LaCommitment c;
  c.id = r.id();
  c.epoch = r.u64();
  c.L = r.u32();
  c.R.bytes = r.fixed<32>();
  r.expect_end();
  if (!g.is_member(c.R)) throw FormatError("LA commitment is not a group element");
  return c;
}

LaTranscript la_transcript(const Scalar& y, std::uint64_t epoch, std::span<const Bytes> batch,
                           const Group& g) {
  LaTranscript tr;
  tr.x_seed = hash(Domain::h0, {y.bytes, be64(epoch)});
  tr.r_seed = hash(Domain::h1, {y.bytes, be64(epoch)});
  for (std::uint64_t l = 1; l <= batch.size(); ++l) {
    const auto& m = batch[l - 1];
    tr.r.push_back(nonce(tr.r_seed, l, g));
    tr.e.push_back(challenge(m, message_blind(tr.x_seed, l), g));
    tr.s.push_back(g.sub(tr.r.back(), g.mul(tr.e.back(), y)));
  }
  return tr;
}

Scalar la_secret_key(const Digest& msk, const SignerId& id, const Group& g) {
  return hash_to_scalar(Domain::h0, {msk.view(), id.bytes}, g);
}

LaSigner::LaSigner(SignerId id, const Scalar& y, std::uint64_t epoch, LaParams params)
    : id_(id), y_(y), epoch_(epoch), params_(params) {
  params_.validate();
  if (y_.is_zero() || !params_.group().is_canonical(y_))
    throw InvalidParams("LA secret must lie in [1, q-1]");
  if (epoch_ == 0) throw InvalidParams("epochs start at 1");
}

LaSigner::~LaSigner() { secure_zero(y_.bytes); }

LaPublicKey LaSigner::public_key() const { return {id_, params_.group().exp_base(y_)}; }

LaAggSignature LaSigner::sign(std::span<const Bytes> batch) {
  if (exhausted()) throw EpochExhausted("LA signer exhausted all batches");
  if (batch.size() != params_.L)
    throw InvalidParams("batch has " + std::to_string(batch.size()) + " messages, expected " +
                        std::to_string(params_.L));
  const Group& g = params_.group();
  auto tr = la_transcript(y_, epoch_, batch, g);
  LaAggSignature sig{id_, epoch_, la_agg(tr.s, g), tr.x_seed};
  for (auto& r : tr.r) secure_zero(r.bytes);
  secure_zero(tr.r_seed.bytes);
  ++epoch_;
  return sig;
}

LaKeys la_keygen(std::span<const SignerId> ids, const LaParams& params,
                 std::optional<Digest> msk) {
  params.validate();
  if (ids.empty()) throw InvalidParams("no signer ids");
  std::set<SignerId> seen;
  for (const auto& id : ids)
    if (!seen.insert(id).second) throw DuplicateId("duplicate signer id " + id.hex());

  LaKeys keys;
  keys.msk = msk.value_or(random_key());
  keys.params = params;
  const Group& g = params.group();
  for (const auto& id : ids) {
    keys.signers.emplace_back(id, la_secret_key(keys.msk, id, g), 1, params);
    keys.publics.push_back(keys.signers.back().public_key());
  }
  return keys;
}

Scalar la_agg(std::span<const Scalar> parts, const Group& g) {
  Scalar sum;
  for (const auto& s : parts) sum = g.add(sum, s);
  return sum;
}

LaCommitment la_com_construct(const Digest& msk, const SignerId& id, std::uint64_t epoch,
                              std::uint32_t L, const LaParams& params) {
  if (epoch < 1 || epoch > params.J)
    throw EpochRange("epoch " + std::to_string(epoch) + " outside [1, " +
                     std::to_string(params.J) + "]");
  if (L == 0) throw InvalidParams("L must be positive");
  const Group& g = params.group();
  Scalar y = la_secret_key(msk, id, g);
  Scalar r = nonce_sum(y, epoch, L, g);
  LaCommitment c{id, epoch, L, g.exp_base(r)};
  secure_zero(y.bytes);
  secure_zero(r.bytes);
  return c;
}

Verdict la_aver(const Element& Y, const LaCommitment& commitment, std::span<const Bytes> batch,
                const LaAggSignature& sig, const Group& g) {
  if (commitment.id != sig.id || commitment.epoch != sig.epoch) return Verdict::mismatch;
  if (batch.size() != commitment.L || batch.empty()) return Verdict::mismatch;
  if (!g.is_canonical(sig.s_agg) || !g.is_member(Y) || !g.is_member(commitment.R))
    return Verdict::reject;
  Scalar e_agg;
  for (std::uint64_t l = 1; l <= batch.size(); ++l)
    e_agg = g.add(e_agg, challenge(batch[l - 1], message_blind(sig.x_seed, l), g));
  const Element rhs = g.mul(g.exp(Y, e_agg), g.exp_base(sig.s_agg));
  return rhs == commitment.R ? Verdict::accept : Verdict::reject;
}

}  // namespace hases
