// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any failed. Pass a number to fix the RNG seed.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "hases/cco.hpp"
#include "hases/net.hpp"

using namespace hases;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;
};

std::mt19937_64 rng;

Bytes random_bytes(std::size_t n) {
  Bytes out(n);
  for (auto& b : out) b = static_cast<std::uint8_t>(rng());
  return out;
}

std::vector<Bytes> random_batch(std::size_t L) {
  std::vector<Bytes> out;
  for (std::size_t i = 0; i < L; ++i) out.push_back(random_bytes(1 + rng() % 64));
  return out;
}

std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi) {
  return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng);
}

// Signer key for an arbitrary epoch, walked from the nearest CCO anchor.
Digest pq_key_at(const PqKeyMaterial& cco, const SignerId& id, std::uint64_t j) {
  const auto& p = cco.params;
  const auto seg = (j - 1) / p.J2;
  const Digest base = seg == 0 ? cco.initial_key(id) : cco.anchors.at(id)[seg - 1];
  return iter_hash(Domain::h1, base, (j - 1) % p.J2);
}

std::vector<SignerId> make_ids(int n, const std::string& prefix) {
  std::vector<SignerId> ids;
  for (int i = 0; i < n; ++i) ids.push_back(SignerId::from_text(prefix + std::to_string(i)));
  return ids;
}

constexpr std::uint32_t kBatchSizes[] = {1, 8, 64};
constexpr std::uint64_t kJ = std::uint64_t{1} << 20;

// ---------------------------------------------------------------- 1

Outcome completeness() {
  constexpr int kTrials = 1000;
  constexpr int kPerCeremony = 250;
  const auto t0 = Clock::now();
  const auto pq_params = PqParams::standard(1024, 1024);
  const LaParams la_base{Backend::ristretto255, kJ, 1};
  const Group& g = la_base.group();
  int failures = 0;

  for (int c = 0; c < kTrials / kPerCeremony; ++c) {
    const auto ids = make_ids(4, "c" + std::to_string(c) + "-");
    auto pq = pq_keygen(ids, pq_params);
    auto la = la_keygen(ids, la_base);
    for (int i = 0; i < kPerCeremony; ++i) {
      const auto s = rng() % ids.size();
      const auto& id = ids[s];
      const auto j = uniform(1, kJ);
      PqSigner signer(id, pq_key_at(pq.cco, id, j), j, pq_params);
      auto m = random_bytes(1 + rng() % 256);
      auto sig = signer.sign(m);
      failures += !accepted(pq_verify(pq_com_construct(pq.cco, id, j), m, sig, pq_params));
    }
    for (int i = 0; i < kPerCeremony; ++i) {
      const auto s = rng() % ids.size();
      const auto j = uniform(1, kJ);
      LaParams p = la_base;
      p.L = kBatchSizes[i % 3];
      LaSigner signer(ids[s], la.signers[s].secret(), j, p);
      auto batch = random_batch(p.L);
      auto sig = signer.sign(batch);
      auto com = la_com_construct(la.msk, ids[s], j, p.L, p);
      failures += !accepted(la_aver(la.publics[s].Y, com, batch, sig, g));
    }
    for (int i = 0; i < kPerCeremony; ++i) {
      const auto s = rng() % ids.size();
      const auto j = uniform(1, kJ);
      HyParams p{la_base, pq_params};
      p.la.L = kBatchSizes[i % 3];
      HySigner signer(LaSigner(ids[s], la.signers[s].secret(), j, p.la),
                      PqSigner(ids[s], pq_key_at(pq.cco, ids[s], j), j, pq_params));
      auto batch = random_batch(p.la.L);
      auto sig = signer.sign(batch);
      auto com = hy_com_construct(la.msk, p.la, pq.cco, ids[s], j, p.la.L);
      failures += !accepted(hy_verify(la.publics[s].Y, com, batch, sig, p));
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << 3 * kTrials << " trials (1000 per scheme, L in {1,8,64}), " << failures << " failures, "
    << std::fixed;
  d.precision(1);
  d << secs << " s";
  return {failures == 0 && secs < 60.0, d.str()};
}

// ---------------------------------------------------------------- 2

// Bytes of a PQ commitment that pq_verify reads: the header and the k
// entries the signature opens. The other t-k entries are never consulted.
std::vector<std::size_t> pq_relevant_bits(ByteView message, const PqParams& p, std::size_t offset) {
  constexpr std::size_t kHeader = 1 + 16 + 8;
  std::vector<std::size_t> bits;
  for (std::size_t i = 0; i < kHeader * 8; ++i) bits.push_back(offset * 8 + i);
  for (auto x : message_to_indices(message, p))
    for (std::size_t i = 0; i < 256; ++i) bits.push_back((offset + kHeader + x * 32) * 8 + i);
  return bits;
}

void flip(Bytes& b, std::size_t bit) { b[bit / 8] ^= static_cast<std::uint8_t>(0x80 >> (bit % 8)); }

struct FuzzStats {
  int mutations = 0;
  int accepted = 0;
};

template <typename Verify>
void fuzz_case(FuzzStats& st, int rounds, std::vector<Bytes> batch, const Bytes& sig, const Bytes& com,
               const std::vector<std::size_t>& com_bits, Verify&& verify) {
  for (int r = 0; r < rounds; ++r) {
    auto b = batch;
    auto s = sig;
    auto c = com;
    switch (r % 3) {
      case 0: {
        auto& m = b[rng() % b.size()];
        flip(m, rng() % (m.size() * 8));
        break;
      }
      case 1:
        flip(s, rng() % (s.size() * 8));
        break;
      default:
        flip(c, com_bits[rng() % com_bits.size()]);
        break;
    }
    bool ok;
    try {
      ok = accepted(verify(b, s, c));
    } catch (const FormatError&) {
      ok = false;
    }
    ++st.mutations;
    st.accepted += ok;
  }
}

Outcome soundness() {
  constexpr int kCases = 10;
  constexpr int kRounds = 120;
  const auto ids = make_ids(2, "f");
  const auto pq_params = PqParams::standard(4, 64);
  const LaParams la_params{Backend::ristretto255, 256, 8};
  const Group& g = la_params.group();
  const HyParams hy_params{la_params, pq_params};
  FuzzStats pq_st, la_st, hy_st;
  bool honest_ok = true;

  auto pq = pq_keygen(ids, pq_params);
  for (int i = 0; i < kCases; ++i) {
    auto& signer = pq.signers[i % 2];
    std::vector<Bytes> batch{random_bytes(1 + rng() % 64)};
    auto sig = signer.sign(batch[0]);
    auto com = pq_com_construct(pq.cco, signer.id(), sig.epoch).serialize();
    auto verify = [&](const std::vector<Bytes>& b, const Bytes& s, const Bytes& c) {
      return pq_verify(PqCommitment::parse(c), b[0], PqSignature::parse(s), pq_params);
    };
    honest_ok &= accepted(verify(batch, sig.serialize(), com));
    fuzz_case(pq_st, kRounds, batch, sig.serialize(), com, pq_relevant_bits(batch[0], pq_params, 0), verify);
  }

  auto la = la_keygen(ids, la_params);
  for (int i = 0; i < kCases; ++i) {
    const auto s = static_cast<std::size_t>(i % 2);
    auto batch = random_batch(la_params.L);
    auto sig = la.signers[s].sign(batch);
    auto com = la_com_construct(la.msk, ids[s], sig.epoch, la_params.L, la_params).serialize();
    std::vector<std::size_t> bits(com.size() * 8);
    for (std::size_t b = 0; b < bits.size(); ++b) bits[b] = b;
    const auto Y = la.publics[s].Y;
    auto verify = [&](const std::vector<Bytes>& b, const Bytes& sg, const Bytes& c) {
      return la_aver(Y, LaCommitment::parse(c, g), b, LaAggSignature::parse(sg, g), g);
    };
    honest_ok &= accepted(verify(batch, sig.serialize(), com));
    fuzz_case(la_st, kRounds, batch, sig.serialize(), com, bits, verify);
  }

  auto hy = hy_keygen(ids, hy_params);
  for (int i = 0; i < kCases; ++i) {
    const auto s = static_cast<std::size_t>(i % 2);
    auto batch = random_batch(la_params.L);
    auto sig = hy.signers[s].sign(batch);
    auto com = hy_com_construct(hy.la.msk, la_params, hy.pq.cco, ids[s], sig.la.epoch, la_params.L);
    const auto com_bytes = com.serialize();
    // The LA half in full, then the PQ half's header and opened entries.
    const std::size_t la_len = 1 + com.la.serialize().size();
    std::vector<std::size_t> bits;
    for (std::size_t b = 0; b < la_len * 8; ++b) bits.push_back(b);
    const auto inner = hy_inner_message(sig.la.s_agg, nest(batch).last());
    auto pq_bits = pq_relevant_bits(inner, pq_params, la_len);
    bits.insert(bits.end(), pq_bits.begin(), pq_bits.end());
    const auto Y = hy.la.publics[s].Y;
    auto verify = [&](const std::vector<Bytes>& b, const Bytes& sg, const Bytes& c) {
      return hy_verify(Y, HyCommitment::parse(c, g), b, HySignature::parse(sg, g), hy_params);
    };
    honest_ok &= accepted(verify(batch, sig.serialize(), com_bytes));
    fuzz_case(hy_st, kRounds, batch, sig.serialize(), com_bytes, bits, verify);
  }

  std::ostringstream d;
  d << "mutations pq/la/hy = " << pq_st.mutations << "/" << la_st.mutations << "/"
    << hy_st.mutations << ", accepted " << pq_st.accepted << "/" << la_st.accepted << "/"
    << hy_st.accepted;
  if (!honest_ok) d << ", an unmutated case was rejected";
  const bool ok = honest_ok && pq_st.accepted + la_st.accepted + hy_st.accepted == 0 &&
                  pq_st.mutations >= 1000 && la_st.mutations >= 1000 && hy_st.mutations >= 1000;
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 3

Outcome sign_budget() {
  const auto ids = make_ids(1, "b");
  auto keys = pq_keygen(ids, PqParams::standard(1, 256));
  std::uint64_t lo = UINT64_MAX, hi = 0;
  for (int i = 0; i < 200; ++i) {
    auto m = random_bytes(rng() % 300);
    HashScope scope;
    keys.signers[0].sign(m);
    const auto n = scope.elapsed().total();
    lo = std::min(lo, n);
    hi = std::max(hi, n);
  }
  std::ostringstream d;
  d << "pq_sign hash calls over 200 signatures: min " << lo << ", max " << hi << " (k=16)";
  return {lo == 18 && hi == 18, d.str()};
}

// ---------------------------------------------------------------- 4

Outcome sizes() {
  const auto ids = make_ids(1, "z");
  HyParams p{LaParams{Backend::ristretto255, 16, 8}, PqParams::standard(1, 16)};
  auto keys = hy_keygen(ids, p);
  auto batch = random_batch(8);
  auto hy = keys.signers[0].sign(batch);
  auto pq = keys.pq.signers[0].sign(batch[0]);
  auto la = keys.la.signers[0].sign(batch);
  constexpr std::size_t kHeader = 1 + 16 + 8;

  const auto pq_payload = pq.payload_size();
  const auto la_payload = LaAggSignature::payload_size();
  const auto hy_payload = hy.payload_size();
  const bool ok = pq_payload == 512 && pq.serialize().size() == kHeader + 512 &&
                  la_payload >= 48 && la_payload <= 64 && la.serialize().size() == kHeader + la_payload &&
                  hy_payload == la_payload + pq_payload &&
                  hy.serialize().size() == kHeader + la_payload + pq_payload;
  std::ostringstream d;
  d << "payload pq " << pq_payload << " B, la " << la_payload << " B, hy " << hy_payload
    << " B; serialized " << pq.serialize().size() << "/" << la.serialize().size() << "/"
    << hy.serialize().size() << " B with one " << kHeader << "-byte header each";
  return {ok, d.str()};
}

// ---------------------------------------------------------------- 5

Outcome policy_invariance() {
  constexpr std::uint64_t J = 256;
  const auto t0 = Clock::now();
  const auto ids = make_ids(1, "pol");
  auto keys = pq_keygen(ids, PqParams::standard(1, J));
  const auto t = keys.cco.params.t;
  std::vector<Bytes> baseline;
  bool identical = true, bounded = true;
  std::ostringstream d;
  d << "J=256";
  for (std::uint64_t J1 : {1, 2, 4, 16}) {
    keys.cco.set_storage_policy(J1);
    const auto J2 = J / J1;
    std::uint64_t worst = 0;
    for (std::uint64_t j = 1; j <= J; ++j) {
      HashScope scope;
      auto c = pq_com_construct(keys.cco, ids[0], j).serialize();
      // H1 covers the chain steps plus the t per-index derivations.
      const auto chain = scope.elapsed().h1 - t;
      worst = std::max(worst, chain);
      if (J1 == 1)
        baseline.push_back(std::move(c));
      else
        identical &= c == baseline[j - 1];
    }
    bounded &= worst <= J2 - 1;
    d << "; J1=" << J1 << " worst chain " << worst << " <= " << J2 - 1;
  }
  const double secs = seconds_since(t0);
  d << "; commitments " << (identical ? "identical" : "DIFFER") << "; " << std::fixed;
  d.precision(1);
  d << secs << " s";
  return {identical && bounded && secs < 10.0, d.str()};
}

// ---------------------------------------------------------------- 6

// Independent checker over Z_23^*: discrete logs by exhaustive search and
// the challenge hashes recomputed from the raw digests.
struct BruteForce {
  static constexpr int p = 23, q = 11, alpha = 2;

  static int decode(const Element& e) { return e.bytes[30] << 8 | e.bytes[31]; }

  static int dlog(int h) {
    int acc = 1;
    for (int i = 0; i < q; ++i) {
      if (acc == h) return i;
      acc = acc * alpha % p;
    }
    return -1;
  }

  static int digest_mod_q(const Digest& d) {
    int r = 0;
    for (auto b : d.bytes) r = (r * 256 + b) % q;
    return r;
  }

  static int challenge(ByteView m, ByteView x_l) {
    Bytes data(m.begin(), m.end());
    data.insert(data.end(), x_l.begin(), x_l.end());
    int e = digest_mod_q(hash(Domain::h2, data));
    for (std::uint8_t ctr = 0; e == 0; ++ctr) {
      Bytes retry = data;
      retry.push_back(ctr);
      e = digest_mod_q(hash(Domain::h2, retry));
    }
    return e;
  }

  static bool verify(const Element& Y, const LaCommitment& c, std::span<const Bytes> batch,
                     const LaAggSignature& sig) {
    const int y = dlog(decode(Y));
    const int r = dlog(decode(c.R));
    if (y < 0 || r < 0 || sig.epoch != c.epoch || sig.id != c.id || batch.size() != c.L) return false;
    int e_sum = 0;
    for (std::size_t l = 0; l < batch.size(); ++l) {
      auto be = be64(l + 1);
      auto x_l = hash(Domain::h0, {sig.x_seed.view(), ByteView(be)});
      e_sum = (e_sum + challenge(batch[l], x_l.view())) % q;
    }
    const int s = static_cast<int>(sig.s_agg.low_u64() % q);
    return r == (y * e_sum + s) % q;
  }
};

Outcome tiny_oracle() {
  const LaParams base{Backend::tiny, 4, 1};
  const Group& g = base.group();
  const SignerId id = SignerId::from_text("tiny");
  const char alphabet[] = {'a', 'b', 'c', 'd'};
  std::uint64_t cases = 0, agree = 0, honest_accepts = 0, honest = 0;

  for (std::uint64_t y = 1; y <= 10; ++y) {
    // A master key that lands on this y, so the CCO path is exercised too.
    Digest msk;
    do {
      msk = random_key();
    } while (la_secret_key(msk, id, g).low_u64() != y);
    const Element Y = g.exp_base(Scalar::from_u64(y));

    for (std::uint32_t L = 1; L <= 3; ++L) {
      LaParams p = base;
      p.L = L;
      std::uint32_t combos = 1;
      for (std::uint32_t i = 0; i < L; ++i) combos *= 4;
      for (std::uint64_t j = 1; j <= 4; ++j) {
        const auto com = la_com_construct(msk, id, j, L, p);
        for (std::uint32_t code = 0; code < combos; ++code) {
          std::vector<Bytes> batch(L);
          for (std::uint32_t l = 0, c = code; l < L; ++l, c /= 4) batch[l] = Bytes{std::uint8_t(alphabet[c % 4])};
          LaSigner signer(id, Scalar::from_u64(y), j, p);
          const auto sig = signer.sign(batch);

          auto bumped = sig;
          bumped.s_agg = g.add(sig.s_agg, Scalar::from_u64(1 + code % 10));
          auto other = batch;
          other[code % L][0] = std::uint8_t(alphabet[(code / 7 + 1) % 4]);

          const std::pair<std::span<const Bytes>, const LaAggSignature*> probes[] = {
              {batch, &sig}, {batch, &bumped}, {other, &sig}};
          for (std::size_t k = 0; k < 3; ++k) {
            const bool lib = accepted(la_aver(Y, com, probes[k].first, *probes[k].second, g));
            const bool brute = BruteForce::verify(Y, com, probes[k].first, *probes[k].second);
            ++cases;
            agree += lib == brute;
            if (k == 0) {
              ++honest;
              honest_accepts += lib;
            }
          }
        }
      }
    }
  }
  std::ostringstream d;
  d << agree << "/" << cases << " decisions agree with brute-force dlog checker ("
    << honest_accepts << "/" << honest << " honest accepted)";
  return {agree == cases && honest_accepts == honest, d.str()};
}

// ---------------------------------------------------------------- 7

Outcome hybrid_and() {
  const auto ids = make_ids(1, "hy");
  HyParams p{LaParams{Backend::ristretto255, 64, 8}, PqParams::standard(4, 16)};
  auto keys = hy_keygen(ids, p);
  const Group& g = p.la.group();
  const auto Y = keys.la.publics[0].Y;
  int rejected_la = 0, rejected_pq = 0, rejected_perm = 0, isolated = 0, honest = 0;
  constexpr int kRounds = 20;

  for (int i = 0; i < kRounds; ++i) {
    auto batch = random_batch(8);
    auto sig = keys.signers[0].sign(batch);
    auto com = hy_com_construct(keys.la.msk, p.la, keys.pq.cco, ids[0], sig.la.epoch, 8);
    const auto nested = nest(batch);
    const auto inner = hy_inner_message(sig.la.s_agg, nested.last());
    honest += accepted(hy_verify(Y, com, batch, sig, p));

    // LA-only: x_seed is outside the PQ-signed message.
    auto la_bad = sig;
    la_bad.la.x_seed.bytes[rng() % 32] ^= 1;
    rejected_la += !accepted(hy_verify(Y, com, batch, la_bad, p));
    isolated += !accepted(la_aver(Y, com.la, nested.as_batch(), la_bad.la, g)) &&
                accepted(pq_verify(com.pq, inner, la_bad.pq, p.pq));

    // PQ-only: one opened preimage.
    auto pq_bad = sig;
    pq_bad.pq.s[rng() % pq_bad.pq.s.size()].bytes[0] ^= 0x40;
    rejected_pq += !accepted(hy_verify(Y, com, batch, pq_bad, p));
    isolated += accepted(la_aver(Y, com.la, nested.as_batch(), pq_bad.la, g)) &&
                !accepted(pq_verify(com.pq, inner, pq_bad.pq, p.pq));

    auto permuted = batch;
    const auto a = rng() % 8;
    auto b = rng() % 8;
    if (b == a) b = (a + 1) % 8;
    std::swap(permuted[a], permuted[b]);
    rejected_perm += !accepted(hy_verify(Y, com, permuted, sig, p));
  }
  std::ostringstream d;
  d << "honest " << honest << "/" << kRounds << " accepted; rejected la-only " << rejected_la
    << ", pq-only " << rejected_pq << ", permuted " << rejected_perm << " of " << kRounds
    << "; single-layer failure confirmed " << isolated << "/" << 2 * kRounds;
  return {honest == kRounds && rejected_la == kRounds && rejected_pq == kRounds &&
              rejected_perm == kRounds && isolated == 2 * kRounds,
          d.str()};
}

// ---------------------------------------------------------------- 8

Outcome service_round_trip() {
  CcoStore store;
  CcoServer server(store);
  server.start();
  CcoClient client("127.0.0.1", server.port());
  constexpr int kBatches = 10;
  constexpr std::uint32_t L = 8;
  const Group& g = production_group();
  int online_accepts = 0, offline_accepts = 0, disagreements = 0, total = 0;

  // Batch 7 of every scheme is tampered after signing so both modes must
  // also agree on a rejection.
  auto tamper = [](int i, std::vector<Bytes>& batch) {
    if (i == 6) batch[0].push_back(0x01);
  };
  auto tally = [&](Verdict on, Verdict off) {
    ++total;
    online_accepts += accepted(on);
    offline_accepts += accepted(off);
    disagreements += on != off;
  };

  {
    const auto ids = make_ids(2, "e2e-pq");
    const auto params = PqParams::standard(4, 64);
    auto keys = pq_keygen(ids, params);
    client.provision(ProvisioningBundle::from(keys));
    std::vector<std::pair<Bytes, PqSignature>> signed_;
    for (int i = 0; i < kBatches; ++i) {
      auto m = random_bytes(40);
      auto sig = keys.signers[0].sign(m);
      std::vector<Bytes> b{m};
      tamper(i, b);
      signed_.emplace_back(b[0], sig);
    }
    auto offline = decode_export(client.batch_export(Scheme::pq, ids[0], 1, kBatches));
    for (int i = 0; i < kBatches; ++i) {
      const auto& [m, sig] = signed_[i];
      tally(pq_verify(client.pq_commitment(ids[0], sig.epoch), m, sig, params),
            pq_verify(PqCommitment::parse(offline[i]), m, sig, params));
    }
  }
  {
    const auto ids = make_ids(2, "e2e-la");
    const LaParams params{Backend::ristretto255, 64, L};
    auto keys = la_keygen(ids, params);
    client.provision(ProvisioningBundle::from(keys));
    std::vector<std::pair<std::vector<Bytes>, LaAggSignature>> signed_;
    for (int i = 0; i < kBatches; ++i) {
      auto b = random_batch(L);
      auto sig = keys.signers[1].sign(b);
      tamper(i, b);
      signed_.emplace_back(b, sig);
    }
    auto offline = decode_export(client.batch_export(Scheme::la, ids[1], 1, kBatches, L));
    const auto Y = keys.publics[1].Y;
    for (int i = 0; i < kBatches; ++i) {
      const auto& [b, sig] = signed_[i];
      tally(la_aver(Y, client.la_commitment(ids[1], sig.epoch, L, g), b, sig, g),
            la_aver(Y, LaCommitment::parse(offline[i], g), b, sig, g));
    }
  }
  {
    const auto ids = make_ids(2, "e2e-hy");
    HyParams params{LaParams{Backend::ristretto255, 64, L}, PqParams::standard(4, 16)};
    auto keys = hy_keygen(ids, params);
    client.provision(ProvisioningBundle::from(keys));
    std::vector<std::pair<std::vector<Bytes>, HySignature>> signed_;
    for (int i = 0; i < kBatches; ++i) {
      auto b = random_batch(L);
      auto sig = keys.signers[0].sign(b);
      tamper(i, b);
      signed_.emplace_back(b, sig);
    }
    auto offline = decode_export(client.batch_export(Scheme::hy, ids[0], 1, kBatches, L));
    const auto Y = keys.la.publics[0].Y;
    for (int i = 0; i < kBatches; ++i) {
      const auto& [b, sig] = signed_[i];
      tally(hy_verify(Y, client.hy_commitment(ids[0], sig.la.epoch, L, g), b, sig, params),
            hy_verify(Y, HyCommitment::parse(offline[i], g), b, sig, params));
    }
  }
  server.stop();

  std::ostringstream d;
  d << total << " signatures over TCP; on-demand accepted " << online_accepts << ", export accepted "
    << offline_accepts << ", disagreements " << disagreements << " (3 tampered batches)";
  const int expect = total - 3;
  return {disagreements == 0 && online_accepts == expect && offline_accepts == expect, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 0) : std::random_device{}();
  rng.seed(seed);
  std::cout << "seed " << seed << "\n";

  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"completeness", completeness},
      {"soundness fuzz", soundness},
      {"signer hash budget", sign_budget},
      {"signature sizes", sizes},
      {"policy invariance", policy_invariance},
      {"tiny-group oracle", tiny_oracle},
      {"hybrid conjunction", hybrid_and},
      {"service round trip", service_round_trip},
  };
  int failed = 0;
  int n = 0;
  for (const auto& [name, run] : criteria) {
    ++n;
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << n << " " << name << ": " << o.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
