#include "hases/bench.hpp"

#include <chrono>
#include <iomanip>
#include <ostream>
#include <random>

namespace hases {
namespace {

using Clock = std::chrono::steady_clock;

// Fixed master keys keep the counts reproducible: on small groups the
// hash-to-scalar retry depends on the key.
Digest bench_key(std::string_view label) { return hash(Domain::h0, as_bytes(label)); }

std::vector<Bytes> sample_batch(std::mt19937_64& rng, std::uint32_t L) {
  std::vector<Bytes> out(L);
  for (auto& m : out) {
    m.resize(32);
    for (auto& b : m) b = static_cast<std::uint8_t>(rng());
  }
  return out;
}

// Calls fn(i) for i in [0, n). The first call is counted, all are timed.
template <typename Fn>
BenchRow measure(std::string op, unsigned n, Fn&& fn) {
  BenchRow row;
  row.op = std::move(op);
  HashScope scope;
  auto t0 = Clock::now();
  row.bytes = fn(0u);
  row.hashes = scope.elapsed().total();
  for (unsigned i = 1; i < n; ++i) fn(i);
  std::chrono::duration<double, std::micro> dt = Clock::now() - t0;
  row.micros = dt.count() / n;
  return row;
}

void bench_pq(const BenchOptions& o, BenchReport& rep, std::mt19937_64& rng, unsigned n) {
  const auto ids = std::vector{SignerId::from_text("bench")};
  auto keys = pq_keygen(ids, PqParams::standard(o.J1, o.J2), bench_key("pq"));
  const auto& params = keys.cco.params;
  std::vector<Bytes> msgs;
  for (unsigned i = 0; i < n; ++i) msgs.push_back(sample_batch(rng, 1)[0]);

  std::vector<PqSignature> sigs;
  rep.rows.push_back(measure("sign", n, [&](unsigned i) {
    sigs.push_back(keys.signers[0].sign(msgs[i]));
    return sigs.back().payload_size();
  }));
  std::vector<PqCommitment> coms;
  rep.rows.push_back(measure("com_construct", n, [&](unsigned i) {
    coms.push_back(pq_com_construct(keys.cco, ids[0], i + 1));
    return coms.back().serialize().size();
  }));
  rep.rows.push_back(measure("com_construct_worst", 1, [&](unsigned) {
    return pq_com_construct(keys.cco, ids[0], params.J2).serialize().size();
  }));
  rep.rows.push_back(measure("verify", n, [&](unsigned i) {
    if (!accepted(pq_verify(coms[i], msgs[i], sigs[i], params))) throw Error("bench: verify failed");
    return std::size_t{0};
  }));
  rep.cco_anchor_bytes = keys.cco.anchor_bytes();
  rep.cco_secret_bytes = Digest::size;
}

void bench_la(const BenchOptions& o, BenchReport& rep, std::mt19937_64& rng, unsigned n) {
  const auto ids = std::vector{SignerId::from_text("bench")};
  LaParams params{o.backend, o.J1 * o.J2, o.L};
  auto keys = la_keygen(ids, params, bench_key("la"));
  const Group& g = params.group();
  std::vector<std::vector<Bytes>> batches;
  for (unsigned i = 0; i < n; ++i) batches.push_back(sample_batch(rng, o.L));

  std::vector<LaAggSignature> sigs;
  rep.rows.push_back(measure("sign", n, [&](unsigned i) {
    sigs.push_back(keys.signers[0].sign(batches[i]));
    return LaAggSignature::payload_size();
  }));
  std::vector<LaCommitment> coms;
  rep.rows.push_back(measure("com_construct", n, [&](unsigned i) {
    coms.push_back(la_com_construct(keys.msk, ids[0], i + 1, o.L, params));
    return coms.back().serialize().size();
  }));
  rep.rows.push_back(measure("verify", n, [&](unsigned i) {
    if (!accepted(la_aver(keys.publics[0].Y, coms[i], batches[i], sigs[i], g)))
      throw Error("bench: verify failed");
    return std::size_t{0};
  }));
  rep.cco_secret_bytes = Digest::size;
}

void bench_hy(const BenchOptions& o, BenchReport& rep, std::mt19937_64& rng, unsigned n) {
  const auto ids = std::vector{SignerId::from_text("bench")};
  HyParams params{LaParams{o.backend, o.J1 * o.J2, o.L}, PqParams::standard(o.J1, o.J2)};
  auto keys = hy_keygen(ids, params, bench_key("la"), bench_key("pq"));
  std::vector<std::vector<Bytes>> batches;
  for (unsigned i = 0; i < n; ++i) batches.push_back(sample_batch(rng, o.L));

  std::vector<HySignature> sigs;
  rep.rows.push_back(measure("sign", n, [&](unsigned i) {
    sigs.push_back(keys.signers[0].sign(batches[i]));
    return sigs.back().payload_size();
  }));
  std::vector<HyCommitment> coms;
  rep.rows.push_back(measure("com_construct", n, [&](unsigned i) {
    coms.push_back(hy_com_construct(keys.la.msk, params.la, keys.pq.cco, ids[0], i + 1, o.L));
    return coms.back().serialize().size();
  }));
  rep.rows.push_back(measure("verify", n, [&](unsigned i) {
    if (!accepted(hy_verify(keys.la.publics[0].Y, coms[i], batches[i], sigs[i], params)))
      throw Error("bench: verify failed");
    return std::size_t{0};
  }));
  rep.cco_anchor_bytes = keys.pq.cco.anchor_bytes();
  rep.cco_secret_bytes = 2 * Digest::size;
}

}  // namespace

const BenchRow* BenchReport::find(std::string_view op) const {
  for (const auto& r : rows)
    if (r.op == op) return &r;
  return nullptr;
}

void BenchReport::print_table(std::ostream& out) const {
  out << to_string(options.scheme) << "  J1=" << options.J1 << " J2=" << options.J2;
  if (options.scheme != Scheme::pq)
    out << " L=" << options.L << " group=" << to_string(options.backend);
  out << "\n";
  out << std::left << std::setw(22) << "op" << std::right << std::setw(10) << "hashes"
      << std::setw(14) << "us/call" << std::setw(10) << "bytes" << "\n";
  for (const auto& r : rows)
    out << std::left << std::setw(22) << r.op << std::right << std::setw(10) << r.hashes
        << std::setw(14) << std::fixed << std::setprecision(2) << r.micros << std::setw(10)
        << r.bytes << "\n";
  out << "cco storage: " << cco_secret_bytes << " secret bytes, " << cco_anchor_bytes
      << " anchor bytes per signer\n";
}

void BenchReport::print_lines(std::ostream& out) const {
  const std::string p = to_string(options.scheme);
  out << p << ".J1=" << options.J1 << "\n" << p << ".J2=" << options.J2 << "\n";
  if (options.scheme != Scheme::pq) out << p << ".L=" << options.L << "\n";
  for (const auto& r : rows) {
    out << p << "." << r.op << ".hashes=" << r.hashes << "\n";
    out << p << "." << r.op << ".us=" << std::fixed << std::setprecision(3) << r.micros << "\n";
    if (r.bytes) out << p << "." << r.op << ".bytes=" << r.bytes << "\n";
  }
  out << p << ".cco.secret_bytes=" << cco_secret_bytes << "\n";
  out << p << ".cco.anchor_bytes=" << cco_anchor_bytes << "\n";
}

BenchReport run_bench(const BenchOptions& options) {
  BenchReport rep;
  rep.options = options;
  const std::uint64_t J = options.J1 * options.J2;
  if (options.iterations == 0 || options.iterations > J)
    throw InvalidParams("iterations must be in [1, J1*J2]");
  std::mt19937_64 rng(0x4841534553);
  switch (options.scheme) {
    case Scheme::pq:
      bench_pq(options, rep, rng, options.iterations);
      break;
    case Scheme::la:
      bench_la(options, rep, rng, options.iterations);
      break;
    case Scheme::hy:
      bench_hy(options, rep, rng, options.iterations);
      break;
  }
  return rep;
}

}  // namespace hases
