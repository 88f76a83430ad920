// hases: key ceremonies, stream signing/verification, oracle client and
// server, benchmarks.
//
// Exit codes: 0 success / all signatures valid, 1 some signature rejected,
// 2 anything else (bad arguments, I/O, oracle errors).

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include "hases/bench.hpp"
#include "hases/keys.hpp"
#include "hases/net.hpp"
#include "hases/stream.hpp"

namespace fs = std::filesystem;
using namespace hases;

namespace {

constexpr int kExitReject = 1;
constexpr int kExitError = 2;

std::atomic<bool> g_stop{false};
void on_signal(int) { g_stop = true; }

Backend env_backend() {
  const char* v = std::getenv("HASES_BACKEND");
  return v && *v ? parse_backend(v) : Backend::ristretto255;
}

bool plain_name(const std::string& s) {
  if (s.empty() || s.size() > 16) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.')
      return false;
  return s != "." && s != "..";
}

struct IdEntry {
  SignerId id;
  std::string file_stem;
};

std::vector<IdEntry> read_ids(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<IdEntry> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto id = SignerId::parse(line);
    out.push_back({id, plain_name(line) ? line : id.hex()});
  }
  return out;
}

std::pair<std::string, std::uint16_t> split_endpoint(const std::string& ep) {
  auto colon = ep.rfind(':');
  if (colon == std::string::npos) throw Error("expected host:port, got " + ep);
  int port = std::stoi(ep.substr(colon + 1));
  if (port < 0 || port > 65535) throw Error("port out of range");
  return {ep.substr(0, colon), static_cast<std::uint16_t>(port)};
}

ProvisioningBundle load_bundle(const fs::path& dir) {
  return ProvisioningBundle::from_parts(read_file(dir / "cco.registry"), read_file(dir / "cco.secret"),
                                        read_file(dir / "cco.anchors"));
}

// ---- keygen ----

struct KeygenArgs {
  std::string scheme = "pq";
  std::string ids;
  std::uint64_t J = 1024;
  std::uint64_t J1 = 1;
  std::uint32_t L = 8;
  std::string out;
};

int cmd_keygen(const KeygenArgs& a) {
  const auto scheme = parse_scheme(a.scheme);
  if (a.J1 == 0 || a.J % a.J1 != 0)
    throw InvalidParams("J1=" + std::to_string(a.J1) + " does not divide J=" + std::to_string(a.J));
  const auto entries = read_ids(a.ids);
  std::vector<SignerId> ids;
  for (const auto& e : entries) ids.push_back(e.id);
  std::set<std::string> stems;
  for (const auto& e : entries)
    if (!stems.insert(e.file_stem).second) throw DuplicateId("duplicate signer id " + e.file_stem);

  const auto pq_params = PqParams::standard(a.J1, a.J / a.J1);
  const LaParams la_params{env_backend(), a.J, a.L};

  // Everything is derived in memory first so a failure leaves no files behind.
  ProvisioningBundle bundle;
  std::vector<SignerKey> signers;
  switch (scheme) {
    case Scheme::pq: {
      auto keys = pq_keygen(ids, pq_params);
      bundle = ProvisioningBundle::from(keys);
      for (auto& s : keys.signers) signers.emplace_back(std::move(s));
      break;
    }
    case Scheme::la: {
      auto keys = la_keygen(ids, la_params);
      bundle = ProvisioningBundle::from(keys);
      for (auto& s : keys.signers) signers.emplace_back(std::move(s));
      break;
    }
    case Scheme::hy: {
      auto keys = hy_keygen(ids, HyParams{la_params, pq_params});
      bundle = ProvisioningBundle::from(keys);
      for (auto& s : keys.signers) signers.emplace_back(std::move(s));
      break;
    }
  }

  const fs::path dir(a.out);
  fs::create_directories(dir);
  write_file(dir / "cco.registry", bundle.registry());
  write_file(dir / "cco.secret", bundle.secrets());
  write_file(dir / "cco.anchors", bundle.anchor_table());
  for (std::size_t i = 0; i < signers.size(); ++i) {
    write_file(dir / (entries[i].file_stem + ".key"), encode_signer(signers[i]));
    write_file(dir / (entries[i].file_stem + ".pub"), PublicInfo::of(signers[i]).serialize());
  }
  std::cout << "wrote " << signers.size() << " " << to_string(scheme) << " signer(s) to "
            << dir.string() << " (cco secret " << bundle.secrets().size() << " bytes, anchors "
            << bundle.anchor_table().size() << " bytes)\n";
  return 0;
}

// ---- sign ----

struct SignArgs {
  std::string key;
  std::string in;
  std::string out;
};

int cmd_sign(const SignArgs& a) {
  auto key = decode_signer(read_file(a.key));
  const auto stream = MessageStream::load(a.in);
  std::vector<Bytes> sigs;
  std::visit(
      [&](auto& signer) {
        using T = std::decay_t<decltype(signer)>;
        if constexpr (std::is_same_v<T, PqSigner>) {
          for (const auto& batch : stream.batches(1)) sigs.push_back(signer.sign(batch[0]).serialize());
        } else if constexpr (std::is_same_v<T, LaSigner>) {
          for (const auto& batch : stream.batches(signer.params().L))
            sigs.push_back(signer.sign(batch).serialize());
        } else {
          for (const auto& batch : stream.batches(signer.params().la.L))
            sigs.push_back(signer.sign(batch).serialize());
        }
      },
      key);
  // The evolved key goes to disk before any signature is released.
  write_file(a.key, encode_signer(key));
  write_file(a.out, encode_list(sigs));
  std::cerr << "signed " << sigs.size() << " epoch(s)\n";
  return 0;
}

// ---- verify ----

struct VerifyArgs {
  std::string pub;
  std::string in;
  std::string sig;
  std::string cco;
  std::string commitments;
  bool quiet = false;
};

class CommitmentSource {
 public:
  CommitmentSource(const VerifyArgs& a, const PublicInfo& info) : info_(info) {
    if (!a.cco.empty()) {
      auto [host, port] = split_endpoint(a.cco);
      client_.emplace(host, port);
    } else {
      for (const auto& e : decode_export(read_file(a.commitments))) offline_.emplace(epoch_of(e), e);
    }
  }

  // nullopt if the oracle / export has nothing for this epoch.
  std::optional<Bytes> get(std::uint64_t epoch, std::uint32_t L) {
    if (!client_) {
      auto it = offline_.find(epoch);
      if (it == offline_.end()) return std::nullopt;
      return it->second;
    }
    ByteWriter w;
    w.id(info_.id).u64(epoch);
    if (info_.scheme != Scheme::pq) w.u32(L);
    auto reply = client_->call(static_cast<MessageType>(info_.scheme), w.take());
    if (reply.status == Status::epoch_range) return std::nullopt;
    if (reply.status != Status::ok)
      throw CcoError(reply.status, std::string("oracle answered ") + to_string(reply.status));
    return reply.payload;
  }

 private:
  // Every commitment starts with tag || id || be64(epoch); HY has one more tag.
  std::uint64_t epoch_of(const Bytes& e) const {
    ByteReader r(e);
    if (info_.scheme == Scheme::hy) r.u8();
    r.u8();
    r.id();
    return r.u64();
  }

  PublicInfo info_;
  std::optional<CcoClient> client_;
  std::map<std::uint64_t, Bytes> offline_;
};

Verdict verify_one(const PublicInfo& info, ByteView sig_bytes, std::span<const Bytes> batch,
                   CommitmentSource& source, std::uint64_t& epoch_out) {
  epoch_out = 0;
  switch (info.scheme) {
    case Scheme::pq: {
      auto sig = PqSignature::parse(sig_bytes);
      epoch_out = sig.epoch;
      if (sig.id != info.id || batch.size() != 1) return Verdict::mismatch;
      auto c = source.get(sig.epoch, 0);
      if (!c) return Verdict::mismatch;
      return pq_verify(PqCommitment::parse(*c), batch[0], sig, *info.pq);
    }
    case Scheme::la: {
      const Group& g = info.la->group();
      auto sig = LaAggSignature::parse(sig_bytes, g);
      epoch_out = sig.epoch;
      if (sig.id != info.id) return Verdict::mismatch;
      auto c = source.get(sig.epoch, static_cast<std::uint32_t>(batch.size()));
      if (!c) return Verdict::mismatch;
      return la_aver(info.Y, LaCommitment::parse(*c, g), batch, sig, g);
    }
    case Scheme::hy: {
      const Group& g = info.la->group();
      auto sig = HySignature::parse(sig_bytes, g);
      epoch_out = sig.la.epoch;
      if (sig.la.id != info.id) return Verdict::mismatch;
      auto c = source.get(sig.la.epoch, static_cast<std::uint32_t>(batch.size()));
      if (!c) return Verdict::mismatch;
      return hy_verify(info.Y, HyCommitment::parse(*c, g), batch, sig, info.hy_params());
    }
  }
  return Verdict::reject;
}

int cmd_verify(const VerifyArgs& a) {
  if (a.cco.empty() == a.commitments.empty())
    throw Error("give exactly one of --cco and --commitments");
  const auto info = PublicInfo::parse(read_file(a.pub));
  const auto stream = MessageStream::load(a.in);
  const auto sig_file = read_file(a.sig);
  CommitmentSource source(a, info);

  std::vector<Bytes> sigs;
  try {
    sigs = decode_list(sig_file);
  } catch (const FormatError& e) {
    std::cout << "signature file unreadable: " << e.what() << "\n";
    return kExitReject;
  }
  const std::size_t L = info.scheme == Scheme::pq ? 1 : info.la->L;
  const auto batches = stream.batches(L);
  bool all_ok = sigs.size() == batches.size();
  if (!all_ok)
    std::cout << sigs.size() << " signature(s) for " << batches.size() << " batch(es)\n";

  for (std::size_t i = 0; i < std::min(sigs.size(), batches.size()); ++i) {
    std::uint64_t epoch = 0;
    Verdict v;
    try {
      v = verify_one(info, sigs[i], batches[i], source, epoch);
    } catch (const FormatError&) {
      v = Verdict::reject;
    }
    all_ok &= accepted(v);
    if (!a.quiet) std::cout << "batch " << i + 1 << " epoch " << epoch << ": " << to_string(v) << "\n";
  }
  std::cout << (all_ok ? "valid" : "INVALID") << "\n";
  return all_ok ? 0 : kExitReject;
}

// ---- serve / oracle client ----

struct ServeArgs {
  std::string listen = "127.0.0.1:7700";
  std::vector<std::string> provision;
  std::uint64_t J1 = 0;
  std::string port_file;
};

int cmd_serve(const ServeArgs& a) {
  CcoStore store;
  for (const auto& dir : a.provision) store.provision(load_bundle(dir));
  if (a.J1) store.set_storage_policy(a.J1);
  auto [host, port] = split_endpoint(a.listen);
  CcoServer server(store, host, port);
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  server.start();
  std::cerr << "cco listening on " << host << ":" << server.port() << " ("
            << store.stats().signers << " signer(s))\n";
  if (!a.port_file.empty()) {
    auto text = std::to_string(server.port()) + "\n";
    write_file(a.port_file, as_bytes(text));
  }
  while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  server.stop();
  return 0;
}

struct RequestArgs {
  std::string cco;
  std::string scheme = "pq";
  std::string id;
  std::uint64_t epoch = 1;
  std::uint64_t to = 0;
  std::uint32_t L = 0;
  std::string out;
};

CcoClient connect(const std::string& ep) {
  auto [host, port] = split_endpoint(ep);
  return CcoClient(host, port);
}

int cmd_request(const RequestArgs& a) {
  auto client = connect(a.cco);
  const auto scheme = parse_scheme(a.scheme);
  ByteWriter w;
  w.id(SignerId::parse(a.id)).u64(a.epoch);
  if (scheme != Scheme::pq) w.u32(a.L);
  auto reply = client.call(static_cast<MessageType>(scheme), w.take());
  if (reply.status != Status::ok) throw CcoError(reply.status, std::string("oracle answered ") + to_string(reply.status));
  if (a.out.empty())
    std::cout << to_hex(reply.payload) << "\n";
  else
    write_file(a.out, reply.payload);
  return 0;
}

int cmd_export(const RequestArgs& a) {
  auto client = connect(a.cco);
  auto bytes = client.batch_export(parse_scheme(a.scheme), SignerId::parse(a.id), a.epoch, a.to, a.L);
  write_file(a.out, bytes);
  std::cerr << "exported " << decode_export(bytes).size() << " commitment(s)\n";
  return 0;
}

// ---- bench ----

struct BenchArgs {
  std::string scheme = "pq";
  BenchOptions opt;
  bool lines = false;
  bool table = false;
};

int cmd_bench(BenchArgs a) {
  a.opt.scheme = parse_scheme(a.scheme);
  a.opt.backend = env_backend();
  auto rep = run_bench(a.opt);
  const bool both = !a.lines && !a.table;
  if (a.table || both) rep.print_table(std::cout);
  if (both) std::cout << "\n";
  if (a.lines || both) rep.print_lines(std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"HASES signer, verifier and commitment oracle"};
  app.require_subcommand(1);
  int rc = 0;

  KeygenArgs kg;
  auto* keygen = app.add_subcommand("keygen", "generate signer keys and the oracle's provisioning files");
  keygen->add_option("--scheme", kg.scheme, "pq, la or hy")->check(CLI::IsMember({"pq", "la", "hy"}));
  keygen->add_option("--ids", kg.ids, "file with one signer id per line")->required();
  keygen->add_option("--J", kg.J, "epochs per signer")->capture_default_str();
  keygen->add_option("--J1", kg.J1, "anchor segments kept by the oracle")->capture_default_str();
  keygen->add_option("--L", kg.L, "messages per batch (la, hy)")->capture_default_str();
  keygen->add_option("--out", kg.out, "output directory")->required();
  keygen->callback([&] { rc = cmd_keygen(kg); });

  SignArgs sg;
  auto* sign = app.add_subcommand("sign", "sign a message stream; the key file is advanced in place");
  sign->add_option("--key", sg.key)->required();
  sign->add_option("--in", sg.in, "CSV or .bin stream")->required();
  sign->add_option("--out", sg.out, "signature file")->required();
  sign->callback([&] { rc = cmd_sign(sg); });

  VerifyArgs vf;
  auto* verify = app.add_subcommand("verify", "verify a signed stream");
  verify->add_option("--pub", vf.pub)->required();
  verify->add_option("--in", vf.in)->required();
  verify->add_option("--sig", vf.sig)->required();
  verify->add_option("--cco", vf.cco, "oracle host:port");
  verify->add_option("--commitments", vf.commitments, "exported commitment file");
  verify->add_flag("-q,--quiet", vf.quiet);
  verify->callback([&] { rc = cmd_verify(vf); });

  ServeArgs sv;
  auto* serve = app.add_subcommand("serve", "run the commitment oracle");
  serve->add_option("--listen", sv.listen)->capture_default_str();
  serve->add_option("--provision", sv.provision, "keygen output directory (repeatable)");
  serve->add_option("--J1", sv.J1, "storage policy");
  serve->add_option("--port-file", sv.port_file, "write the bound port here");
  serve->callback([&] { rc = cmd_serve(sv); });

  std::string prov_cco, prov_dir;
  auto* provision = app.add_subcommand("provision", "send keygen output to a running oracle");
  provision->add_option("--cco", prov_cco)->required();
  provision->add_option("--dir", prov_dir)->required();
  provision->callback([&] {
    connect(prov_cco).provision(load_bundle(prov_dir));
    std::cout << "provisioned\n";
  });

  std::string pol_cco;
  std::uint64_t pol_J1 = 1;
  auto* policy = app.add_subcommand("policy", "change the oracle's anchor storage policy");
  policy->add_option("--cco", pol_cco)->required();
  policy->add_option("--J1", pol_J1)->required();
  policy->callback([&] { connect(pol_cco).set_storage_policy(pol_J1); });

  RequestArgs rq;
  auto* request = app.add_subcommand("request", "fetch one commitment");
  request->add_option("--cco", rq.cco)->required();
  request->add_option("--scheme", rq.scheme)->check(CLI::IsMember({"pq", "la", "hy"}));
  request->add_option("--id", rq.id)->required();
  request->add_option("--epoch", rq.epoch)->required();
  request->add_option("--L", rq.L);
  request->add_option("--out", rq.out, "write raw bytes instead of hex");
  request->callback([&] { rc = cmd_request(rq); });

  RequestArgs ex;
  auto* exp = app.add_subcommand("export", "fetch a range of commitments for offline verification");
  exp->add_option("--cco", ex.cco)->required();
  exp->add_option("--scheme", ex.scheme)->check(CLI::IsMember({"pq", "la", "hy"}));
  exp->add_option("--id", ex.id)->required();
  exp->add_option("--from", ex.epoch)->required();
  exp->add_option("--to", ex.to)->required();
  exp->add_option("--L", ex.L);
  exp->add_option("--out", ex.out)->required();
  exp->callback([&] { rc = cmd_export(ex); });

  BenchArgs bn;
  auto* bench = app.add_subcommand("bench", "hash counts, timings and sizes");
  bench->add_option("--scheme", bn.scheme)->check(CLI::IsMember({"pq", "la", "hy"}));
  bench->add_option("--J1", bn.opt.J1)->capture_default_str();
  bench->add_option("--J2", bn.opt.J2)->capture_default_str();
  bench->add_option("--L", bn.opt.L)->capture_default_str();
  bench->add_option("--iterations", bn.opt.iterations)->capture_default_str();
  bench->add_flag("--lines", bn.lines, "key=value output only");
  bench->add_flag("--table", bn.table, "table output only");
  bench->callback([&] { rc = cmd_bench(bn); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return rc;
}
