#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hases/bench.hpp"
#include "hases/keys.hpp"
#include "hases/net.hpp"

namespace py = pybind11;
using namespace hases;

namespace {

py::bytes to_py(ByteView b) { return py::bytes(reinterpret_cast<const char*>(b.data()), b.size()); }

Bytes from_py(const py::bytes& b) {
  std::string_view s = b;
  return Bytes(s.begin(), s.end());
}

std::vector<Bytes> batch_from_py(const std::vector<py::bytes>& batch) {
  std::vector<Bytes> out;
  for (const auto& m : batch) out.push_back(from_py(m));
  return out;
}

// A signer key as held by Python: the evolving state plus its public half.
class Signer {
 public:
  explicit Signer(SignerKey key) : key_(std::move(key)) {}
  static Signer from_bytes(const py::bytes& b) { return Signer(decode_signer(from_py(b))); }

  py::bytes to_bytes() const { return to_py(encode_signer(key_)); }
  py::bytes public_bytes() const { return to_py(PublicInfo::of(key_).serialize()); }
  std::string scheme() const { return to_string(scheme_of(key_)); }
  std::string id() const { return id_of(key_).hex(); }
  std::uint64_t epoch() const {
    return std::visit([](const auto& s) { return s.epoch(); }, key_);
  }

  py::bytes sign(const std::vector<py::bytes>& batch) {
    auto msgs = batch_from_py(batch);
    Bytes out;
    {
      py::gil_scoped_release release;
      out = std::visit(
          [&](auto& s) -> Bytes {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, PqSigner>) {
              if (msgs.size() != 1) throw InvalidParams("PQ signs exactly one message per epoch");
              return s.sign(msgs[0]).serialize();
            } else {
              return s.sign(msgs).serialize();
            }
          },
          key_);
    }
    return to_py(out);
  }

 private:
  SignerKey key_;
};

struct Ceremony {
  py::bytes bundle;
  std::vector<Signer> signers;
};

Ceremony keygen(const std::string& scheme_name, const std::vector<std::string>& names,
                std::uint64_t J, std::uint64_t J1, std::uint32_t L, const std::string& backend) {
  if (J1 == 0 || J % J1 != 0) throw InvalidParams("J1 must divide J");
  std::vector<SignerId> ids;
  for (const auto& n : names) ids.push_back(SignerId::parse(n));
  const auto pq = PqParams::standard(J1, J / J1);
  const LaParams la{parse_backend(backend), J, L};
  Ceremony out;
  switch (parse_scheme(scheme_name)) {
    case Scheme::pq: {
      auto k = pq_keygen(ids, pq);
      out.bundle = to_py(ProvisioningBundle::from(k).serialize());
      for (auto& s : k.signers) out.signers.emplace_back(std::move(s));
      break;
    }
    case Scheme::la: {
      auto k = la_keygen(ids, la);
      out.bundle = to_py(ProvisioningBundle::from(k).serialize());
      for (auto& s : k.signers) out.signers.emplace_back(std::move(s));
      break;
    }
    case Scheme::hy: {
      auto k = hy_keygen(ids, HyParams{la, pq});
      out.bundle = to_py(ProvisioningBundle::from(k).serialize());
      for (auto& s : k.signers) out.signers.emplace_back(std::move(s));
      break;
    }
  }
  return out;
}

std::string verify(const py::bytes& public_info, const py::bytes& commitment,
                   const std::vector<py::bytes>& batch, const py::bytes& signature) {
  const auto info = PublicInfo::parse(from_py(public_info));
  const auto msgs = batch_from_py(batch);
  const auto c = from_py(commitment);
  const auto s = from_py(signature);
  py::gil_scoped_release release;
  Verdict v = Verdict::reject;
  try {
    switch (info.scheme) {
      case Scheme::pq:
        if (msgs.size() != 1) return "mismatch";
        v = pq_verify(PqCommitment::parse(c), msgs[0], PqSignature::parse(s), *info.pq);
        break;
      case Scheme::la: {
        const Group& g = info.la->group();
        v = la_aver(info.Y, LaCommitment::parse(c, g), msgs, LaAggSignature::parse(s, g), g);
        break;
      }
      case Scheme::hy: {
        const Group& g = info.la->group();
        v = hy_verify(info.Y, HyCommitment::parse(c, g), msgs, HySignature::parse(s, g),
                      info.hy_params());
        break;
      }
    }
  } catch (const FormatError&) {
    v = Verdict::reject;
  }
  return to_string(v);
}

class Oracle {
 public:
  void provision(const py::bytes& bundle) { store_.provision(ProvisioningBundle::parse(from_py(bundle))); }
  void set_storage_policy(std::uint64_t J1) { store_.set_storage_policy(J1); }

  py::bytes commitment(const std::string& scheme, const std::string& id, std::uint64_t epoch,
                       std::uint32_t L) const {
    const auto sid = SignerId::parse(id);
    switch (parse_scheme(scheme)) {
      case Scheme::pq:
        return to_py(store_.pq_commitment(sid, epoch).serialize());
      case Scheme::la:
        return to_py(store_.la_commitment(sid, epoch, L).serialize());
      case Scheme::hy:
        return to_py(store_.hy_commitment(sid, epoch, L).serialize());
    }
    return {};
  }

  std::vector<py::bytes> batch_export(const std::string& scheme, const std::string& id,
                                      std::uint64_t from, std::uint64_t to, std::uint32_t L) const {
    std::vector<py::bytes> out;
    for (const auto& c : store_.batch_export(parse_scheme(scheme), SignerId::parse(id), from, to, L))
      out.push_back(to_py(c));
    return out;
  }

  py::bytes handle_request(const py::bytes& frame) { return to_py(store_.handle_request(from_py(frame))); }

  py::dict stats() const {
    auto s = store_.stats();
    py::dict d;
    d["signers"] = s.signers;
    d["anchor_bytes"] = s.anchor_bytes;
    d["secret_bytes"] = s.secret_bytes;
    return d;
  }

  CcoStore& store() { return store_; }

 private:
  CcoStore store_;
};

py::dict counters_dict(const HashCounters& c) {
  py::dict d;
  d["h0"] = c.h0;
  d["h1"] = c.h1;
  d["h2"] = c.h2;
  d["total"] = c.total();
  return d;
}

}  // namespace

PYBIND11_MODULE(_hases, m) {
  m.doc() = "Hash-based and aggregate signatures with a commitment oracle";

  // Translators run newest first, so the base class goes in first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
  py::register_exception<InvalidParams>(m, "InvalidParams", PyExc_ValueError);
  py::register_exception<DuplicateId>(m, "DuplicateId", PyExc_ValueError);
  py::register_exception<UnknownId>(m, "UnknownId", PyExc_KeyError);
  py::register_exception<EpochRange>(m, "EpochRange", PyExc_IndexError);
  py::register_exception<EpochExhausted>(m, "EpochExhausted", PyExc_RuntimeError);

  m.def("hash", [](int domain, const py::bytes& data) {
    if (domain < 0 || domain > 2) throw InvalidParams("domain must be 0, 1 or 2");
    return to_py(hash(static_cast<Domain>(domain), from_py(data)).bytes);
  }, py::arg("domain"), py::arg("data"));
  m.def("hash_counters", [] { return counters_dict(hash_counters()); });
  m.def("reset_hash_counters", &reset_hash_counters);
  m.def("message_to_indices", [](const py::bytes& msg, std::uint32_t t, std::uint32_t k) {
    PqParams p;
    p.t = t;
    p.k = k;
    p.validate();
    return message_to_indices(from_py(msg), p);
  }, py::arg("message"), py::arg("t") = 1024, py::arg("k") = 16);

  py::class_<Signer>(m, "Signer")
      .def_static("from_bytes", &Signer::from_bytes)
      .def("to_bytes", &Signer::to_bytes)
      .def("public_bytes", &Signer::public_bytes)
      .def("sign", &Signer::sign, py::arg("batch"),
           "Signs one batch (a single message for pq) and advances the epoch.")
      .def_property_readonly("scheme", &Signer::scheme)
      .def_property_readonly("id", &Signer::id)
      .def_property_readonly("epoch", &Signer::epoch);

  py::class_<Ceremony>(m, "Ceremony")
      .def_readonly("bundle", &Ceremony::bundle)
      .def_readonly("signers", &Ceremony::signers);

  m.def("keygen", &keygen, py::arg("scheme"), py::arg("ids"), py::arg("J") = 1024,
        py::arg("J1") = 1, py::arg("L") = 8, py::arg("backend") = "production");
  m.def("verify", &verify, py::arg("public"), py::arg("commitment"), py::arg("batch"),
        py::arg("signature"), "Returns 'accept', 'reject' or 'mismatch'.");

  py::class_<Oracle>(m, "Oracle")
      .def(py::init<>())
      .def("provision", &Oracle::provision)
      .def("set_storage_policy", &Oracle::set_storage_policy)
      .def("commitment", &Oracle::commitment, py::arg("scheme"), py::arg("id"), py::arg("epoch"),
           py::arg("L") = 0)
      .def("batch_export", &Oracle::batch_export, py::arg("scheme"), py::arg("id"),
           py::arg("first"), py::arg("last"), py::arg("L") = 0)
      .def("handle_request", &Oracle::handle_request)
      .def("stats", &Oracle::stats);

  py::class_<CcoServer>(m, "Server")
      .def(py::init([](Oracle& o, const std::string& host, std::uint16_t port) {
             return std::make_unique<CcoServer>(o.store(), host, port);
           }),
           py::arg("oracle"), py::arg("host") = "127.0.0.1", py::arg("port") = 0,
           py::keep_alive<1, 2>())
      .def("start", &CcoServer::start)
      .def("stop", &CcoServer::stop, py::call_guard<py::gil_scoped_release>())
      .def_property_readonly("port", &CcoServer::port);

  m.def("fetch_commitment", [](const std::string& host, std::uint16_t port, const std::string& scheme,
                               const std::string& id, std::uint64_t epoch, std::uint32_t L) {
    CcoClient client(host, port);
    ByteWriter w;
    auto s = parse_scheme(scheme);
    w.id(SignerId::parse(id)).u64(epoch);
    if (s != Scheme::pq) w.u32(L);
    auto reply = client.call(static_cast<MessageType>(s), w.take());
    if (reply.status != Status::ok) throw Error(std::string("oracle answered ") + to_string(reply.status));
    return to_py(reply.payload);
  }, py::arg("host"), py::arg("port"), py::arg("scheme"), py::arg("id"), py::arg("epoch"),
     py::arg("L") = 0);

  m.def("bench", [](const std::string& scheme, std::uint64_t J1, std::uint64_t J2, std::uint32_t L,
                    unsigned iterations, const std::string& backend) {
    BenchOptions o{parse_scheme(scheme), J1, J2, L, parse_backend(backend), iterations};
    auto rep = run_bench(o);
    py::dict out;
    for (const auto& r : rep.rows) {
      py::dict row;
      row["hashes"] = r.hashes;
      row["us"] = r.micros;
      row["bytes"] = r.bytes;
      out[py::str(r.op)] = row;
    }
    return out;
  }, py::arg("scheme"), py::arg("J1") = 1, py::arg("J2") = 1024, py::arg("L") = 8,
     py::arg("iterations") = 100, py::arg("backend") = "production");
}
