#include "hases/keys.hpp"

#include <cstdio>
#include <fstream>
#include <iterator>

namespace hases {
namespace {

constexpr std::uint8_t kPublicBit = 0x20;

void put_pq_params(ByteWriter& w, const PqParams& p) { w.u32(p.k).u32(p.t).u64(p.J1).u64(p.J2); }

PqParams get_pq_params(ByteReader& r) {
  PqParams p;
  p.k = r.u32();
  p.t = r.u32();
  p.J1 = r.u64();
  p.J2 = r.u64();
  try {
    p.validate();
  } catch (const InvalidParams& e) {
    throw FormatError(std::string("key file: ") + e.what());
  }
  return p;
}

void put_la_params(ByteWriter& w, const LaParams& p) {
  w.u8(static_cast<std::uint8_t>(p.backend)).u64(p.J).u32(p.L);
}

LaParams get_la_params(ByteReader& r) {
  LaParams p;
  auto b = r.u8();
  if (b != static_cast<std::uint8_t>(Backend::tiny) &&
      b != static_cast<std::uint8_t>(Backend::ristretto255))
    throw FormatError("key file: unknown group backend");
  p.backend = static_cast<Backend>(b);
  p.J = r.u64();
  p.L = r.u32();
  try {
    p.validate();
  } catch (const InvalidParams& e) {
    throw FormatError(std::string("key file: ") + e.what());
  }
  return p;
}

void put_pq(ByteWriter& w, const PqSigner& s) {
  w.id(s.id()).u64(s.epoch()).raw(s.key().bytes);
  put_pq_params(w, s.params());
}

PqSigner get_pq(ByteReader& r) {
  auto id = r.id();
  auto j = r.u64();
  Digest sk{r.fixed<32>()};
  auto p = get_pq_params(r);
  return PqSigner(id, sk, j, p);
}

void put_la(ByteWriter& w, const LaSigner& s) {
  w.id(s.id()).u64(s.epoch()).raw(s.secret().bytes);
  put_la_params(w, s.params());
}

LaSigner get_la(ByteReader& r) {
  auto id = r.id();
  auto j = r.u64();
  Scalar y{r.fixed<32>()};
  auto p = get_la_params(r);
  if (!p.group().is_canonical(y) || y.is_zero()) throw FormatError("key file: bad secret scalar");
  return LaSigner(id, y, j, p);
}

}  // namespace

Bytes encode_signer(const SignerKey& key) {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(scheme_of(key)));
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PqSigner>) {
          put_pq(w, s);
        } else if constexpr (std::is_same_v<T, LaSigner>) {
          put_la(w, s);
        } else {
          put_la(w, s.la());
          put_pq(w, s.pq());
        }
      },
      key);
  return w.take();
}

SignerKey decode_signer(ByteView in) {
  ByteReader r(in);
  auto tag = r.u8();
  auto out = [&]() -> SignerKey {
    switch (tag) {
      case 0x01:
        return get_pq(r);
      case 0x02:
        return get_la(r);
      case 0x03: {
        auto la = get_la(r);
        auto pq = get_pq(r);
        if (la.id() != pq.id() || la.epoch() != pq.epoch())
          throw FormatError("key file: hybrid halves out of step");
        return HySigner(std::move(la), std::move(pq));
      }
      default:
        throw FormatError("not a signer key file");
    }
  }();
  r.expect_end();
  return out;
}

Scheme scheme_of(const SignerKey& key) {
  switch (key.index()) {
    case 0:
      return Scheme::pq;
    case 1:
      return Scheme::la;
    default:
      return Scheme::hy;
  }
}

const SignerId& id_of(const SignerKey& key) {
  return std::visit([](const auto& s) -> const SignerId& { return s.id(); }, key);
}

PublicInfo PublicInfo::of(const SignerKey& key) {
  PublicInfo info;
  info.scheme = scheme_of(key);
  info.id = id_of(key);
  if (auto* pq = std::get_if<PqSigner>(&key)) {
    info.pq = pq->params();
  } else if (auto* la = std::get_if<LaSigner>(&key)) {
    info.la = la->params();
    info.Y = la->public_key().Y;
  } else {
    const auto& hy = std::get<HySigner>(key);
    info.la = hy.la().params();
    info.pq = hy.pq().params();
    info.Y = hy.la().public_key().Y;
  }
  return info;
}

Bytes PublicInfo::serialize() const {
  ByteWriter w;
  w.u8(kPublicBit | static_cast<std::uint8_t>(scheme)).id(id);
  if (la) {
    put_la_params(w, *la);
    w.raw(Y.bytes);
  }
  if (pq) put_pq_params(w, *pq);
  return w.take();
}

PublicInfo PublicInfo::parse(ByteView in) {
  ByteReader r(in);
  auto tag = r.u8();
  if ((tag & 0xf0) != kPublicBit || (tag & 0x0f) < 1 || (tag & 0x0f) > 3)
    throw FormatError("not a public key file");
  PublicInfo info;
  info.scheme = static_cast<Scheme>(tag & 0x0f);
  info.id = r.id();
  if (info.scheme != Scheme::pq) {
    info.la = get_la_params(r);
    info.Y = Element{r.fixed<32>()};
    if (!info.la->group().is_member(info.Y)) throw FormatError("public key is not a group element");
  }
  if (info.scheme != Scheme::la) info.pq = get_pq_params(r);
  r.expect_end();
  return info;
}

Bytes encode_list(const std::vector<Bytes>& items) {
  ByteWriter w;
  w.u64(items.size());
  for (const auto& it : items) w.u32(static_cast<std::uint32_t>(it.size())).raw(it);
  return w.take();
}

std::vector<Bytes> decode_list(ByteView in) {
  ByteReader r(in);
  auto n = r.u64();
  if (n > r.remaining() / 4) throw FormatError("list count exceeds input");
  std::vector<Bytes> out;
  out.reserve(n);
  for (std::uint64_t i = 0; i < n; ++i) {
    auto len = r.u32();
    auto v = r.raw(len);
    out.emplace_back(v.begin(), v.end());
  }
  r.expect_end();
  return out;
}

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, ByteView data) {
  const auto tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out.write(reinterpret_cast<const char*>(data.data()), static_cast<std::streamsize>(data.size()));
    if (!out) throw Error("short write to " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error("cannot rename " + tmp);
  }
}

}  // namespace hases
