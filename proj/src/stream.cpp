#include "hases/stream.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

namespace hases {

StreamFormat guess_format(const std::string& path) {
  auto dot = path.rfind('.');
  if (dot != std::string::npos) {
    auto ext = path.substr(dot);
    if (ext == ".bin" || ext == ".dat") return StreamFormat::binary;
  }
  return StreamFormat::csv;
}

MessageStream MessageStream::read_csv(std::istream& in) {
  std::vector<Record> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (lineno == 1 && line == "timestamp,payload") continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw FormatError("line " + std::to_string(lineno) + ": expected timestamp,payload");
    out.push_back({line.substr(0, comma), Bytes(line.begin() + comma + 1, line.end())});
  }
  return MessageStream(std::move(out));
}

MessageStream MessageStream::read_binary(std::istream& in) {
  std::vector<Record> out;
  while (true) {
    std::uint8_t hdr[12];
    in.read(reinterpret_cast<char*>(hdr), sizeof hdr);
    if (in.gcount() == 0) break;
    if (in.gcount() != sizeof hdr) throw FormatError("truncated record header");
    ByteReader r(hdr);
    auto ts = r.u64();
    auto len = r.u32();
    Bytes payload(len);
    in.read(reinterpret_cast<char*>(payload.data()), len);
    if (static_cast<std::size_t>(in.gcount()) != len) throw FormatError("truncated record");
    out.push_back({std::to_string(ts), std::move(payload)});
  }
  return MessageStream(std::move(out));
}

MessageStream MessageStream::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  return guess_format(path) == StreamFormat::binary ? read_binary(in) : read_csv(in);
}

void MessageStream::write_csv(std::ostream& out) const {
  for (const auto& r : records_) {
    if (r.timestamp.find(',') != std::string::npos) throw FormatError("comma in timestamp");
    for (auto b : r.payload)
      if (b == '\n' || b == '\r') throw FormatError("payload not representable in CSV");
    out << r.timestamp << ',';
    out.write(reinterpret_cast<const char*>(r.payload.data()),
              static_cast<std::streamsize>(r.payload.size()));
    out << '\n';
  }
}

void MessageStream::write_binary(std::ostream& out) const {
  for (const auto& r : records_) {
    std::uint64_t ts = 0;
    auto [end, ec] = std::from_chars(r.timestamp.data(), r.timestamp.data() + r.timestamp.size(), ts);
    if (ec != std::errc{} || end != r.timestamp.data() + r.timestamp.size())
      throw FormatError("timestamp is not an integer: " + r.timestamp);
    ByteWriter w;
    w.u64(ts).u32(static_cast<std::uint32_t>(r.payload.size())).raw(r.payload);
    auto bytes = w.take();
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  }
}

std::vector<std::vector<Bytes>> MessageStream::batches(std::size_t L) const {
  if (L == 0) throw InvalidParams("batch size must be positive");
  if (records_.size() % L != 0)
    throw FormatError(std::to_string(records_.size()) + " records do not split into batches of " +
                      std::to_string(L));
  std::vector<std::vector<Bytes>> out;
  for (std::size_t i = 0; i < records_.size(); i += L) {
    std::vector<Bytes> batch;
    for (std::size_t l = 0; l < L; ++l) batch.push_back(records_[i + l].payload);
    out.push_back(std::move(batch));
  }
  return out;
}

}  // namespace hases
