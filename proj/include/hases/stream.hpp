#pragma once

// Message streams for the command-line tools.
//
// CSV: one "timestamp,payload" record per line; everything after the first
// comma is the payload, taken verbatim. An optional "timestamp,payload"
// header line is skipped.
// Binary: repeated be64(timestamp) || be32(length) || payload.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hases/common.hpp"

namespace hases {

struct Record {
  std::string timestamp;
  Bytes payload;
  bool operator==(const Record&) const = default;
};

enum class StreamFormat { csv, binary };

/// .bin / .dat files are binary, anything else is CSV.
StreamFormat guess_format(const std::string& path);

class MessageStream {
 public:
  MessageStream() = default;
  explicit MessageStream(std::vector<Record> records) : records_(std::move(records)) {}

  static MessageStream read_csv(std::istream& in);
  static MessageStream read_binary(std::istream& in);
  static MessageStream load(const std::string& path);

  void write_csv(std::ostream& out) const;
  /// Timestamps must be decimal integers.
  void write_binary(std::ostream& out) const;

  const std::vector<Record>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  void add(std::string timestamp, Bytes payload) {
    records_.push_back({std::move(timestamp), std::move(payload)});
  }

  /// Payloads in order, cut into windows of L. A short final window is a
  /// FormatError; it is never padded.
  std::vector<std::vector<Bytes>> batches(std::size_t L) const;

 private:
  std::vector<Record> records_;
};

}  // namespace hases
