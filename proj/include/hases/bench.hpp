#pragma once

// Desk-scale benchmark: hash-call counts come from the hash counters, wall
// times are averages over `iterations` runs.

#include <iosfwd>
#include <string>
#include <vector>

#include "hases/cco.hpp"

namespace hases {

struct BenchOptions {
  Scheme scheme = Scheme::pq;
  std::uint64_t J1 = 1;
  std::uint64_t J2 = 1024;
  std::uint32_t L = 8;
  Backend backend = Backend::ristretto255;
  unsigned iterations = 100;
};

struct BenchRow {
  std::string op;
  std::uint64_t hashes = 0;  // per call
  double micros = 0;         // mean per call
  std::size_t bytes = 0;     // size of the produced artifact, 0 if none
};

struct BenchReport {
  BenchOptions options;
  std::vector<BenchRow> rows;
  std::size_t cco_anchor_bytes = 0;
  std::size_t cco_secret_bytes = 0;

  const BenchRow* find(std::string_view op) const;
  void print_table(std::ostream& out) const;
  /// One key=value line per figure, e.g. "pq.sign.hashes=18".
  void print_lines(std::ostream& out) const;
};

BenchReport run_bench(const BenchOptions& options);

}  // namespace hases
