#pragma once

// Stream transport for the CCO: every message is be32(length) || body.

#include <atomic>
#include <cstdint>
#include <list>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hases/cco.hpp"

namespace hases {

inline constexpr std::uint32_t kMaxFrameSize = 64u << 20;

class NetError : public Error {
 public:
  using Error::Error;
};

/// Writes one frame; throws NetError on failure.
void write_frame(int fd, ByteView body);
/// Reads one frame. Returns nullopt on clean EOF before the header.
std::optional<Bytes> read_frame(int fd);

/// Threaded TCP front end for a CcoStore. One thread per connection; the
/// store provides the reader/writer exclusion.
class CcoServer {
 public:
  /// Port 0 picks an ephemeral port.
  explicit CcoServer(CcoStore& store, std::string host = "127.0.0.1", std::uint16_t port = 0);
  ~CcoServer();
  CcoServer(const CcoServer&) = delete;
  CcoServer& operator=(const CcoServer&) = delete;

  void start();
  void stop();
  /// Blocks until stop() is called from another thread.
  void wait();
  std::uint16_t port() const { return port_; }

 private:
  struct Worker {
    std::thread thread;
    std::shared_ptr<std::atomic<bool>> done;
  };

  void accept_loop();
  void serve_connection(int fd);
  void reap_finished();

  CcoStore& store_;
  std::string host_;
  std::uint16_t port_;
  int listen_fd_ = -1;
  std::atomic<bool> running_{false};
  std::thread acceptor_;
  std::mutex workers_mu_;
  std::list<Worker> workers_;
};

struct Reply {
  Status status = Status::ok;
  Bytes payload;
};

class CcoClient {
 public:
  CcoClient(const std::string& host, std::uint16_t port);
  /// "host:port"
  static CcoClient connect(const std::string& endpoint);
  ~CcoClient();
  CcoClient(CcoClient&& other) noexcept;
  CcoClient& operator=(CcoClient&&) = delete;
  CcoClient(const CcoClient&) = delete;

  Reply call(MessageType type, ByteView body);

  PqCommitment pq_commitment(const SignerId& id, std::uint64_t epoch);
  LaCommitment la_commitment(const SignerId& id, std::uint64_t epoch, std::uint32_t L,
                             const Group& g);
  HyCommitment hy_commitment(const SignerId& id, std::uint64_t epoch, std::uint32_t L,
                             const Group& g);
  /// Raw export file (see encode_export).
  Bytes batch_export(Scheme scheme, const SignerId& id, std::uint64_t from, std::uint64_t to,
                     std::uint32_t L = 0);
  void provision(const ProvisioningBundle& bundle);
  void set_storage_policy(std::uint64_t J1);

 private:
  Bytes checked(MessageType type, ByteView body);

  int fd_ = -1;
};

}  // namespace hases
