#include "hases/net.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

namespace hases {
namespace {

constexpr int kPollMs = 100;

std::string sys_error(const char* what) { return std::string(what) + ": " + std::strerror(errno); }

void send_all(int fd, const std::uint8_t* data, std::size_t n) {
  while (n > 0) {
    auto sent = ::send(fd, data, n, MSG_NOSIGNAL);
    if (sent < 0) {
      if (errno == EINTR) continue;
      throw NetError(sys_error("send"));
    }
    data += sent;
    n -= static_cast<std::size_t>(sent);
  }
}

// Returns false on EOF before any byte was read.
bool recv_all(int fd, std::uint8_t* data, std::size_t n) {
  std::size_t got = 0;
  while (got < n) {
    auto r = ::recv(fd, data + got, n - got, 0);
    if (r < 0) {
      if (errno == EINTR) continue;
      throw NetError(sys_error("recv"));
    }
    if (r == 0) {
      if (got == 0) return false;
      throw NetError("connection closed mid-frame");
    }
    got += static_cast<std::size_t>(r);
  }
  return true;
}

bool readable(int fd, int timeout_ms) {
  pollfd p{fd, POLLIN, 0};
  int r = ::poll(&p, 1, timeout_ms);
  return r > 0;
}

}  // namespace

void write_frame(int fd, ByteView body) {
  if (body.size() > kMaxFrameSize) throw NetError("frame too large");
  auto len = be32(static_cast<std::uint32_t>(body.size()));
  send_all(fd, len.data(), len.size());
  send_all(fd, body.data(), body.size());
}

std::optional<Bytes> read_frame(int fd) {
  std::uint8_t hdr[4];
  if (!recv_all(fd, hdr, 4)) return std::nullopt;
  const std::uint32_t len = std::uint32_t{hdr[0]} << 24 | std::uint32_t{hdr[1]} << 16 |
                            std::uint32_t{hdr[2]} << 8 | hdr[3];
  if (len > kMaxFrameSize) throw NetError("peer announced an oversized frame");
  Bytes body(len);
  if (len > 0 && !recv_all(fd, body.data(), len)) throw NetError("connection closed mid-frame");
  return body;
}

CcoServer::CcoServer(CcoStore& store, std::string host, std::uint16_t port)
    : store_(store), host_(std::move(host)), port_(port) {}

CcoServer::~CcoServer() { stop(); }

void CcoServer::start() {
  if (running_) return;
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw NetError(sys_error("socket"));
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port_);
  if (::inet_pton(AF_INET, host_.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    throw NetError("invalid listen address " + host_);
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0 ||
      ::listen(listen_fd_, 64) < 0) {
    auto msg = sys_error("bind/listen");
    ::close(listen_fd_);
    throw NetError(msg);
  }
  socklen_t len = sizeof addr;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  running_ = true;
  acceptor_ = std::thread([this] { accept_loop(); });
}

void CcoServer::stop() {
  if (!running_.exchange(false)) return;
  if (acceptor_.joinable()) acceptor_.join();
  ::close(listen_fd_);
  listen_fd_ = -1;
  std::list<Worker> workers;
  {
    std::lock_guard lock(workers_mu_);
    workers.swap(workers_);
  }
  for (auto& w : workers) w.thread.join();
}

void CcoServer::wait() {
  while (running_) std::this_thread::sleep_for(std::chrono::milliseconds(kPollMs));
}

void CcoServer::accept_loop() {
  while (running_) {
    if (!readable(listen_fd_, kPollMs)) continue;
    int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    int one = 1;
    ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
    reap_finished();
    auto done = std::make_shared<std::atomic<bool>>(false);
    std::lock_guard lock(workers_mu_);
    workers_.push_back({std::thread([this, fd, done] {
                          serve_connection(fd);
                          done->store(true);
                        }),
                        done});
  }
}

void CcoServer::reap_finished() {
  std::lock_guard lock(workers_mu_);
  for (auto it = workers_.begin(); it != workers_.end();) {
    if (it->done->load()) {
      it->thread.join();
      it = workers_.erase(it);
    } else {
      ++it;
    }
  }
}

void CcoServer::serve_connection(int fd) {
  try {
    while (running_) {
      if (!readable(fd, kPollMs)) continue;
      auto frame = read_frame(fd);
      if (!frame) break;
      write_frame(fd, store_.handle_request(*frame));
    }
  } catch (const NetError&) {
    // peer went away or sent garbage framing; drop the connection
  }
  ::close(fd);
}

CcoClient::CcoClient(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  const auto service = std::to_string(port);
  if (int rc = ::getaddrinfo(host.c_str(), service.c_str(), &hints, &res); rc != 0)
    throw NetError("resolve " + host + ": " + gai_strerror(rc));
  for (auto* ai = res; ai; ai = ai->ai_next) {
    fd_ = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd_ < 0) continue;
    if (::connect(fd_, ai->ai_addr, ai->ai_addrlen) == 0) break;
    ::close(fd_);
    fd_ = -1;
  }
  ::freeaddrinfo(res);
  if (fd_ < 0) throw NetError("cannot connect to " + host + ":" + service);
  int one = 1;
  ::setsockopt(fd_, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
}

CcoClient CcoClient::connect(const std::string& endpoint) {
  auto colon = endpoint.rfind(':');
  if (colon == std::string::npos) throw NetError("endpoint must be host:port");
  int port = std::stoi(endpoint.substr(colon + 1));
  if (port <= 0 || port > 65535) throw NetError("port out of range");
  return CcoClient(endpoint.substr(0, colon), static_cast<std::uint16_t>(port));
}

CcoClient::~CcoClient() {
  if (fd_ >= 0) ::close(fd_);
}

CcoClient::CcoClient(CcoClient&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }

Reply CcoClient::call(MessageType type, ByteView body) {
  Bytes frame;
  frame.reserve(body.size() + 1);
  frame.push_back(static_cast<std::uint8_t>(type));
  frame.insert(frame.end(), body.begin(), body.end());
  write_frame(fd_, frame);
  auto resp = read_frame(fd_);
  if (!resp) throw NetError("oracle closed the connection");
  if (resp->size() < 2 || (*resp)[0] != (static_cast<std::uint8_t>(type) | kResponseBit))
    throw NetError("unexpected response frame");
  return {static_cast<Status>((*resp)[1]), Bytes(resp->begin() + 2, resp->end())};
}

Bytes CcoClient::checked(MessageType type, ByteView body) {
  auto reply = call(type, body);
  if (reply.status != Status::ok)
    throw CcoError(reply.status, std::string("oracle answered ") + to_string(reply.status));
  return std::move(reply.payload);
}

PqCommitment CcoClient::pq_commitment(const SignerId& id, std::uint64_t epoch) {
  ByteWriter w;
  w.id(id).u64(epoch);
  return PqCommitment::parse(checked(MessageType::pq_request, w.take()));
}

LaCommitment CcoClient::la_commitment(const SignerId& id, std::uint64_t epoch, std::uint32_t L,
                                      const Group& g) {
  ByteWriter w;
  w.id(id).u64(epoch).u32(L);
  return LaCommitment::parse(checked(MessageType::la_request, w.take()), g);
}

HyCommitment CcoClient::hy_commitment(const SignerId& id, std::uint64_t epoch, std::uint32_t L,
                                      const Group& g) {
  ByteWriter w;
  w.id(id).u64(epoch).u32(L);
  return HyCommitment::parse(checked(MessageType::hy_request, w.take()), g);
}

Bytes CcoClient::batch_export(Scheme scheme, const SignerId& id, std::uint64_t from,
                              std::uint64_t to, std::uint32_t L) {
  ByteWriter w;
  w.u8(static_cast<std::uint8_t>(scheme)).id(id).u64(from).u64(to).u32(L);
  return checked(MessageType::batch_export, w.take());
}

void CcoClient::provision(const ProvisioningBundle& bundle) {
  checked(MessageType::provision, bundle.serialize());
}

void CcoClient::set_storage_policy(std::uint64_t J1) {
  ByteWriter w;
  w.u64(J1);
  checked(MessageType::storage_policy, w.take());
}

}  // namespace hases
