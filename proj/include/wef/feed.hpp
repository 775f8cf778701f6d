#pragma once

#include <netdb.h>
#include <poll.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstring>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "wef/bounded_queue.hpp"
#include "wef/fixture.hpp"
#include "wef/generator.hpp"
#include "wef/irc.hpp"
#include "wef/raw_line.hpp"
#include "wef/text.hpp"

namespace wef {

inline int64_t steady_now_ms() {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

enum class SourceKind { live, replay, synthetic };

// Exponential reconnect backoff; max_retries < 0 retries forever.
struct BackoffSchedule {
    std::chrono::milliseconds initial{1000};
    double factor = 2.0;
    std::chrono::milliseconds cap{60000};
    int max_retries = -1;
};

struct FeedConfig {
    SourceKind source_kind = SourceKind::replay;
    std::string server_host = "irc.wikimedia.org";
    int server_port = 6667;
    std::string nickname = "wef";
    std::vector<ChannelName> channels;
    BackoffSchedule reconnect_backoff;
    int connect_timeout_ms = 10000;
    std::string replay_path;
    double replay_rate = 0.0;  // events/second; <= 0 means unlimited
    size_t queue_capacity = 1024;
};

inline void validate(const FeedConfig& config) {
    if (config.channels.empty()) throw std::invalid_argument("feed: channel list is empty");
    std::vector<std::string> rooms;
    rooms.reserve(config.channels.size());
    for (const auto& ch : config.channels) rooms.push_back(ch.room);
    std::sort(rooms.begin(), rooms.end());
    if (std::adjacent_find(rooms.begin(), rooms.end()) != rooms.end())
        throw std::invalid_argument("feed: duplicate channel");
}

struct FeedMetrics {
    uint64_t foreign_channel = 0;
    uint64_t decode_lossy = 0;
};

namespace detail {

struct FeedShared {
    explicit FeedShared(size_t capacity) : queue(capacity) {}

    BoundedQueue<RawFeedLine> queue;
    std::atomic<bool> stop{false};
    std::atomic<uint64_t> foreign_channel{0};
    std::atomic<uint64_t> decode_lossy{0};
    std::mutex error_mu;
    std::string error;  // empty while healthy / after clean end

    void fail(std::string message) {
        {
            std::lock_guard lock(error_mu);
            if (error.empty()) error = std::move(message);
        }
        queue.close();
    }
};

}  // namespace detail

// A uniform pull stream of RawFeedLine backed by one producer thread.
// next() blocks for the next line and returns false once the source is
// drained; error() then distinguishes clean end from terminal failure.
class FeedStream {
  public:
    FeedStream() = default;
    FeedStream(std::shared_ptr<detail::FeedShared> shared, std::thread worker)
        : shared_(std::move(shared)), worker_(std::move(worker)) {}

    FeedStream(FeedStream&&) = default;
    FeedStream& operator=(FeedStream&& other) {
        shutdown();
        shared_ = std::move(other.shared_);
        worker_ = std::move(other.worker_);
        return *this;
    }

    ~FeedStream() { shutdown(); }

    bool next(RawFeedLine& out) {
        if (!shared_) return false;
        return shared_->queue.pop(out) == PopStatus::ok;
    }

    // Asks the producer to stop; already queued lines still drain.
    void stop() {
        if (shared_) shared_->stop = true;
    }

    std::optional<std::string> error() const {
        if (!shared_) return std::nullopt;
        std::lock_guard lock(shared_->error_mu);
        if (shared_->error.empty()) return std::nullopt;
        return shared_->error;
    }

    FeedMetrics metrics() const {
        if (!shared_) return {};
        return {shared_->foreign_channel.load(), shared_->decode_lossy.load()};
    }

  private:
    void shutdown() {
        if (shared_) {
            shared_->stop = true;
            shared_->queue.close(/*discard_pending=*/true);
        }
        if (worker_.joinable()) worker_.join();
    }

    std::shared_ptr<detail::FeedShared> shared_;
    std::thread worker_;
};

namespace detail {

// Sleeps in short slices so a stop request interrupts promptly.
inline bool interruptible_sleep(FeedShared& shared, std::chrono::milliseconds total) {
    auto deadline = std::chrono::steady_clock::now() + total;
    while (std::chrono::steady_clock::now() < deadline) {
        if (shared.stop) return false;
        std::this_thread::sleep_for(std::chrono::milliseconds(
            std::min<int64_t>(50, std::chrono::duration_cast<std::chrono::milliseconds>(
                                      deadline - std::chrono::steady_clock::now())
                                      .count() +
                                  1)));
    }
    return !shared.stop;
}

inline void run_replay(std::shared_ptr<FeedShared> shared, FeedConfig config,
                       std::map<std::string, ChannelName> rooms) {
    try {
        FixtureReader reader(config.replay_path);
        FixtureRecord rec;
        int64_t last_ts = 0;
        uint64_t emitted = 0;
        auto start = std::chrono::steady_clock::now();
        while (!shared->stop && reader.next(rec)) {
            auto it = rooms.find(rec.channel);
            if (it == rooms.end()) {
                shared->foreign_channel.fetch_add(1);
                continue;
            }
            if (config.replay_rate > 0) {
                auto due = start + std::chrono::milliseconds(
                                       static_cast<int64_t>(1000.0 * static_cast<double>(emitted) /
                                                            config.replay_rate));
                auto now = std::chrono::steady_clock::now();
                if (due > now &&
                    !interruptible_sleep(*shared,
                                         std::chrono::duration_cast<std::chrono::milliseconds>(due - now)))
                    break;
            }
            RawFeedLine line;
            line.channel = it->second;
            bool lossy = utf8_sanitize(rec.line, line.text);
            if (lossy) shared->decode_lossy.fetch_add(1);
            last_ts = std::max(last_ts, rec.ts);  // received_at never decreases
            line.received_at_ms = last_ts;
            ++emitted;
            if (!shared->queue.push(std::move(line))) break;
        }
        shared->queue.close();
    } catch (const std::exception& e) {
        shared->fail(e.what());
    }
}

inline void run_synthetic(std::shared_ptr<FeedShared> shared, GenConfig config, double rate,
                          std::function<void(const TruthRecord&)> on_truth) {
    try {
        Generator gen(std::move(config));
        uint64_t emitted = 0;
        auto start = std::chrono::steady_clock::now();
        while (!shared->stop) {
            auto item = gen.next();
            if (!item) break;
            if (rate > 0) {
                auto due = start + std::chrono::milliseconds(static_cast<int64_t>(
                                       1000.0 * static_cast<double>(emitted) / rate));
                auto now = std::chrono::steady_clock::now();
                if (due > now &&
                    !interruptible_sleep(*shared,
                                         std::chrono::duration_cast<std::chrono::milliseconds>(due - now)))
                    break;
            }
            if (on_truth) on_truth(item->second);
            ++emitted;
            if (!shared->queue.push(std::move(item->first))) break;
        }
        shared->queue.close();
    } catch (const std::exception& e) {
        shared->fail(e.what());
    }
}

// ---- live IRC driver ----

class Socket {
  public:
    Socket() = default;
    explicit Socket(int fd) : fd_(fd) {}
    Socket(const Socket&) = delete;
    Socket& operator=(const Socket&) = delete;
    Socket(Socket&& other) : fd_(other.fd_) { other.fd_ = -1; }
    Socket& operator=(Socket&& other) {
        reset();
        fd_ = other.fd_;
        other.fd_ = -1;
        return *this;
    }
    ~Socket() { reset(); }

    int fd() const { return fd_; }
    bool valid() const { return fd_ >= 0; }

    void reset() {
        if (fd_ >= 0) ::close(fd_);
        fd_ = -1;
    }

  private:
    int fd_ = -1;
};

inline Socket tcp_connect(const std::string& host, int port, int timeout_ms) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* result = nullptr;
    if (getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &result) != 0) return Socket();
    Socket sock;
    for (addrinfo* ai = result; ai; ai = ai->ai_next) {
        int fd = ::socket(ai->ai_family, ai->ai_socktype | SOCK_NONBLOCK, ai->ai_protocol);
        if (fd < 0) continue;
        int rc = ::connect(fd, ai->ai_addr, ai->ai_addrlen);
        if (rc != 0 && errno == EINPROGRESS) {
            pollfd pfd{fd, POLLOUT, 0};
            if (::poll(&pfd, 1, timeout_ms) == 1) {
                int err = 0;
                socklen_t len = sizeof(err);
                if (getsockopt(fd, SOL_SOCKET, SO_ERROR, &err, &len) == 0 && err == 0) rc = 0;
            }
        }
        if (rc == 0) {
            sock = Socket(fd);
            break;
        }
        ::close(fd);
    }
    freeaddrinfo(result);
    return sock;
}

inline bool send_all(int fd, std::string_view data) {
    while (!data.empty()) {
        ssize_t n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
        if (n < 0) {
            if (errno == EAGAIN || errno == EWOULDBLOCK || errno == EINTR) {
                pollfd pfd{fd, POLLOUT, 0};
                if (::poll(&pfd, 1, 5000) <= 0) return false;
                continue;
            }
            return false;
        }
        data.remove_prefix(static_cast<size_t>(n));
    }
    return true;
}

inline bool send_irc_lines(int fd, const std::vector<std::string>& lines) {
    for (const auto& line : lines)
        if (!send_all(fd, line + "\r\n")) return false;
    return true;
}

inline void run_live(std::shared_ptr<FeedShared> shared, FeedConfig config,
                     std::map<std::string, ChannelName> rooms) {
    std::vector<std::string> room_names;
    for (const auto& [room, ch] : rooms) room_names.push_back(room);

    auto backoff = config.reconnect_backoff;
    auto delay = backoff.initial;
    int failures = 0;
    auto register_failure = [&]() -> bool {
        ++failures;
        if (backoff.max_retries >= 0 && failures > backoff.max_retries) {
            shared->fail("server unreachable: retries exhausted after " + std::to_string(failures - 1) +
                         " reconnect attempts");
            return false;
        }
        if (!interruptible_sleep(*shared, delay)) return false;
        delay = std::min(backoff.cap,
                         std::chrono::milliseconds(static_cast<int64_t>(
                             static_cast<double>(delay.count()) * backoff.factor)));
        return true;
    };

    while (!shared->stop) {
        Socket sock = tcp_connect(config.server_host, config.server_port, config.connect_timeout_ms);
        if (!sock.valid()) {
            if (!register_failure()) break;
            continue;
        }

        IrcSession session({config.nickname, room_names});
        if (!send_irc_lines(sock.fd(), session.on_connect())) {
            if (!register_failure()) break;
            continue;
        }

        std::string buffer;
        uint64_t session_foreign = 0;
        bool connection_open = true;
        while (connection_open && !shared->stop) {
            pollfd pfd{sock.fd(), POLLIN, 0};
            int pr = ::poll(&pfd, 1, 250);
            if (pr < 0 && errno != EINTR) break;
            if (pr <= 0) continue;
            char chunk[4096];
            ssize_t n = ::recv(sock.fd(), chunk, sizeof(chunk), 0);
            if (n < 0 && (errno == EAGAIN || errno == EWOULDBLOCK || errno == EINTR)) continue;
            if (n <= 0) {
                connection_open = false;
                break;
            }
            buffer.append(chunk, static_cast<size_t>(n));
            size_t nl;
            while ((nl = buffer.find('\n')) != std::string::npos) {
                std::string raw = buffer.substr(0, nl);
                buffer.erase(0, nl + 1);
                if (!raw.empty() && raw.back() == '\r') raw.pop_back();
                std::optional<IrcSession::RoomMessage> message;
                auto replies = session.on_line(raw, message);
                if (session.foreign_channel_count() != session_foreign) {
                    shared->foreign_channel.fetch_add(session.foreign_channel_count() - session_foreign);
                    session_foreign = session.foreign_channel_count();
                }
                if (session.registered()) {
                    delay = backoff.initial;  // healthy session resets the schedule
                    failures = 0;
                }
                if (!replies.empty() && !send_irc_lines(sock.fd(), replies)) {
                    connection_open = false;
                    break;
                }
                if (message) {
                    RawFeedLine line;
                    line.channel = rooms.at(message->room);
                    if (utf8_sanitize(message->text, line.text)) shared->decode_lossy.fetch_add(1);
                    line.received_at_ms = steady_now_ms();
                    if (!shared->queue.push(std::move(line))) {
                        connection_open = false;
                        shared->stop = true;
                        break;
                    }
                }
            }
        }
        if (shared->stop) break;
        if (!register_failure()) break;
    }
    shared->queue.close();
}

inline std::map<std::string, ChannelName> room_index(const std::vector<ChannelName>& channels) {
    std::map<std::string, ChannelName> rooms;
    for (const auto& ch : channels) rooms[ch.room] = ch;
    return rooms;
}

}  // namespace detail

inline FeedStream open_replay_feed(const FeedConfig& config) {
    validate(config);
    auto shared = std::make_shared<detail::FeedShared>(config.queue_capacity);
    std::thread worker(detail::run_replay, shared, config, detail::room_index(config.channels));
    return FeedStream(shared, std::move(worker));
}

inline FeedStream open_live_feed(const FeedConfig& config) {
    validate(config);
    auto shared = std::make_shared<detail::FeedShared>(config.queue_capacity);
    std::thread worker(detail::run_live, shared, config, detail::room_index(config.channels));
    return FeedStream(shared, std::move(worker));
}

// Synthetic source; on_truth (optional) observes each event's ground-truth
// label from the producer thread before the matching line is queued.
inline FeedStream open_synthetic_feed(const GenConfig& config, size_t queue_capacity = 1024,
                                      double rate = 0.0,
                                      std::function<void(const TruthRecord&)> on_truth = nullptr) {
    validate(config);
    auto shared = std::make_shared<detail::FeedShared>(queue_capacity);
    std::thread worker(detail::run_synthetic, shared, config, rate, std::move(on_truth));
    return FeedStream(shared, std::move(worker));
}

}  // namespace wef
