#pragma once

#include <chrono>
#include <condition_variable>
#include <deque>
#include <mutex>
#include <optional>
#include <utility>

namespace wef {

enum class PopStatus { ok, timeout, closed };

// Ordered single-producer handoff with bounded buffering. push() blocks while
// full; try_push() reports overflow instead. close() wakes all waiters; items
// queued before a plain close drain normally, close(true) discards them.
template <typename T>
class BoundedQueue {
  public:
    explicit BoundedQueue(size_t capacity) : capacity_(capacity ? capacity : 1) {}

    bool push(T item) {
        std::unique_lock lock(mu_);
        not_full_.wait(lock, [&] { return items_.size() < capacity_ || closed_; });
        if (closed_) return false;
        items_.push_back(std::move(item));
        not_empty_.notify_one();
        return true;
    }

    bool try_push(T item) {
        std::lock_guard lock(mu_);
        if (closed_ || items_.size() >= capacity_) return false;
        items_.push_back(std::move(item));
        not_empty_.notify_one();
        return true;
    }

    PopStatus pop(T& out) {
        std::unique_lock lock(mu_);
        not_empty_.wait(lock, [&] { return !items_.empty() || closed_; });
        return take(out);
    }

    template <typename Rep, typename Period>
    PopStatus pop_wait(T& out, std::chrono::duration<Rep, Period> timeout) {
        std::unique_lock lock(mu_);
        if (!not_empty_.wait_for(lock, timeout, [&] { return !items_.empty() || closed_; }))
            return PopStatus::timeout;
        return take(out);
    }

    void close(bool discard_pending = false) {
        std::lock_guard lock(mu_);
        closed_ = true;
        if (discard_pending) items_.clear();
        not_empty_.notify_all();
        not_full_.notify_all();
    }

    bool closed() const {
        std::lock_guard lock(mu_);
        return closed_;
    }

    size_t size() const {
        std::lock_guard lock(mu_);
        return items_.size();
    }

  private:
    PopStatus take(T& out) {
        if (!items_.empty()) {
            out = std::move(items_.front());
            items_.pop_front();
            not_full_.notify_one();
            return PopStatus::ok;
        }
        return PopStatus::closed;  // closed and drained
    }

    mutable std::mutex mu_;
    std::condition_variable not_empty_;
    std::condition_variable not_full_;
    std::deque<T> items_;
    size_t capacity_;
    bool closed_ = false;
};

}  // namespace wef
