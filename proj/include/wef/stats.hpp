#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wef/channels.hpp"
#include "wef/classifier.hpp"

namespace wef {

struct ChannelCounters {
    uint64_t total = 0;
    uint64_t bot = 0;
    uint64_t human = 0;
    uint64_t anon_human = 0;
    uint64_t loggedin_human = 0;

    bool operator==(const ChannelCounters&) const = default;
};

// Running totals. total = bot + human and human = anon + logged-in hold
// after every update; per-channel tuples sum to the globals.
struct Counters {
    uint64_t total_edits = 0;
    uint64_t bot_edits = 0;
    uint64_t human_edits = 0;
    uint64_t anon_human_edits = 0;
    uint64_t loggedin_human_edits = 0;
    uint64_t malformed_lines = 0;
    std::map<std::string, ChannelCounters> per_channel;  // keyed by room

    bool operator==(const Counters&) const = default;
};

inline void record(Counters& counters, const ChannelName& channel, bool is_bot, bool is_anonymous) {
    counters.total_edits += 1;
    ChannelCounters& ch = counters.per_channel[channel.room];
    ch.total += 1;
    if (is_bot) {
        counters.bot_edits += 1;
        ch.bot += 1;
    } else {
        counters.human_edits += 1;
        ch.human += 1;
        if (is_anonymous) {
            counters.anon_human_edits += 1;
            ch.anon_human += 1;
        } else {
            counters.loggedin_human_edits += 1;
            ch.loggedin_human += 1;
        }
    }
}

inline void record(Counters& counters, const ChannelName& channel, const EditorClass& who) {
    record(counters, channel, who.is_bot, who.is_anonymous);
}

inline void record_malformed(Counters& counters) { counters.malformed_lines += 1; }

// Immutable point-in-time view. Ratios are empty optionals (never 0 or NaN)
// when their denominator is zero. anon_ratio is over human edits only.
struct StatsSnapshot {
    int64_t taken_at_ms = 0;
    Counters counters;
    std::optional<double> bot_ratio;
    std::optional<double> anon_ratio;
    uint64_t channels_edited = 0;
    uint64_t channels_configured = 0;
    double coverage = 0.0;

    bool operator==(const StatsSnapshot&) const = default;
};

inline StatsSnapshot make_snapshot(const Counters& counters, uint64_t channels_configured, int64_t now_ms) {
    StatsSnapshot snap;
    snap.taken_at_ms = now_ms;
    snap.counters = counters;
    if (counters.total_edits > 0)
        snap.bot_ratio = static_cast<double>(counters.bot_edits) / static_cast<double>(counters.total_edits);
    if (counters.human_edits > 0)
        snap.anon_ratio = static_cast<double>(counters.anon_human_edits) / static_cast<double>(counters.human_edits);
    snap.channels_edited = counters.per_channel.size();
    snap.channels_configured = channels_configured;
    snap.coverage = channels_configured == 0
                        ? 0.0
                        : static_cast<double>(snap.channels_edited) / static_cast<double>(channels_configured);
    return snap;
}

// Single-writer counters with concurrent snapshot readers.
class StatsRegistry {
  public:
    explicit StatsRegistry(uint64_t channels_configured = 0) : channels_configured_(channels_configured) {}

    void record_edit(const ChannelName& channel, const EditorClass& who) {
        std::lock_guard lock(mu_);
        record(counters_, channel, who);
    }

    void record_malformed_line() {
        std::lock_guard lock(mu_);
        record_malformed(counters_);
    }

    StatsSnapshot snapshot(int64_t now_ms) const {
        std::lock_guard lock(mu_);
        return make_snapshot(counters_, channels_configured_, now_ms);
    }

    Counters counters() const {
        std::lock_guard lock(mu_);
        return counters_;
    }

    uint64_t channels_configured() const { return channels_configured_; }

  private:
    mutable std::mutex mu_;
    Counters counters_;
    uint64_t channels_configured_;
};

// Sliding-window convergence: both tracked ratios must hold a full window of
// defined samples whose max-min spread stays below epsilon. Undefined ratios
// enter the window as gaps and block convergence until they age out.
class ConvergenceTracker {
  public:
    ConvergenceTracker(size_t window, double epsilon) : window_(window), epsilon_(epsilon) {}

    // Appends both ratios of the snapshot; returns the convergence verdict.
    bool sample(const StatsSnapshot& snap) {
        push(samples_bot_, snap.bot_ratio);
        push(samples_anon_, snap.anon_ratio);
        ++total_samples_;
        return converged();
    }

    bool converged() const { return window_converged(samples_bot_) && window_converged(samples_anon_); }

    size_t window() const { return window_; }
    double epsilon() const { return epsilon_; }
    size_t sample_count() const { return total_samples_; }

  private:
    void push(std::deque<std::optional<double>>& ring, std::optional<double> value) {
        ring.push_back(value);
        if (ring.size() > window_) ring.pop_front();
    }

    bool window_converged(const std::deque<std::optional<double>>& ring) const {
        if (window_ == 0 || ring.size() < window_) return false;
        double lo = 0.0, hi = 0.0;
        bool first = true;
        for (const auto& v : ring) {
            if (!v) return false;
            if (first) {
                lo = hi = *v;
                first = false;
            } else {
                lo = std::min(lo, *v);
                hi = std::max(hi, *v);
            }
        }
        return hi - lo < epsilon_;
    }

    size_t window_;
    double epsilon_;
    size_t total_samples_ = 0;
    std::deque<std::optional<double>> samples_bot_;
    std::deque<std::optional<double>> samples_anon_;
};

enum class ReportFormat { json, csv };

// CSV: fixed column set, one row per channel plus a TOTAL row. An empty
// snapshot yields the header only.
inline std::string export_report_csv(const StatsSnapshot& snap) {
    std::string out = "channel,total,bot,human,anon_human,loggedin_human\n";
    if (snap.counters.per_channel.empty()) return out;
    auto row = [&out](const std::string& name, const ChannelCounters& c) {
        out += name;
        out += ',';
        out += std::to_string(c.total);
        out += ',';
        out += std::to_string(c.bot);
        out += ',';
        out += std::to_string(c.human);
        out += ',';
        out += std::to_string(c.anon_human);
        out += ',';
        out += std::to_string(c.loggedin_human);
        out += '\n';
    };
    for (const auto& [room, ch] : snap.counters.per_channel) row(room, ch);
    ChannelCounters total{snap.counters.total_edits, snap.counters.bot_edits, snap.counters.human_edits,
                          snap.counters.anon_human_edits, snap.counters.loggedin_human_edits};
    row("TOTAL", total);
    return out;
}

inline nlohmann::ordered_json report_json(const StatsSnapshot& snap) {
    nlohmann::ordered_json j;
    j["taken_at_ms"] = snap.taken_at_ms;
    j["total_edits"] = snap.counters.total_edits;
    j["bot_edits"] = snap.counters.bot_edits;
    j["human_edits"] = snap.counters.human_edits;
    j["anon_human_edits"] = snap.counters.anon_human_edits;
    j["loggedin_human_edits"] = snap.counters.loggedin_human_edits;
    j["malformed_lines"] = snap.counters.malformed_lines;
    if (snap.bot_ratio)
        j["bot_ratio"] = *snap.bot_ratio;
    else
        j["bot_ratio"] = nullptr;
    if (snap.anon_ratio)
        j["anon_ratio"] = *snap.anon_ratio;
    else
        j["anon_ratio"] = nullptr;
    j["channels_edited"] = snap.channels_edited;
    j["channels_configured"] = snap.channels_configured;
    j["coverage"] = snap.coverage;
    nlohmann::ordered_json channels = nlohmann::ordered_json::object();
    for (const auto& [room, ch] : snap.counters.per_channel) {
        nlohmann::ordered_json c;
        c["total"] = ch.total;
        c["bot"] = ch.bot;
        c["human"] = ch.human;
        c["anon_human"] = ch.anon_human;
        c["loggedin_human"] = ch.loggedin_human;
        channels[room] = std::move(c);
    }
    j["channels"] = std::move(channels);
    return j;
}

inline std::string export_report_json(const StatsSnapshot& snap) { return report_json(snap).dump(); }

inline std::string export_report(const StatsSnapshot& snap, ReportFormat format) {
    return format == ReportFormat::json ? export_report_json(snap) : export_report_csv(snap);
}

// Inverse of export_report_json; throws nlohmann::json::exception on
// malformed input.
inline StatsSnapshot parse_report_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    StatsSnapshot snap;
    snap.taken_at_ms = j.at("taken_at_ms").get<int64_t>();
    snap.counters.total_edits = j.at("total_edits").get<uint64_t>();
    snap.counters.bot_edits = j.at("bot_edits").get<uint64_t>();
    snap.counters.human_edits = j.at("human_edits").get<uint64_t>();
    snap.counters.anon_human_edits = j.at("anon_human_edits").get<uint64_t>();
    snap.counters.loggedin_human_edits = j.at("loggedin_human_edits").get<uint64_t>();
    snap.counters.malformed_lines = j.at("malformed_lines").get<uint64_t>();
    if (!j.at("bot_ratio").is_null()) snap.bot_ratio = j.at("bot_ratio").get<double>();
    if (!j.at("anon_ratio").is_null()) snap.anon_ratio = j.at("anon_ratio").get<double>();
    snap.channels_edited = j.at("channels_edited").get<uint64_t>();
    snap.channels_configured = j.at("channels_configured").get<uint64_t>();
    snap.coverage = j.at("coverage").get<double>();
    for (const auto& [room, c] : j.at("channels").items()) {
        ChannelCounters ch;
        ch.total = c.at("total").get<uint64_t>();
        ch.bot = c.at("bot").get<uint64_t>();
        ch.human = c.at("human").get<uint64_t>();
        ch.anon_human = c.at("anon_human").get<uint64_t>();
        ch.loggedin_human = c.at("loggedin_human").get<uint64_t>();
        snap.counters.per_channel[room] = ch;
    }
    return snap;
}

}  // namespace wef
