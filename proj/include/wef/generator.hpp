#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wef/fixture.hpp"
#include "wef/raw_line.hpp"
#include "wef/rc_parser.hpp"

namespace wef {

// SplitMix64 (Steele, Lea, Flood 2014). Fixed constants make generated
// streams reproducible across platforms and builds:
//   increment  0x9E3779B97F4A7C15
//   mix step 1 0xBF58476D1CE4E5B9  (xor-shift 30)
//   mix step 2 0x94D049BB133111EB  (xor-shift 27, final shift 31)
class SplitMix64 {
  public:
    explicit SplitMix64(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        state_ += 0x9E3779B97F4A7C15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // uniform in [0, 1), 53-bit resolution
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // uniform in [0, n), n > 0
    uint64_t below(uint64_t n) { return next() % n; }

  private:
    uint64_t state_;
};

struct WeightedChannel {
    ChannelName channel;
    double weight = 0.0;
};

struct GenConfig {
    uint64_t seed = 1;
    std::vector<WeightedChannel> channels;
    uint64_t total_events = 0;
    double bot_probability = 0.0;
    double anon_probability_given_human = 0.0;
    int64_t size_min = -500;
    int64_t size_max = 500;
    // Encode bot identity as a "...Bot" name instead of the 'B' flag, to
    // exercise the classifier's suffix heuristic.
    bool heuristic_bot_names = false;
};

inline std::vector<WeightedChannel> uniform_weights(const std::vector<ChannelName>& channels) {
    std::vector<WeightedChannel> out;
    out.reserve(channels.size());
    for (const auto& ch : channels) out.push_back({ch, 1.0 / static_cast<double>(channels.size())});
    return out;
}

inline void validate(const GenConfig& config) {
    if (config.channels.empty()) throw std::invalid_argument("generator: channel list is empty");
    double sum = 0.0;
    for (const auto& wc : config.channels) {
        if (wc.weight <= 0.0) throw std::invalid_argument("generator: channel weight must be positive");
        sum += wc.weight;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("generator: channel weights must sum to 1");
    if (config.bot_probability < 0.0 || config.bot_probability > 1.0)
        throw std::invalid_argument("generator: bot probability outside [0,1]");
    if (config.anon_probability_given_human < 0.0 || config.anon_probability_given_human > 1.0)
        throw std::invalid_argument("generator: anon probability outside [0,1]");
    if (config.size_min > config.size_max) throw std::invalid_argument("generator: empty size range");
}

// Per-event label record for the oracle.
struct TruthRecord {
    std::string channel;  // room
    bool is_bot = false;
    bool is_anon = false;

    bool operator==(const TruthRecord&) const = default;
};

inline std::string encode_truth_record(const TruthRecord& rec) {
    nlohmann::ordered_json j;
    j["channel"] = rec.channel;
    j["isBot"] = rec.is_bot;
    j["isAnon"] = rec.is_anon;
    return j.dump();
}

inline std::vector<TruthRecord> read_truth_log(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open truth log: " + path);
    std::vector<TruthRecord> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        out.push_back({j.at("channel").get<std::string>(), j.at("isBot").get<bool>(), j.at("isAnon").get<bool>()});
    }
    return out;
}

// Deterministic synthetic feed. Every produced line parses cleanly, carries
// flag 'B' (or a Bot-suffixed name in heuristic mode) exactly when the event
// was drawn bot, and an IP-form editor exactly when drawn anonymous human.
// Revision ids increase monotonically per channel.
class Generator {
  public:
    explicit Generator(GenConfig config) : config_(std::move(config)), rng_(config_.seed) {
        validate(config_);
        cumulative_.reserve(config_.channels.size());
        double acc = 0.0;
        for (const auto& wc : config_.channels) {
            acc += wc.weight;
            cumulative_.push_back(acc);
        }
        cumulative_.back() = 1.0;
        last_rev_.assign(config_.channels.size(), 0);
    }

    const GenConfig& config() const { return config_; }

    std::optional<std::pair<RawFeedLine, TruthRecord>> next() {
        if (emitted_ >= config_.total_events) return std::nullopt;
        ++emitted_;

        size_t ch_idx = pick_channel();
        const ChannelName& channel = config_.channels[ch_idx].channel;

        bool is_bot = rng_.next_unit() < config_.bot_probability;
        bool is_anon = !is_bot && rng_.next_unit() < config_.anon_probability_given_human;

        ParsedEdit edit;
        edit.article = article_title();
        edit.article_key = normalize_article(edit.article);
        edit.editor_handle = editor_handle(is_bot, is_anon);
        if (is_bot && !config_.heuristic_bot_names) edit.flags = "B";

        int64_t from = last_rev_[ch_idx] + 1 + static_cast<int64_t>(rng_.below(40));
        int64_t to = from + 1 + static_cast<int64_t>(rng_.below(40));
        last_rev_[ch_idx] = to;
        edit.from_rev = from;
        edit.to_rev = to;
        edit.revision_url = "http://" + host_for_language(channel.language_code) +
                            "/w/index.php?diff=" + std::to_string(to) + "&oldid=" + std::to_string(from);

        int64_t span = config_.size_max - config_.size_min + 1;
        edit.change_size = config_.size_min + static_cast<int64_t>(rng_.below(static_cast<uint64_t>(span)));
        edit.comment = comment();

        ts_ += static_cast<int64_t>(rng_.below(3));

        RawFeedLine line{channel, render_line(edit), ts_};
        TruthRecord truth{channel.room, is_bot, is_anon};
        return std::make_pair(std::move(line), std::move(truth));
    }

  private:
    size_t pick_channel() {
        double r = rng_.next_unit();
        size_t lo = 0, hi = cumulative_.size() - 1;
        while (lo < hi) {
            size_t mid = (lo + hi) / 2;
            if (r < cumulative_[mid])
                hi = mid;
            else
                lo = mid + 1;
        }
        return lo;
    }

    std::string article_title() {
        // spaced titles exercise the underscore normalization downstream
        return "Article " + std::to_string(rng_.below(26)) + " " + std::to_string(rng_.below(1000));
    }

    std::string editor_handle(bool is_bot, bool is_anon) {
        if (is_anon) {
            return std::to_string(rng_.below(224)) + "." + std::to_string(rng_.below(256)) + "." +
                   std::to_string(rng_.below(256)) + "." + std::to_string(rng_.below(256));
        }
        if (is_bot) {
            uint64_t n = rng_.below(1000);
            if (config_.heuristic_bot_names) return "Helper" + std::to_string(n) + "Bot";
            return "Svc" + std::to_string(n);
        }
        return "Editor" + std::to_string(rng_.below(100000));
    }

    std::string comment() {
        switch (rng_.below(4)) {
            case 0: return "";
            case 1: return "/* refs */ typo";
            case 2: return "fix * cleanup";  // a separator lookalike the parser must preserve
            default: return "expand section";
        }
    }

    GenConfig config_;
    SplitMix64 rng_;
    std::vector<double> cumulative_;
    std::vector<int64_t> last_rev_;
    uint64_t emitted_ = 0;
    int64_t ts_ = 0;
};

// Drains a generator into fixture form; optionally writes the ground-truth
// log next to it.
inline uint64_t write_fixture_and_truth(Generator& gen, const std::string& fixture_path,
                                        const std::string& truth_path = {}) {
    std::ofstream fixture(fixture_path, std::ios::binary);
    if (!fixture) throw std::runtime_error("cannot write fixture: " + fixture_path);
    std::ofstream truth;
    if (!truth_path.empty()) {
        truth.open(truth_path, std::ios::binary);
        if (!truth) throw std::runtime_error("cannot write truth log: " + truth_path);
    }
    uint64_t count = 0;
    while (auto item = gen.next()) {
        fixture << encode_fixture_record({item->first.channel.room, item->first.text, item->first.received_at_ms})
                << '\n';
        if (truth.is_open()) truth << encode_truth_record(item->second) << '\n';
        ++count;
    }
    return count;
}

}  // namespace wef
