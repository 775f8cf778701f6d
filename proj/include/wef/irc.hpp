#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace wef {

// One parsed IRC line: [":" prefix " "] command (" " param)* [" :" trailing].
// The trailing part, when present, is the last element of params.
struct IrcLine {
    std::string prefix;
    std::string command;
    std::vector<std::string> params;
};

inline IrcLine parse_irc_line(std::string_view line) {
    IrcLine out;
    if (!line.empty() && line.front() == ':') {
        size_t sp = line.find(' ');
        if (sp == std::string_view::npos) {
            out.prefix = std::string(line.substr(1));
            return out;
        }
        out.prefix = std::string(line.substr(1, sp - 1));
        line.remove_prefix(sp + 1);
    }
    while (!line.empty()) {
        if (line.front() == ':' && !out.command.empty()) {
            out.params.emplace_back(line.substr(1));
            break;
        }
        size_t sp = line.find(' ');
        std::string_view token = line.substr(0, sp);
        if (out.command.empty())
            out.command = std::string(token);
        else
            out.params.emplace_back(token);
        if (sp == std::string_view::npos) break;
        line.remove_prefix(sp + 1);
    }
    return out;
}

// Client-side state machine for the read-only recent-changes subset:
// registration, room joins, keep-alive replies and room-message receipt.
// Transport-free; the caller moves bytes.
class IrcSession {
  public:
    struct Config {
        std::string nickname;
        std::vector<std::string> rooms;
    };

    struct RoomMessage {
        std::string room;
        std::string text;
    };

    explicit IrcSession(Config config) : config_(std::move(config)) {
        rooms_.insert(config_.rooms.begin(), config_.rooms.end());
    }

    // Registration lines to send immediately after the transport connects.
    std::vector<std::string> on_connect() {
        return {"NICK " + current_nick(), "USER " + config_.nickname + " 0 * :" + config_.nickname};
    }

    // Processes one server line (without CRLF). Returns protocol replies to
    // send; a room message addressed to a joined room lands in out_message.
    std::vector<std::string> on_line(std::string_view raw, std::optional<RoomMessage>& out_message) {
        out_message.reset();
        std::vector<std::string> replies;
        IrcLine line = parse_irc_line(raw);

        if (line.command == "PING") {
            // the reply must echo the probe token bit-exact
            std::string token = line.params.empty() ? std::string() : line.params.back();
            replies.push_back("PONG :" + token);
            return replies;
        }
        if (line.command == "001") {
            registered_ = true;
            for (const auto& room : config_.rooms) replies.push_back("JOIN " + room);
            return replies;
        }
        if (line.command == "433" && !registered_) {
            // nickname in use: deterministic suffix, then wait for 001
            ++nick_attempt_;
            replies.push_back("NICK " + current_nick());
            return replies;
        }
        if (line.command == "PRIVMSG" && line.params.size() >= 2) {
            const std::string& target = line.params[0];
            if (rooms_.count(target)) {
                out_message = RoomMessage{target, line.params.back()};
            } else {
                ++foreign_channel_;
            }
            return replies;
        }
        // all other protocol traffic is never surfaced
        return replies;
    }

    std::string current_nick() const {
        if (nick_attempt_ == 0) return config_.nickname;
        return config_.nickname + "_" + std::to_string(nick_attempt_ + 1);
    }

    bool registered() const { return registered_; }
    uint64_t foreign_channel_count() const { return foreign_channel_; }

  private:
    Config config_;
    std::set<std::string> rooms_;
    bool registered_ = false;
    unsigned nick_attempt_ = 0;
    uint64_t foreign_channel_ = 0;
};

}  // namespace wef
