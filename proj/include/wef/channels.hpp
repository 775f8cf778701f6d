#pragma once

#include <fstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wef/channels_data.hpp"

namespace wef {

// A Wikimedia project identity together with its IRC room. Every language
// edition lives in "#<code>.wikipedia"; the language-independent knowledge
// base uses the sentinel code "wikidata" and the room "#wikidata.wikipedia".
struct ChannelName {
    std::string language_code;
    std::string room;

    bool operator==(const ChannelName&) const = default;
    bool operator<(const ChannelName& other) const { return room < other.room; }
};

inline bool is_valid_language_code(std::string_view code) {
    if (code.empty()) return false;
    for (char c : code) {
        if (c == '#' || c == '.') return false;
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v') return false;
        if (c >= 'A' && c <= 'Z') return false;
    }
    return true;
}

inline ChannelName channel_name_for(std::string_view language_code) {
    if (!is_valid_language_code(language_code))
        throw std::invalid_argument("malformed language code: \"" + std::string(language_code) + "\"");
    ChannelName ch;
    ch.language_code = std::string(language_code);
    ch.room = "#" + ch.language_code + ".wikipedia";
    return ch;
}

// Inverse of channel_name_for: "#en.wikipedia" -> "en". Returns an empty
// string when the room does not follow the pattern.
inline std::string language_code_for_room(std::string_view room) {
    constexpr std::string_view suffix = ".wikipedia";
    if (room.size() <= 1 + suffix.size() || room.front() != '#') return {};
    if (room.substr(room.size() - suffix.size()) != suffix) return {};
    std::string_view code = room.substr(1, room.size() - 1 - suffix.size());
    if (!is_valid_language_code(code)) return {};
    return std::string(code);
}

// API host serving a given project: "en" -> "en.wikipedia.org",
// "wikidata" -> "www.wikidata.org".
inline std::string host_for_language(std::string_view language_code) {
    if (language_code == "wikidata") return "www.wikidata.org";
    return std::string(language_code) + ".wikipedia.org";
}

inline std::vector<ChannelName> default_channels() {
    std::vector<ChannelName> out;
    out.reserve(kDefaultLanguageCodes.size());
    for (std::string_view code : kDefaultLanguageCodes) out.push_back(channel_name_for(code));
    return out;
}

// Loads a channels file: one language code per line, '#' starts a comment.
inline std::vector<ChannelName> load_channels(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open channels file: " + path);
    std::vector<ChannelName> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) line.pop_back();
        size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        out.push_back(channel_name_for(std::string_view(line).substr(start)));
    }
    return out;
}

}  // namespace wef
