#pragma once

#include <arpa/inet.h>

#include <cstring>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wef {

// Bot/human and anonymous/logged-in labels for one edit, plus the qualified
// editor id ("<language>:<handle>") used in published payloads.
struct EditorClass {
    bool is_bot = false;
    bool is_anonymous = false;
    std::string qualified_editor;

    bool operator==(const EditorClass&) const = default;
};

// Strict dotted-quad: four decimal octets 0-255, digits only.
inline bool is_ipv4_literal(std::string_view s) {
    int octets = 0;
    size_t i = 0;
    while (i <= s.size()) {
        size_t start = i;
        int value = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
            value = value * 10 + (s[i] - '0');
            if (value > 255) return false;
            ++i;
        }
        size_t digits = i - start;
        if (digits == 0 || digits > 3) return false;
        ++octets;
        if (i == s.size()) break;
        if (s[i] != '.') return false;
        ++i;
    }
    return octets == 4;
}

inline bool is_ipv6_literal(std::string_view s) {
    if (s.empty() || s.size() >= INET6_ADDRSTRLEN) return false;
    if (s.find('\0') != std::string_view::npos) return false;
    char buf[INET6_ADDRSTRLEN];
    std::memcpy(buf, s.data(), s.size());
    buf[s.size()] = '\0';
    in6_addr addr;
    return inet_pton(AF_INET6, buf, &addr) == 1;
}

// Anonymous editors appear in the feed under their IP address.
inline bool is_anonymous(std::string_view editor_handle) {
    return is_ipv4_literal(editor_handle) || is_ipv6_literal(editor_handle);
}

// Which bot signals are consulted; all three are on by default.
struct BotPolicy {
    bool use_flag = true;
    bool use_list = true;
    bool use_name_heuristic = true;
};

// Flag first, list second, name suffix last. The suffix heuristic never
// fires for IP handles.
inline bool classify_bot(std::string_view editor_handle, std::string_view flags,
                         const std::set<std::string, std::less<>>& bot_list,
                         const BotPolicy& policy = {}) {
    if (policy.use_flag && flags.find('B') != std::string_view::npos) return true;
    if (policy.use_list && bot_list.find(editor_handle) != bot_list.end()) return true;
    if (policy.use_name_heuristic) {
        if (editor_handle.size() >= 3) {
            std::string_view tail = editor_handle.substr(editor_handle.size() - 3);
            if ((tail == "bot" || tail == "Bot") && !is_anonymous(editor_handle)) return true;
        }
    }
    return false;
}

inline std::string qualify_editor(std::string_view language_code, std::string_view editor_handle) {
    std::string out(language_code);
    out += ':';
    out += editor_handle;
    return out;
}

inline EditorClass classify_editor(std::string_view language_code, std::string_view editor_handle,
                                   std::string_view flags,
                                   const std::set<std::string, std::less<>>& bot_list,
                                   const BotPolicy& policy = {}) {
    EditorClass cls;
    cls.is_bot = classify_bot(editor_handle, flags, bot_list, policy);
    cls.is_anonymous = is_anonymous(editor_handle);
    cls.qualified_editor = qualify_editor(language_code, editor_handle);
    return cls;
}

// Bot-list file: one handle per line, '#' starts a comment.
inline std::set<std::string, std::less<>> load_bot_list(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open bot list: " + path);
    std::set<std::string, std::less<>> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r')) line.pop_back();
        size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        out.insert(line.substr(start));
    }
    return out;
}

}  // namespace wef
