#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "wef/channels.hpp"

namespace wef {

// One recent-changes message decoded into its components. The feed announces
// an edit as "[[<title>]] <url>[ <flags>] * <editor> * (<±N>) <comment>".
struct ParsedEdit {
    std::string article;       // display title, spaces preserved
    std::string article_key;   // title with spaces replaced by underscores
    std::string flags;         // single-character markers, possibly empty
    std::string revision_url;
    std::optional<int64_t> from_rev;  // "oldid" query value
    std::optional<int64_t> to_rev;    // "diff" query value
    std::string editor_handle;
    std::optional<int64_t> change_size;  // bytes, absent when unreported
    std::string comment;

    bool operator==(const ParsedEdit&) const = default;
    bool has_flag(char f) const { return flags.find(f) != std::string::npos; }
};

enum class ParseReason { no_title, bad_separator_structure, bad_size_token, bad_url };

inline const char* to_string(ParseReason r) {
    switch (r) {
        case ParseReason::no_title: return "no_title";
        case ParseReason::bad_separator_structure: return "bad_separator_structure";
        case ParseReason::bad_size_token: return "bad_size_token";
        case ParseReason::bad_url: return "bad_url";
    }
    return "unknown";
}

struct ParseFailure {
    ParseReason reason;
    std::string offending_text;

    bool operator==(const ParseFailure&) const = default;
};

using ParseResult = std::variant<ParsedEdit, ParseFailure>;

inline bool parse_ok(const ParseResult& r) { return std::holds_alternative<ParsedEdit>(r); }

// Removes mIRC formatting markers: bold (0x02), reset (0x0F), underline
// (0x1F) and color sequences (0x03 [d[d] [,d[d]]]). Everything else is
// preserved byte for byte, so the function is total and idempotent.
inline std::string strip_formatting(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    size_t i = 0;
    auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
    while (i < text.size()) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (c == 0x02 || c == 0x0F || c == 0x1F) {
            ++i;
            continue;
        }
        if (c == 0x03) {
            ++i;
            size_t fg = 0;
            while (i < text.size() && fg < 2 && is_digit(text[i])) { ++i; ++fg; }
            // comma starts a background color only when digits precede and follow it
            if (fg > 0 && i + 1 < text.size() && text[i] == ',' && is_digit(text[i + 1])) {
                ++i;
                size_t bg = 0;
                while (i < text.size() && bg < 2 && is_digit(text[i])) { ++i; ++bg; }
            }
            continue;
        }
        out.push_back(text[i]);
        ++i;
    }
    return out;
}

inline std::string normalize_article(std::string_view title) {
    std::string out(title);
    for (char& c : out)
        if (c == ' ') c = '_';
    return out;
}

struct RevisionIds {
    std::optional<int64_t> from_rev;  // oldid
    std::optional<int64_t> to_rev;    // diff
};

namespace detail {

// Unsigned decimal digits only; 18-digit cap keeps the value inside int64.
inline std::optional<int64_t> parse_decimal(std::string_view s) {
    if (s.empty() || s.size() > 18) return std::nullopt;
    for (char c : s)
        if (c < '0' || c > '9') return std::nullopt;
    int64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return value;
}

}  // namespace detail

// Reads the "diff" and "oldid" query parameters of a revision URL; parameter
// order does not matter. Returns nullopt when the query string is missing or
// a value is non-numeric.
inline std::optional<RevisionIds> extract_revisions(std::string_view revision_url) {
    size_t q = revision_url.find('?');
    if (q == std::string_view::npos) return std::nullopt;
    std::string_view query = revision_url.substr(q + 1);
    RevisionIds ids;
    while (!query.empty()) {
        size_t amp = query.find('&');
        std::string_view param = query.substr(0, amp);
        query = (amp == std::string_view::npos) ? std::string_view() : query.substr(amp + 1);
        size_t eq = param.find('=');
        if (eq == std::string_view::npos) continue;
        std::string_view key = param.substr(0, eq);
        std::string_view value = param.substr(eq + 1);
        if (key == "diff") {
            auto v = detail::parse_decimal(value);
            if (!v) return std::nullopt;
            ids.to_rev = v;
        } else if (key == "oldid") {
            auto v = detail::parse_decimal(value);
            if (!v) return std::nullopt;
            ids.from_rev = v;
        }
    }
    return ids;
}

// Compare-API URL for a revision pair. Parameter order is part of the wire
// contract and must not change.
inline std::string build_diff_url(std::string_view language_code, int64_t from_rev, int64_t to_rev) {
    std::string url = "http://";
    url += host_for_language(language_code);
    url += "/w/api.php?action=compare&torev=";
    url += std::to_string(to_rev);
    url += "&fromrev=";
    url += std::to_string(from_rev);
    url += "&format=json";
    return url;
}

namespace detail {

inline bool is_flag_char(char c) { return c == 'N' || c == 'M' || c == 'B' || c == '!'; }

// Size token "(+N)" / "(-N)"; returns the consumed length through ')'.
inline std::optional<size_t> parse_size_token(std::string_view rest, int64_t& size_out) {
    if (rest.size() < 3 || rest[0] != '(') return std::nullopt;
    size_t close = rest.find(')');
    if (close == std::string_view::npos) return std::nullopt;
    std::string_view body = rest.substr(1, close - 1);
    if (body.empty()) return std::nullopt;
    bool negative = false;
    if (body[0] == '+' || body[0] == '-') {
        negative = body[0] == '-';
        body.remove_prefix(1);
    }
    auto value = parse_decimal(body);
    if (!value) return std::nullopt;
    size_out = negative ? -*value : *value;
    return close + 1;
}

}  // namespace detail

// Decodes one stripped feed line. Total: every input yields a ParsedEdit or
// a ParseFailure naming the first grammar stage that failed.
inline ParseResult parse_line(std::string_view text) {
    // stage 1: title between "[[" and the first "]]" followed by space or end
    if (text.size() < 4 || text.substr(0, 2) != "[[")
        return ParseFailure{ParseReason::no_title, std::string(text)};
    size_t title_end = std::string_view::npos;
    for (size_t pos = text.find("]]", 2); pos != std::string_view::npos; pos = text.find("]]", pos + 1)) {
        if (pos + 2 == text.size() || text[pos + 2] == ' ') {
            title_end = pos;
            break;
        }
    }
    if (title_end == std::string_view::npos || title_end == 2)
        return ParseFailure{ParseReason::no_title, std::string(text)};

    ParsedEdit edit;
    edit.article = std::string(text.substr(2, title_end - 2));
    edit.article_key = normalize_article(edit.article);

    // stage 2: the first two " * " separators after the title
    if (title_end + 2 == text.size())
        return ParseFailure{ParseReason::bad_separator_structure, std::string(text)};
    std::string_view rest = text.substr(title_end + 3);
    size_t sep1 = rest.find(" * ");
    if (sep1 == std::string_view::npos)
        return ParseFailure{ParseReason::bad_separator_structure, std::string(text)};
    std::string_view middle = rest.substr(0, sep1);
    size_t sep2 = rest.find(" * ", sep1 + 3);
    if (sep2 == std::string_view::npos)
        return ParseFailure{ParseReason::bad_separator_structure, std::string(text)};
    std::string_view editor = rest.substr(sep1 + 3, sep2 - sep1 - 3);
    std::string_view tail = rest.substr(sep2 + 3);

    if (middle.empty() || editor.empty())
        return ParseFailure{ParseReason::bad_separator_structure, std::string(text)};
    edit.editor_handle = std::string(editor);

    // middle: revision URL, optionally one flag token (letters from {N,M,B,!})
    size_t space = middle.find(' ');
    if (space == std::string_view::npos) {
        edit.revision_url = std::string(middle);
    } else {
        std::string_view url = middle.substr(0, space);
        std::string_view flags = middle.substr(space + 1);
        if (url.empty() || flags.empty() || flags.find(' ') != std::string_view::npos)
            return ParseFailure{ParseReason::bad_separator_structure, std::string(text)};
        for (char f : flags)
            if (!detail::is_flag_char(f))
                return ParseFailure{ParseReason::bad_separator_structure, std::string(text)};
        edit.revision_url = std::string(url);
        edit.flags = std::string(flags);
    }

    // stage 3: size token, absent when the tail does not open with '('
    if (!tail.empty() && tail[0] == '(') {
        int64_t size = 0;
        auto consumed = detail::parse_size_token(tail, size);
        if (!consumed || (*consumed < tail.size() && tail[*consumed] != ' '))
            return ParseFailure{ParseReason::bad_size_token, std::string(tail)};
        edit.change_size = size;
        tail.remove_prefix(*consumed);
        if (!tail.empty() && tail[0] == ' ') tail.remove_prefix(1);
    }
    edit.comment = std::string(tail);

    // stage 4: revision ids from the URL query
    auto ids = extract_revisions(edit.revision_url);
    if (!ids) return ParseFailure{ParseReason::bad_url, edit.revision_url};
    if (ids->to_rev && !ids->from_rev) return ParseFailure{ParseReason::bad_url, edit.revision_url};
    edit.from_rev = ids->from_rev;
    edit.to_rev = ids->to_rev;

    return edit;
}

// Renders a ParsedEdit back into feed-line form; inverse of parse_line on
// every edit parse_line can produce.
inline std::string render_line(const ParsedEdit& edit) {
    std::string out = "[[";
    out += edit.article;
    out += "]] ";
    out += edit.revision_url;
    if (!edit.flags.empty()) {
        out += ' ';
        out += edit.flags;
    }
    out += " * ";
    out += edit.editor_handle;
    out += " * ";
    if (edit.change_size) {
        out += '(';
        out += (*edit.change_size < 0) ? '-' : '+';
        out += std::to_string(*edit.change_size < 0 ? -*edit.change_size : *edit.change_size);
        out += ')';
        if (!edit.comment.empty()) {
            out += ' ';
            out += edit.comment;
        }
    } else {
        out += edit.comment;
    }
    return out;
}

}  // namespace wef
