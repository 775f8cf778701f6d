#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace wef {

// The published edit notification. The five canonical fields are serialized
// compactly in exactly this order; the optional trailing fields are emitted
// only in extended mode, after the canonical five.
struct EditPayload {
    std::string article;   // underscored article key
    std::string editor;    // "<language>:<handle>"
    bool is_bot = false;
    std::string language;
    std::string diff_url;  // empty for edits without a revision pair

    std::optional<bool> is_anon;
    std::optional<std::string> flags;
    // present in extended mode even when the feed reported no size (null)
    std::optional<std::optional<int64_t>> change_size;

    bool operator==(const EditPayload&) const = default;
};

// Event type naming rule: "<language>edit".
inline std::string event_type_for(std::string_view language_code) {
    return std::string(language_code) + "edit";
}

inline std::string encode_payload_json(const EditPayload& payload) {
    nlohmann::ordered_json j;
    j["article"] = payload.article;
    j["editor"] = payload.editor;
    j["isBot"] = payload.is_bot;
    j["language"] = payload.language;
    j["diffUrl"] = payload.diff_url;
    if (payload.is_anon) j["isAnon"] = *payload.is_anon;
    if (payload.flags) j["flags"] = *payload.flags;
    if (payload.change_size) {
        if (payload.change_size->has_value())
            j["changeSize"] = **payload.change_size;
        else
            j["changeSize"] = nullptr;
    }
    return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

inline std::optional<EditPayload> decode_payload_json(std::string_view data) {
    nlohmann::json j = nlohmann::json::parse(data, nullptr, false);
    if (j.is_discarded() || !j.is_object()) return std::nullopt;
    EditPayload p;
    try {
        p.article = j.at("article").get<std::string>();
        p.editor = j.at("editor").get<std::string>();
        p.is_bot = j.at("isBot").get<bool>();
        p.language = j.at("language").get<std::string>();
        p.diff_url = j.at("diffUrl").get<std::string>();
        if (j.contains("isAnon")) p.is_anon = j.at("isAnon").get<bool>();
        if (j.contains("flags")) p.flags = j.at("flags").get<std::string>();
        if (j.contains("changeSize")) {
            if (j.at("changeSize").is_null())
                p.change_size = std::optional<int64_t>{};
            else
                p.change_size = std::optional<int64_t>{j.at("changeSize").get<int64_t>()};
        }
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    }
    return p;
}

// One event-stream frame: "event: <type>\ndata: <one line>\n\n".
struct SseFrame {
    std::string event_type;
    std::string data;

    bool operator==(const SseFrame&) const = default;

    std::string encode() const {
        std::string out = "event: ";
        out += event_type;
        out += '\n';
        out += "data: ";
        out += data;
        out += "\n\n";
        return out;
    }
};

inline std::string encode_frame(const EditPayload& payload, std::string_view language_code) {
    return SseFrame{event_type_for(language_code), encode_payload_json(payload)}.encode();
}

inline std::string keepalive_frame() { return ": keep-alive\n\n"; }
inline std::string overflow_frame() { return ": overflow\n\n"; }

// Incremental event-stream decoder. Feed raw bytes as they arrive; complete
// frames become SseFrame values. Comment lines and unknown fields are
// ignored; CR before LF is tolerated.
class SseDecoder {
  public:
    void feed(std::string_view bytes) {
        buffer_.append(bytes.data(), bytes.size());
        size_t nl;
        while ((nl = buffer_.find('\n')) != std::string::npos) {
            std::string line = buffer_.substr(0, nl);
            buffer_.erase(0, nl + 1);
            if (!line.empty() && line.back() == '\r') line.pop_back();
            handle_line(line);
        }
    }

    // Complete frames decoded so far, in arrival order.
    std::vector<SseFrame> take_frames() {
        std::vector<SseFrame> out;
        out.swap(frames_);
        return out;
    }

    // True when a partially received frame or line is still buffered.
    bool has_partial() const { return !buffer_.empty() || in_frame_; }

  private:
    void handle_line(const std::string& line) {
        if (line.empty()) {
            if (has_data_) frames_.push_back(SseFrame{current_type_, current_data_});
            current_type_.clear();
            current_data_.clear();
            has_data_ = false;
            in_frame_ = false;
            return;
        }
        if (line[0] == ':') return;  // comment / keep-alive
        size_t colon = line.find(':');
        std::string field = line.substr(0, colon == std::string::npos ? line.size() : colon);
        std::string value;
        if (colon != std::string::npos) {
            value = line.substr(colon + 1);
            if (!value.empty() && value.front() == ' ') value.erase(0, 1);
        }
        if (field == "event") {
            current_type_ = value;
            in_frame_ = true;
        } else if (field == "data") {
            if (has_data_) current_data_ += '\n';
            current_data_ += value;
            has_data_ = true;
            in_frame_ = true;
        }
        // other fields (id, retry, ...) are tolerated and skipped
    }

    std::string buffer_;
    std::string current_type_;
    std::string current_data_;
    bool has_data_ = false;
    bool in_frame_ = false;
    std::vector<SseFrame> frames_;
};

}  // namespace wef
