#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace wef {

// One recorded feed line: {"channel": room, "line": text, "ts": ms}.
struct FixtureRecord {
    std::string channel;
    std::string line;
    int64_t ts = 0;

    bool operator==(const FixtureRecord&) const = default;
};

struct FixtureError : std::runtime_error {
    FixtureError(const std::string& path, size_t line_number, const std::string& what)
        : std::runtime_error(path + ":" + std::to_string(line_number) + ": " + what), line_number(line_number) {}
    size_t line_number;
};

inline std::string encode_fixture_record(const FixtureRecord& rec) {
    nlohmann::ordered_json j;
    j["channel"] = rec.channel;
    j["line"] = rec.line;
    j["ts"] = rec.ts;
    return j.dump();
}

// Streaming fixture reader; reports the first malformed record with its
// 1-based line number and stops there.
class FixtureReader {
  public:
    explicit FixtureReader(const std::string& path) : path_(path), in_(path) {
        if (!in_) throw std::runtime_error("cannot open fixture: " + path);
    }

    // Returns false at end of file; throws FixtureError on a bad record.
    bool next(FixtureRecord& out) {
        std::string line;
        while (std::getline(in_, line)) {
            ++line_number_;
            if (!line.empty() && line.back() == '\r') line.pop_back();
            if (line.empty()) continue;
            nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
            if (j.is_discarded() || !j.is_object())
                throw FixtureError(path_, line_number_, "not a JSON object");
            if (!j.contains("channel") || !j["channel"].is_string() || !j.contains("line") ||
                !j["line"].is_string() || !j.contains("ts") || !j["ts"].is_number_integer())
                throw FixtureError(path_, line_number_, "expected fields channel:string, line:string, ts:integer");
            out.channel = j["channel"].get<std::string>();
            out.line = j["line"].get<std::string>();
            out.ts = j["ts"].get<int64_t>();
            return true;
        }
        return false;
    }

  private:
    std::string path_;
    std::ifstream in_;
    size_t line_number_ = 0;
};

inline std::vector<FixtureRecord> read_fixture(const std::string& path) {
    FixtureReader reader(path);
    std::vector<FixtureRecord> out;
    FixtureRecord rec;
    while (reader.next(rec)) out.push_back(rec);
    return out;
}

inline void write_fixture(const std::string& path, const std::vector<FixtureRecord>& records) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write fixture: " + path);
    for (const auto& rec : records) {
        out << encode_fixture_record(rec) << '\n';
    }
}

}  // namespace wef
