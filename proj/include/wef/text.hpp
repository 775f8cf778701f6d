#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace wef {

// Validates UTF-8 and replaces every invalid byte run with U+FFFD. Returns
// whether any replacement happened. Overlong encodings, surrogates and
// out-of-range code points all count as invalid.
inline bool utf8_sanitize(std::string_view in, std::string& out) {
    out.clear();
    out.reserve(in.size());
    bool lossy = false;
    size_t i = 0;
    auto replace = [&](size_t skip) {
        out += "\xEF\xBF\xBD";
        lossy = true;
        i += skip;
    };
    while (i < in.size()) {
        unsigned char b0 = static_cast<unsigned char>(in[i]);
        if (b0 < 0x80) {
            out.push_back(in[i]);
            ++i;
            continue;
        }
        size_t len;
        uint32_t cp;
        if ((b0 & 0xE0) == 0xC0) {
            len = 2;
            cp = b0 & 0x1F;
        } else if ((b0 & 0xF0) == 0xE0) {
            len = 3;
            cp = b0 & 0x0F;
        } else if ((b0 & 0xF8) == 0xF0) {
            len = 4;
            cp = b0 & 0x07;
        } else {
            replace(1);
            continue;
        }
        if (i + len > in.size()) {
            replace(1);
            continue;
        }
        bool valid = true;
        for (size_t k = 1; k < len; ++k) {
            unsigned char b = static_cast<unsigned char>(in[i + k]);
            if ((b & 0xC0) != 0x80) {
                valid = false;
                break;
            }
            cp = (cp << 6) | (b & 0x3F);
        }
        if (!valid) {
            replace(1);
            continue;
        }
        constexpr uint32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
        if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
            replace(len);
            continue;
        }
        out.append(in.substr(i, len));
        i += len;
    }
    return lossy;
}

}  // namespace wef
