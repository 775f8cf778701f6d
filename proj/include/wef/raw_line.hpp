#pragma once

#include <cstdint>
#include <string>

#include "wef/channels.hpp"

namespace wef {

// One message as received from a feed source. text carries no line breaks;
// received_at_ms is non-decreasing within a source.
struct RawFeedLine {
    ChannelName channel;
    std::string text;
    int64_t received_at_ms = 0;

    bool operator==(const RawFeedLine&) const = default;
};

}  // namespace wef
