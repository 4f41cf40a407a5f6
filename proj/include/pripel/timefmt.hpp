#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "pripel/event_log.hpp"

namespace pripel {

/// Parses an xs:dateTime string ("2019-03-03T23:40:32.123+02:00", "...Z", or
/// without offset, read as UTC). Sub-millisecond digits are truncated.
std::optional<TimestampMs> parse_timestamp(std::string_view text);

/// Formats as "YYYY-MM-DDTHH:MM:SS.mmm+00:00".
std::string format_timestamp(TimestampMs ts);

}  // namespace pripel
