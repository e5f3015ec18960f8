#pragma once

#include <cstdint>
#include <string>

namespace prid {

// Identity/capture metadata following the Market1501 filename
// convention. person_id -1 marks a junk/distractor image.
struct IdentityAnnotation {
    std::int32_t person_id = -1;
    std::uint16_t camera_id = 1;
    std::uint16_t sequence_id = 1;
    std::uint32_t frame_index = 0;

    bool operator==(const IdentityAnnotation&) const = default;
};

// Parses `<pid>_c<cam>s<seq>_<frame>_<suffix>.<ext>`, e.g.
// "0002_c1s1_000451_03.jpg". Throws FilenameParseError (carrying the
// raw name) for anything else.
IdentityAnnotation parse_market_filename(const std::string& name);

}  // namespace prid
