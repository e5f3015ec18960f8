#include "prid/market.hpp"

#include <regex>

#include "prid/errors.hpp"

namespace prid {

IdentityAnnotation parse_market_filename(const std::string& name) {
    static const std::regex pattern(
        R"(^(-1|\d+)_c(\d+)s(\d+)_(\d+)_\d+(?:\.[A-Za-z0-9]+)?$)");
    std::smatch m;
    if (!std::regex_match(name, m, pattern)) {
        throw FilenameParseError(name);
    }
    try {
        IdentityAnnotation ann;
        ann.person_id = static_cast<std::int32_t>(std::stol(m[1].str()));
        ann.camera_id = static_cast<std::uint16_t>(std::stoul(m[2].str()));
        ann.sequence_id = static_cast<std::uint16_t>(std::stoul(m[3].str()));
        ann.frame_index = static_cast<std::uint32_t>(std::stoul(m[4].str()));
        if (ann.camera_id < 1 || ann.sequence_id < 1) {
            throw FilenameParseError(name);
        }
        return ann;
    } catch (const std::logic_error&) {  // stol/stoul overflow
        throw FilenameParseError(name);
    }
}

}  // namespace prid
