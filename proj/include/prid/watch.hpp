#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "prid/features.hpp"
#include "prid/similarity.hpp"
#include "prid/wire.hpp"

namespace prid {

// One target the on-device detector looks for.
struct WatchlistEntry {
    std::string watch_id;  // unique
    std::string label;
    FeatureVector features;
};

struct MatchAlert {
    std::string watch_id;
    std::string label;
    double score = 0.0;
    std::uint32_t device_id = 0;
    std::uint64_t capture_timestamp = 0;
    std::string message_digest;  // hex digest of the frame's encoded features
};

struct WatchFrame {
    PersonImage image;
    LabelMap mask;  // merged schema
    std::uint32_t device_id = 0;
    std::uint64_t capture_timestamp = 0;
};

nlohmann::ordered_json alert_to_json(const MatchAlert& alert);

// Scores one frame against every watchlist entry and returns the
// alerts whose score meets the threshold, best match first. Retains
// nothing; each frame is independent of every other.
std::vector<MatchAlert> watch_frame(const WatchFrame& frame,
                                    const std::vector<WatchlistEntry>& watchlist,
                                    double threshold, const ExtractionConfig& ext_config,
                                    const SimilarityConfig& sim_config);

// Streams frames through watch_frame. Extraction failures are passed
// to on_error and the frame is skipped; the stream continues.
void watch(const std::vector<WatchlistEntry>& watchlist, const std::vector<WatchFrame>& frames,
           double threshold, const ExtractionConfig& ext_config,
           const SimilarityConfig& sim_config,
           const std::function<void(const MatchAlert&)>& on_alert,
           const std::function<void(const std::string&)>& on_error = {});

}  // namespace prid
