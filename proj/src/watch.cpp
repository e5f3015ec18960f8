#include "prid/watch.hpp"

#include <algorithm>
#include <cstdio>

#include "prid/errors.hpp"

namespace prid {

static std::string hex_digest(const std::vector<std::uint8_t>& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= 0x100000001b3ULL;
    }
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

nlohmann::ordered_json alert_to_json(const MatchAlert& alert) {
    nlohmann::ordered_json j;
    j["watch_id"] = alert.watch_id;
    j["label"] = alert.label;
    j["score"] = alert.score;
    j["device_id"] = alert.device_id;
    j["capture_timestamp"] = alert.capture_timestamp;
    j["message_digest"] = alert.message_digest;
    return j;
}

std::vector<MatchAlert> watch_frame(const WatchFrame& frame,
                                    const std::vector<WatchlistEntry>& watchlist,
                                    double threshold, const ExtractionConfig& ext_config,
                                    const SimilarityConfig& sim_config) {
    if (threshold < 0.0 || threshold > 1.0) {
        throw ConfigError("watch threshold must be in [0,1]");
    }
    const FeatureVector fv = extract_features(frame.image, frame.mask, ext_config);
    FeatureMessage msg;
    msg.device_id = frame.device_id;
    msg.capture_timestamp = frame.capture_timestamp;
    msg.features = fv;
    const std::string digest = hex_digest(encode_feature_message(msg));

    std::vector<MatchAlert> alerts;
    for (const auto& entry : watchlist) {
        const double score = similarity_score(fv, entry.features, sim_config);
        if (score >= threshold) {
            alerts.push_back({entry.watch_id, entry.label, score, frame.device_id,
                              frame.capture_timestamp, digest});
        }
    }
    std::sort(alerts.begin(), alerts.end(), [](const MatchAlert& a, const MatchAlert& b) {
        if (a.score != b.score) {
            return a.score > b.score;
        }
        return a.watch_id < b.watch_id;
    });
    return alerts;
}

void watch(const std::vector<WatchlistEntry>& watchlist, const std::vector<WatchFrame>& frames,
           double threshold, const ExtractionConfig& ext_config,
           const SimilarityConfig& sim_config,
           const std::function<void(const MatchAlert&)>& on_alert,
           const std::function<void(const std::string&)>& on_error) {
    for (const auto& frame : frames) {
        try {
            for (const auto& alert :
                 watch_frame(frame, watchlist, threshold, ext_config, sim_config)) {
                on_alert(alert);
            }
        } catch (const DataError& e) {
            if (on_error) {
                on_error(e.what());
            }
        }
    }
}

}  // namespace prid
